#include "rolloutkit/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace rolloutkit {

namespace {

struct NodeCounter {
    std::int64_t nodes = 0;
    std::int64_t limit;

    explicit NodeCounter(const OracleBudget& b) : limit(b.max_nodes) {}
    void tick() {
        if (++nodes > limit)
            throw BudgetExceeded("exhaustive search budget exhausted");
    }
};

} // namespace

Assignment2DOracle exact_assignment_2d(const Assignment2DInstance& instance,
                                       OracleBudget budget) {
    const int n = instance.num_persons();
    NodeCounter counter(budget);
    std::vector<char> used(instance.num_objects(), 0);
    std::vector<int> current(n, -1);
    Assignment2DOracle best;
    bool found = false;
    std::int64_t running = 0;

    std::function<void(int)> place = [&](int person) {
        counter.tick();
        if (person == n) {
            if (!found || running > best.value) {
                best.value = running;
                best.assignment = current;
                found = true;
            }
            return;
        }
        for (int j : instance.allowed_objects(person)) {
            if (used[j]) continue;
            used[j] = 1;
            current[person] = j;
            running += instance.benefit(person, j);
            place(person + 1);
            running -= instance.benefit(person, j);
            current[person] = -1;
            used[j] = 0;
        }
    };
    place(0);
    if (!found)
        throw Infeasible("mask admits no complete assignment");
    return best;
}

MultidimOracle exact_multidim(const MultiAssignInstance& instance,
                              OracleBudget budget) {
    const int pairs = instance.layers() - 1;
    const int m = instance.m();
    NodeCounter counter(budget);

    MultiAssignSolution current;
    current.maps.assign(pairs, {});
    MultidimOracle best;
    bool found = false;

    std::vector<int> identity(m);
    std::iota(identity.begin(), identity.end(), 0);

    std::function<void(int)> sweep = [&](int pair) {
        if (pair == pairs) {
            counter.tick();
            const std::int64_t cost = solution_cost(instance, current);
            if (!found || cost < best.cost) {
                best.cost = cost;
                best.solution = current;
                found = true;
            }
            return;
        }
        std::vector<int> perm = identity;
        do {
            current.maps[pair] = perm;
            sweep(pair + 1);
        } while (std::next_permutation(perm.begin(), perm.end()));
    };
    sweep(0);
    return best;
}

TransportResult exact_transport(const FacilityInstance& instance,
                                const std::vector<std::int64_t>& open,
                                OracleBudget budget) {
    const int m = instance.num_clients();
    const int n = instance.num_locations();
    if (open.size() != static_cast<std::size_t>(n))
        throw BadParams("open flag vector size mismatch");
    NodeCounter counter(budget);

    std::vector<std::int64_t> remaining(n, 0);
    std::int64_t open_capacity = 0;
    for (int l = 0; l < n; ++l) {
        if (open[l] != 0) remaining[l] = instance.capacities()[l];
        open_capacity += remaining[l];
    }
    if (open_capacity < instance.total_demand())
        throw InfeasiblePlacement(
            "open capacity does not cover total demand");

    TransportResult best;
    bool found = false;
    std::vector<std::int64_t> flows(static_cast<std::size_t>(m) * n, 0);
    std::int64_t running = 0;

    // Distribute client i's demand over locations l..n-1, then recurse.
    std::function<void(int, int, std::int64_t)> distribute =
        [&](int client, int location, std::int64_t left) {
            counter.tick();
            if (client == m) {
                if (!found || running < best.cost) {
                    best.cost = running;
                    best.flows = flows;
                    found = true;
                }
                return;
            }
            if (left == 0) {
                distribute(client + 1, 0,
                           client + 1 < m ? instance.demands()[client + 1]
                                          : 0);
                return;
            }
            if (location == n) return;
            const std::int64_t cap =
                std::min(left, remaining[location]);
            for (std::int64_t amount = 0; amount <= cap; ++amount) {
                flows[static_cast<std::size_t>(client) * n + location] =
                    amount;
                remaining[location] -= amount;
                running += amount * instance.service_cost(client, location);
                distribute(client, location + 1, left - amount);
                running -= amount * instance.service_cost(client, location);
                remaining[location] += amount;
                flows[static_cast<std::size_t>(client) * n + location] = 0;
            }
        };
    distribute(0, 0, m > 0 ? instance.demands()[0] : 0);
    if (!found)
        throw InfeasiblePlacement("no integral shipment covers every demand");
    return best;
}

FacilityOracle exact_facility(const FacilityInstance& instance,
                              OracleBudget budget) {
    const int n = instance.num_locations();
    if (n > 20) throw BadParams("placement enumeration limited to 20 sites");
    FacilityOracle best;
    bool found = false;
    for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
        std::vector<std::int64_t> open(n, 0);
        std::int64_t open_capacity = 0;
        std::int64_t placement_cost = 0;
        for (int l = 0; l < n; ++l) {
            if (bits & (1u << l)) {
                open[l] = 1;
                open_capacity += instance.capacities()[l];
                placement_cost += instance.placement_costs()[l];
            }
        }
        if (open_capacity < instance.total_demand()) continue;
        const TransportResult shipped =
            exact_transport(instance, open, budget);
        const std::int64_t total = placement_cost + shipped.cost;
        if (!found || total < best.cost) {
            best.cost = total;
            best.placements = open;
            found = true;
        }
    }
    if (!found)
        throw InfeasiblePlacement(
            "even opening every location cannot cover demand");
    return best;
}

std::optional<std::vector<std::int64_t>> find_equilibrium_prices(
    const Assignment2DInstance& instance, std::int64_t max_price,
    OracleBudget budget) {
    const Assignment2DOracle opt = exact_assignment_2d(instance, budget);
    const int n_obj = instance.num_objects();
    NodeCounter counter(budget);

    std::vector<std::int64_t> prices(n_obj, 0);
    std::function<bool(int)> search = [&](int object) -> bool {
        if (object == n_obj) {
            counter.tick();
            for (int i = 0; i < instance.num_persons(); ++i) {
                const std::int64_t own =
                    instance.benefit(i, opt.assignment[i]) -
                    prices[opt.assignment[i]];
                for (int j : instance.allowed_objects(i))
                    if (instance.benefit(i, j) - prices[j] > own) return false;
            }
            return true;
        }
        for (std::int64_t p = 0; p <= max_price; ++p) {
            prices[object] = p;
            if (search(object + 1)) return true;
        }
        prices[object] = 0;
        return false;
    };
    if (search(0)) return prices;
    return std::nullopt;
}

} // namespace rolloutkit
