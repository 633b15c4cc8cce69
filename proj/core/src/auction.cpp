#include "rolloutkit/auction.hpp"

#include <algorithm>
#include <set>
#include <string>

#include <json.hpp>

#include "rolloutkit/errors.hpp"

namespace rolloutkit {

namespace {

// Bid in units where benefits carry a multiplier (1 for the public entry
// point, price_scale inside the solver).  `value_floor` is the sentinel for
// single-object persons: clamping the second-best value to a large negative
// number keeps their bid increments at least epsilon while still escalating
// fast enough to expose infeasible masks.
BidResult bid_impl(const Assignment2DInstance& instance,
                   const std::vector<std::int64_t>& prices, int person,
                   std::int64_t epsilon, std::int64_t benefit_scale,
                   std::int64_t value_floor) {
    BidResult out;
    std::int64_t best = 0;
    std::int64_t second = 0;
    int best_object = -1;
    bool have_second = false;
    for (int j : instance.allowed_objects(person)) {
        const std::int64_t value =
            instance.benefit(person, j) * benefit_scale - prices[j];
        if (best_object < 0 || value > best) {
            if (best_object >= 0) {
                second = best;
                have_second = true;
            }
            best = value;
            best_object = j;
        } else if (!have_second || value > second) {
            second = value;
            have_second = true;
        }
    }
    if (!have_second) second = std::min(best, value_floor);
    out.object = best_object;
    out.best_value = best;
    out.second_value = second;
    out.new_price = prices[best_object] + best - second + epsilon;
    return out;
}

std::int64_t sentinel_floor(const Assignment2DInstance& instance,
                            std::int64_t benefit_scale) {
    const std::int64_t chat =
        std::max<std::int64_t>(1, instance.max_abs_benefit() * benefit_scale);
    return -(2 * static_cast<std::int64_t>(instance.num_persons()) * chat +
             1);
}

// One Gauss-Seidel auction pass at a fixed scaled epsilon: lowest-indexed
// unassigned person bids, ties between equal-value objects go to the lowest
// object index.  Prices only rise (every increment is >= epsilon), so a
// price passing the guard bound certifies that no complete assignment
// exists under the mask.
std::int64_t run_pass(const Assignment2DInstance& instance,
                      std::int64_t scale, std::int64_t epsilon,
                      std::vector<std::int64_t>& prices,
                      std::vector<int>& assignment, std::vector<int>& owner) {
    const int n = instance.num_persons();
    const std::int64_t chat =
        std::max<std::int64_t>(1, instance.max_abs_benefit() * scale);
    const std::int64_t start_price_max = std::max<std::int64_t>(
        0, *std::max_element(prices.begin(), prices.end()));
    const std::int64_t guard =
        start_price_max +
        static_cast<std::int64_t>(2 * n + 2) * (2 * chat + epsilon) + 1;
    const std::int64_t floor = sentinel_floor(instance, scale);

    std::set<int> unassigned;
    for (int i = 0; i < n; ++i)
        if (assignment[i] < 0) unassigned.insert(i);

    std::int64_t rounds = 0;
    while (!unassigned.empty()) {
        const int person = *unassigned.begin();
        const BidResult b =
            bid_impl(instance, prices, person, epsilon, scale, floor);
        ++rounds;
        if (b.new_price > guard)
            throw Infeasible("auction prices escalated past the feasibility "
                             "bound; the mask admits no complete assignment");
        const int evicted = owner[b.object];
        if (evicted >= 0) {
            assignment[evicted] = -1;
            unassigned.insert(evicted);
        }
        owner[b.object] = person;
        assignment[person] = b.object;
        unassigned.erase(person);
        prices[b.object] = b.new_price;
    }
    return rounds;
}

std::int64_t primal_value(const Assignment2DInstance& instance,
                          const std::vector<int>& assignment) {
    std::int64_t total = 0;
    for (int i = 0; i < instance.num_persons(); ++i)
        total += instance.benefit(i, assignment[i]);
    return total;
}

std::vector<std::int64_t> checked_prices(
    const Assignment2DInstance& instance,
    std::vector<std::int64_t> initial) {
    if (initial.empty())
        return std::vector<std::int64_t>(instance.num_objects(), 0);
    if (initial.size() != static_cast<std::size_t>(instance.num_objects()))
        throw BadParams("initial price vector size mismatch");
    return initial;
}

AuctionPassStats make_stats(const Assignment2DInstance& instance,
                            std::int64_t scale, std::int64_t epsilon,
                            std::int64_t rounds,
                            const std::vector<std::int64_t>& prices,
                            const std::vector<int>& assignment) {
    AuctionPassStats s;
    s.epsilon = epsilon;
    s.rounds = rounds;
    s.primal = primal_value(instance, assignment);
    s.dual_scaled = dual_value_scaled(instance, prices, scale);
    return s;
}

} // namespace

BidResult bid(const Assignment2DInstance& instance,
              const std::vector<std::int64_t>& prices, int person,
              std::int64_t epsilon) {
    if (person < 0 || person >= instance.num_persons())
        throw BadParams("person index out of range");
    if (prices.size() != static_cast<std::size_t>(instance.num_objects()))
        throw BadParams("price vector size mismatch");
    return bid_impl(instance, prices, person, epsilon, 1,
                    sentinel_floor(instance, 1));
}

AuctionResult auction_solve(const Assignment2DInstance& instance,
                            double epsilon,
                            std::vector<std::int64_t> initial_prices) {
    if (epsilon <= 0) throw BadParams("epsilon must be positive");
    const std::int64_t scale = instance.num_persons() + 1;
    const std::int64_t eps_scaled = std::max<std::int64_t>(
        1,
        static_cast<std::int64_t>(epsilon * static_cast<double>(scale)));

    AuctionResult res;
    res.price_scale = scale;
    res.epsilon = eps_scaled;
    res.prices = checked_prices(instance, std::move(initial_prices));
    res.assignment.assign(instance.num_persons(), -1);
    std::vector<int> owner(instance.num_objects(), -1);
    res.rounds = run_pass(instance, scale, eps_scaled, res.prices,
                          res.assignment, owner);
    res.primal = primal_value(instance, res.assignment);
    res.dual_scaled = dual_value_scaled(instance, res.prices, scale);
    res.passes.push_back(make_stats(instance, scale, eps_scaled, res.rounds,
                                    res.prices, res.assignment));
    return res;
}

AuctionResult auction_scaled(const Assignment2DInstance& instance,
                             std::vector<std::int64_t> warm_prices) {
    const std::int64_t scale = instance.num_persons() + 1;
    const std::int64_t c = instance.max_abs_benefit();
    std::int64_t eps = std::max<std::int64_t>(1, (scale * c + 3) / 4);

    AuctionResult res;
    res.price_scale = scale;
    res.prices = checked_prices(instance, std::move(warm_prices));
    std::vector<int> owner(instance.num_objects(), -1);
    for (;;) {
        res.assignment.assign(instance.num_persons(), -1);
        std::fill(owner.begin(), owner.end(), -1);
        const std::int64_t rounds =
            run_pass(instance, scale, eps, res.prices, res.assignment, owner);
        res.rounds += rounds;
        res.passes.push_back(make_stats(instance, scale, eps, rounds,
                                        res.prices, res.assignment));
        if (eps == 1) break;
        eps = std::max<std::int64_t>(1, (eps + 3) / 4);
    }
    res.epsilon = 1;
    res.primal = primal_value(instance, res.assignment);
    res.dual_scaled = dual_value_scaled(instance, res.prices, scale);
    return res;
}

AuctionResult auction_final_pass(const Assignment2DInstance& instance,
                                 std::vector<std::int64_t> initial_prices) {
    const std::int64_t scale = instance.num_persons() + 1;
    AuctionResult res;
    res.price_scale = scale;
    res.epsilon = 1;
    res.prices = checked_prices(instance, std::move(initial_prices));
    res.assignment.assign(instance.num_persons(), -1);
    std::vector<int> owner(instance.num_objects(), -1);
    res.rounds =
        run_pass(instance, scale, 1, res.prices, res.assignment, owner);
    res.primal = primal_value(instance, res.assignment);
    res.dual_scaled = dual_value_scaled(instance, res.prices, scale);
    res.passes.push_back(make_stats(instance, scale, 1, res.rounds,
                                    res.prices, res.assignment));
    return res;
}

AuctionResult asymmetric_solve(const Assignment2DInstance& instance,
                               std::vector<std::int64_t> initial_prices) {
    // Optimality over injections relies on objects that finish unassigned
    // keeping their initial price, which must therefore be zero.
    for (std::int64_t p : initial_prices)
        if (p != 0)
            throw PriceInitError(
                "asymmetric auction requires all-zero initial prices");
    const std::int64_t scale = instance.num_persons() + 1;

    AuctionResult res;
    res.price_scale = scale;
    res.epsilon = 1;
    res.prices = checked_prices(instance, std::move(initial_prices));
    res.assignment.assign(instance.num_persons(), -1);
    std::vector<int> owner(instance.num_objects(), -1);
    res.rounds =
        run_pass(instance, scale, 1, res.prices, res.assignment, owner);
    res.primal = primal_value(instance, res.assignment);
    res.dual_scaled = dual_value_scaled(instance, res.prices, scale);
    res.passes.push_back(make_stats(instance, scale, 1, res.rounds,
                                    res.prices, res.assignment));
    return res;
}

EpsCsReport verify_eps_cs(const Assignment2DInstance& instance,
                          const AuctionResult& result) {
    EpsCsReport report;
    auto flag = [&](int person, int object, std::int64_t slack,
                    std::string detail) {
        report.satisfied = false;
        report.violations.push_back(
            {person, object, slack, std::move(detail)});
    };
    if (result.assignment.size() !=
        static_cast<std::size_t>(instance.num_persons())) {
        flag(-1, -1, 0, "assignment length mismatch");
        return report;
    }
    if (result.prices.size() !=
        static_cast<std::size_t>(instance.num_objects())) {
        flag(-1, -1, 0, "price vector length mismatch");
        return report;
    }
    std::vector<int> owner(instance.num_objects(), -1);
    for (int i = 0; i < instance.num_persons(); ++i) {
        const int j = result.assignment[i];
        if (j < 0 || j >= instance.num_objects()) {
            flag(i, j, 0, "person unassigned or object out of range");
            continue;
        }
        if (!instance.allowed(i, j)) {
            flag(i, j, 0, "assigned pair not allowed by mask");
            continue;
        }
        if (owner[j] >= 0) {
            flag(i, j, 0, "object assigned twice");
            continue;
        }
        owner[j] = i;
        const std::int64_t value =
            instance.benefit(i, j) * result.price_scale - result.prices[j];
        std::int64_t best = value;
        for (int k : instance.allowed_objects(i))
            best = std::max(best, instance.benefit(i, k) * result.price_scale -
                                      result.prices[k]);
        if (value < best - result.epsilon)
            flag(i, j, best - result.epsilon - value,
                 "assigned value more than epsilon below the best value");
    }
    return report;
}

std::int64_t dual_value_scaled(const Assignment2DInstance& instance,
                               const std::vector<std::int64_t>& prices,
                               std::int64_t scale) {
    if (prices.size() != static_cast<std::size_t>(instance.num_objects()))
        throw BadParams("price vector size mismatch");
    std::int64_t total = 0;
    for (std::int64_t p : prices) total += p;
    for (int i = 0; i < instance.num_persons(); ++i) {
        bool first = true;
        std::int64_t best = 0;
        for (int j : instance.allowed_objects(i)) {
            const std::int64_t value =
                instance.benefit(i, j) * scale - prices[j];
            if (first || value > best) best = value;
            first = false;
        }
        total += best;
    }
    return total;
}

double dual_value(const Assignment2DInstance& instance,
                  const std::vector<std::int64_t>& prices,
                  std::int64_t scale) {
    return static_cast<double>(dual_value_scaled(instance, prices, scale)) /
           static_cast<double>(scale);
}

void to_json(nlohmann::json& j, const AuctionResult& result) {
    nlohmann::json passes = nlohmann::json::array();
    for (const auto& p : result.passes)
        passes.push_back({{"epsilon", p.epsilon},
                          {"rounds", p.rounds},
                          {"primal", p.primal},
                          {"dual_scaled", p.dual_scaled}});
    j = nlohmann::json{{"assignment", result.assignment},
                       {"prices", result.prices},
                       {"price_scale", result.price_scale},
                       {"epsilon", result.epsilon},
                       {"rounds", result.rounds},
                       {"primal", result.primal},
                       {"dual_scaled", result.dual_scaled},
                       {"passes", std::move(passes)}};
}

void from_json(const nlohmann::json& j, AuctionResult& result) {
    result.assignment = j.at("assignment").get<std::vector<int>>();
    result.prices = j.at("prices").get<std::vector<std::int64_t>>();
    result.price_scale = j.at("price_scale").get<std::int64_t>();
    result.epsilon = j.at("epsilon").get<std::int64_t>();
    result.rounds = j.at("rounds").get<std::int64_t>();
    result.primal = j.at("primal").get<std::int64_t>();
    result.dual_scaled = j.at("dual_scaled").get<std::int64_t>();
    result.passes.clear();
    for (const auto& p : j.at("passes")) {
        AuctionPassStats s;
        s.epsilon = p.at("epsilon").get<std::int64_t>();
        s.rounds = p.at("rounds").get<std::int64_t>();
        s.primal = p.at("primal").get<std::int64_t>();
        s.dual_scaled = p.at("dual_scaled").get<std::int64_t>();
        result.passes.push_back(s);
    }
}

} // namespace rolloutkit
