#include "rolloutkit/facility.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "rolloutkit/assignment2d.hpp"
#include "rolloutkit/auction.hpp"
#include "rolloutkit/discrete_opt.hpp"
#include "rolloutkit/rollout.hpp"

namespace rolloutkit {

FacilityInstance FacilityInstance::create(
    std::vector<std::int64_t> demands, std::vector<std::int64_t> capacities,
    std::vector<std::int64_t> placement_costs,
    std::vector<std::int64_t> service_costs) {
    if (demands.empty() || capacities.empty())
        throw BadParams("need at least one client and one location");
    if (placement_costs.size() != capacities.size())
        throw BadParams("one placement cost per location required");
    if (service_costs.size() != demands.size() * capacities.size())
        throw BadParams("service cost matrix size mismatch");
    for (std::int64_t d : demands)
        if (d < 0) throw BadParams("demands must be nonnegative");
    for (std::int64_t c : capacities)
        if (c < 0) throw BadParams("capacities must be nonnegative");
    FacilityInstance inst;
    inst.demands_ = std::move(demands);
    inst.capacities_ = std::move(capacities);
    inst.placement_costs_ = std::move(placement_costs);
    inst.service_costs_ = std::move(service_costs);
    inst.total_demand_ = std::accumulate(inst.demands_.begin(),
                                         inst.demands_.end(), std::int64_t{0});
    return inst;
}

TransportResult solve_transportation(const FacilityInstance& instance,
                                     const std::vector<std::int64_t>& open) {
    const int m = instance.num_clients();
    const int n = instance.num_locations();
    if (open.size() != static_cast<std::size_t>(n))
        throw BadParams("open flag vector size mismatch");

    std::int64_t open_capacity = 0;
    for (int l = 0; l < n; ++l)
        if (open[l] != 0) open_capacity += instance.capacities()[l];
    const std::int64_t demand = instance.total_demand();
    if (open_capacity < demand)
        throw InfeasiblePlacement(
            "open capacity does not cover total demand");
    if (demand > 512)
        throw SizeGuard("demand unit expansion exceeds 512");
    if (open_capacity > 4096)
        throw SizeGuard("open capacity unit expansion exceeds 4096");

    TransportResult res;
    res.flows.assign(static_cast<std::size_t>(m) * n, 0);
    if (demand == 0) return res;

    std::vector<int> unit_client;
    for (int i = 0; i < m; ++i)
        for (std::int64_t u = 0; u < instance.demands()[i]; ++u)
            unit_client.push_back(i);
    std::vector<int> unit_location;
    for (int l = 0; l < n; ++l)
        if (open[l] != 0)
            for (std::int64_t u = 0; u < instance.capacities()[l]; ++u)
                unit_location.push_back(l);

    const int persons = static_cast<int>(unit_client.size());
    const int objects = static_cast<int>(unit_location.size());
    std::vector<std::int64_t> benefits(
        static_cast<std::size_t>(persons) * objects);
    for (int p = 0; p < persons; ++p)
        for (int o = 0; o < objects; ++o)
            benefits[static_cast<std::size_t>(p) * objects + o] =
                -instance.service_cost(unit_client[p], unit_location[o]);

    const auto unit_instance =
        Assignment2DInstance::dense(persons, objects, std::move(benefits));
    const AuctionResult solved = asymmetric_solve(unit_instance);
    res.rounds = solved.rounds;
    for (int p = 0; p < persons; ++p) {
        const int l = unit_location[solved.assignment[p]];
        ++res.flows[static_cast<std::size_t>(unit_client[p]) * n + l];
        res.cost += instance.service_cost(unit_client[p], l);
    }
    return res;
}

const TransportResult& TransportCache::solve(
    const std::vector<std::int64_t>& open) {
    if (enabled_) {
        auto it = memo_.find(open);
        if (it != memo_.end()) return it->second;
        ++solver_calls_;
        return memo_.emplace(open, solve_transportation(instance_, open))
            .first->second;
    }
    ++solver_calls_;
    last_ = solve_transportation(instance_, open);
    return last_;
}

FacilityOutcome facility_rollout(const FacilityInstance& instance,
                                 const FacilityOptions& options) {
    const int n = instance.num_locations();
    TransportCache cache(instance, options.cache);

    DiscreteOptSpec dspec;
    dspec.horizon = n;
    dspec.candidates = [](int, const std::vector<std::int64_t>&) {
        return std::vector<std::int64_t>{1, 0};
    };
    dspec.feasible = [&instance](const std::vector<std::int64_t>& open) {
        std::int64_t open_capacity = 0;
        for (int l = 0; l < instance.num_locations(); ++l)
            if (open[l] != 0) open_capacity += instance.capacities()[l];
        return open_capacity >= instance.total_demand();
    };
    dspec.cost = [&instance, &cache](const std::vector<std::int64_t>& open) {
        std::int64_t total = cache.solve(open).cost;
        for (int l = 0; l < instance.num_locations(); ++l)
            if (open[l] != 0) total += instance.placement_costs()[l];
        return static_cast<double>(total);
    };
    const auto spec = wrap_discrete(dspec);

    // Opens every undecided location; never consults the transport solver.
    BaseHeuristic<std::vector<std::int64_t>, std::int64_t> open_rest;
    open_rest.complete =
        [n](const PartialTrajectory<std::vector<std::int64_t>, std::int64_t>&
                y) {
            TrajectorySegment<std::vector<std::int64_t>, std::int64_t> seg;
            seg.states.push_back(y.last_state());
            std::vector<std::int64_t> cur = y.last_state();
            while (static_cast<int>(cur.size()) < n) {
                cur.push_back(1);
                seg.controls.push_back(1);
                seg.states.push_back(cur);
            }
            return std::optional<decltype(seg)>(std::move(seg));
        };

    // The up-front incumbent (everything open) is solved before any stage
    // runs; its transport solve is reported separately from the stage count.
    const auto outcome =
        fortified_rollout(spec, open_rest, discrete_initial_state());
    // Baseline placement was necessarily solved first.
    const int total_calls = cache.solver_calls();

    FacilityOutcome out;
    out.placements = outcome.final_trajectory.body().last_state();
    out.cost = static_cast<std::int64_t>(outcome.final_cost);
    out.baseline_cost = static_cast<std::int64_t>(outcome.baseline_cost);
    out.baseline_solves = 1;
    out.transport_solves = total_calls - out.baseline_solves;
    for (const auto& t : outcome.trace)
        out.skipped_infeasible += t.candidates_tried - t.feasible_count;
    out.chain = outcome.chain;
    out.flows = cache.solve(out.placements).flows;
    return out;
}

void to_json(nlohmann::json& j, const FacilityInstance& instance) {
    j = nlohmann::json{{"demands", instance.demands()},
                       {"capacities", instance.capacities()},
                       {"placement_costs", instance.placement_costs()},
                       {"service_costs", instance.service_costs()}};
}

void from_json(const nlohmann::json& j, FacilityInstance& instance) {
    instance = FacilityInstance::create(
        j.at("demands").get<std::vector<std::int64_t>>(),
        j.at("capacities").get<std::vector<std::int64_t>>(),
        j.at("placement_costs").get<std::vector<std::int64_t>>(),
        j.at("service_costs").get<std::vector<std::int64_t>>());
}

void to_json(nlohmann::json& j, const FacilityOutcome& outcome) {
    j = nlohmann::json{{"placements", outcome.placements},
                       {"flows", outcome.flows},
                       {"cost", outcome.cost},
                       {"baseline_cost", outcome.baseline_cost},
                       {"baseline_solves", outcome.baseline_solves},
                       {"transport_solves", outcome.transport_solves},
                       {"skipped_infeasible", outcome.skipped_infeasible},
                       {"chain", outcome.chain}};
}

} // namespace rolloutkit
