#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <json.hpp>

#include "rolloutkit/errors.hpp"

namespace rolloutkit {

// Facility location with integer demands and capacities: decide which
// locations to open, pay their placement costs, then ship every client's
// demand from open locations at per-unit service cost.
class FacilityInstance {
public:
    FacilityInstance() = default;

    static FacilityInstance create(std::vector<std::int64_t> demands,
                                   std::vector<std::int64_t> capacities,
                                   std::vector<std::int64_t> placement_costs,
                                   std::vector<std::int64_t> service_costs);

    int num_clients() const { return static_cast<int>(demands_.size()); }
    int num_locations() const {
        return static_cast<int>(capacities_.size());
    }
    const std::vector<std::int64_t>& demands() const { return demands_; }
    const std::vector<std::int64_t>& capacities() const {
        return capacities_;
    }
    const std::vector<std::int64_t>& placement_costs() const {
        return placement_costs_;
    }
    const std::vector<std::int64_t>& service_costs() const {
        return service_costs_;
    }
    std::int64_t service_cost(int client, int location) const {
        return service_costs_[static_cast<std::size_t>(client) *
                                  capacities_.size() +
                              location];
    }
    std::int64_t total_demand() const { return total_demand_; }

private:
    std::vector<std::int64_t> demands_;
    std::vector<std::int64_t> capacities_;
    std::vector<std::int64_t> placement_costs_;
    std::vector<std::int64_t> service_costs_;
    std::int64_t total_demand_ = 0;
};

struct TransportResult {
    std::vector<std::int64_t> flows;  // clients x locations, row-major
    std::int64_t cost = 0;            // service cost only
    std::int64_t rounds = 0;          // auction bids spent
};

// Exact minimum-cost shipment given the open locations (any nonzero entry
// of `open` counts as open).  Demands are split into unit persons and open
// capacity into unit objects, solved as an assignment by auction.  Throws
// InfeasiblePlacement when open capacity cannot cover demand and SizeGuard
// when the unit expansion would be too large (over 512 demand units or 4096
// open capacity units).
TransportResult solve_transportation(const FacilityInstance& instance,
                                     const std::vector<std::int64_t>& open);

// Memoizes transportation solves by placement vector and counts the solver
// invocations that actually ran.  With caching disabled every lookup runs
// the solver (and is counted).
class TransportCache {
public:
    TransportCache(const FacilityInstance& instance, bool enabled)
        : instance_(instance), enabled_(enabled) {}

    const TransportResult& solve(const std::vector<std::int64_t>& open);
    int solver_calls() const { return solver_calls_; }

private:
    const FacilityInstance& instance_;
    bool enabled_;
    int solver_calls_ = 0;
    std::map<std::vector<std::int64_t>, TransportResult> memo_;
    TransportResult last_;  // storage when caching is off
};

struct FacilityOptions {
    bool cache = true;
};

struct FacilityOutcome {
    std::vector<std::int64_t> placements;  // 0/1 per location
    std::vector<std::int64_t> flows;       // clients x locations
    std::int64_t cost = 0;                 // placement plus service
    std::int64_t baseline_cost = 0;        // everything open
    int baseline_solves = 0;               // transport solves spent on it
    int transport_solves = 0;              // solves during rollout stages
    int skipped_infeasible = 0;            // trial placements never solved
    std::vector<double> chain;             // incumbent cost per stage
};

// Fortified rollout on placements, one location per stage, candidates
// ordered open-first.  The base heuristic opens every remaining location,
// so the up-front incumbent is the all-open placement and the final cost
// never exceeds it.
FacilityOutcome facility_rollout(const FacilityInstance& instance,
                                 const FacilityOptions& options = {});

void to_json(nlohmann::json& j, const FacilityInstance& instance);
void from_json(const nlohmann::json& j, FacilityInstance& instance);
void to_json(nlohmann::json& j, const FacilityOutcome& outcome);

} // namespace rolloutkit
