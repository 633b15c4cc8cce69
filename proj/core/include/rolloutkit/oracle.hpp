#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "rolloutkit/assignment2d.hpp"
#include "rolloutkit/errors.hpp"
#include "rolloutkit/facility.hpp"
#include "rolloutkit/multidim.hpp"
#include "rolloutkit/trajectory.hpp"

// Reference solvers used to validate the fast paths.  They enumerate
// exhaustively and share only data types with the solver modules; none of
// the auction, rollout or separation code is ever called from here.

namespace rolloutkit {

struct OracleBudget {
    std::int64_t max_nodes = 1'000'000;
};

template <typename S, typename C>
struct DpOracleResult {
    CompleteTrajectory<S, C> best;
    double cost = 0.0;
    std::int64_t nodes = 0;             // partial trajectories visited
    std::int64_t feasible_leaves = 0;   // feasible complete trajectories
};

namespace detail {

template <typename S, typename C>
struct DpSearch {
    const ProblemSpec<S, C>& spec;
    const OracleBudget budget;
    std::int64_t nodes = 0;
    std::int64_t feasible_leaves = 0;
    std::optional<CompleteTrajectory<S, C>> best;
    double best_cost = std::numeric_limits<double>::infinity();

    void visit(const PartialTrajectory<S, C>& y) {
        if (++nodes > budget.max_nodes)
            throw BudgetExceeded("exhaustive search budget exhausted");
        if (y.length() == spec.horizon) {
            CompleteTrajectory<S, C> full(y);
            if (!spec.feasible(full)) return;
            ++feasible_leaves;
            const double cost = spec.cost(full);
            if (cost < best_cost) {
                best_cost = cost;
                best = std::move(full);
            }
            return;
        }
        for (const C& u : spec.candidates(y.length(), y))
            visit(extend(spec, y, u));
    }
};

} // namespace detail

// Depth-first enumeration of every trajectory, candidates in declared
// order; the first feasible minimizer encountered wins ties.
template <typename S, typename C>
DpOracleResult<S, C> exact_dp(const ProblemSpec<S, C>& spec, const S& x0,
                              OracleBudget budget = {}) {
    detail::DpSearch<S, C> search{spec, budget};
    search.visit(PartialTrajectory<S, C>::initial(x0));
    if (!search.best)
        throw NoFeasibleTrajectory("no feasible complete trajectory exists");
    return DpOracleResult<S, C>{std::move(*search.best), search.best_cost,
                                search.nodes, search.feasible_leaves};
}

struct Assignment2DOracle {
    std::vector<int> assignment;  // person -> object
    std::int64_t value = 0;       // total benefit, maximized
};

// Enumerates every injective mask-respecting assignment.
Assignment2DOracle exact_assignment_2d(const Assignment2DInstance& instance,
                                       OracleBudget budget = {});

struct MultidimOracle {
    MultiAssignSolution solution;
    std::int64_t cost = 0;
};

// Enumerates every chain of per-pair permutations.
MultidimOracle exact_multidim(const MultiAssignInstance& instance,
                              OracleBudget budget = {});

// Minimum-cost integral shipment by direct enumeration of per-client flow
// compositions over the open locations.
TransportResult exact_transport(const FacilityInstance& instance,
                                const std::vector<std::int64_t>& open,
                                OracleBudget budget = {});

struct FacilityOracle {
    std::vector<std::int64_t> placements;
    std::int64_t cost = 0;
};

// Enumerates every placement subset, costing feasible ones exactly.
FacilityOracle exact_facility(const FacilityInstance& instance,
                              OracleBudget budget = {});

// Searches integer prices in [0, max_price] per object under which some
// optimal assignment satisfies zero-slack complementary slackness; returns
// the lexicographically first such vector.
std::optional<std::vector<std::int64_t>> find_equilibrium_prices(
    const Assignment2DInstance& instance, std::int64_t max_price,
    OracleBudget budget = {});

} // namespace rolloutkit
