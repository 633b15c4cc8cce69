#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rolloutkit/multidim.hpp"

namespace rolloutkit {

// Arcs already decided, per adjacent layer pair: fixed[p] lists
// (source, target) arcs between layers p and p+1.  Sources and targets must
// be distinct within each pair; InconsistentContext otherwise.
struct ArcContext {
    std::vector<std::vector<std::pair<int, int>>> fixed;
};

// Convenience context for three-layer instances, where only job-to-machine
// arcs (pair 0) get fixed during a rollout: `fixed` plus an optional trial
// arc for the job under consideration.
struct SeparationContext {
    std::vector<std::pair<int, int>> fixed;
    std::optional<std::pair<int, int>> trial;
};

struct SeparationOptions {
    // warm_prices[p][y] is a scaled auction price for target element y of
    // pair p, typically carried over from a previous nearby solve.  An empty
    // inner vector runs that pair's auction cold (full epsilon scaling);
    // a present one runs a single final-precision pass from those prices.
    std::vector<std::vector<std::int64_t>> warm_prices;
    // Cap on prefix tuples enumerated while building arc costs.
    std::int64_t tuple_budget = 1'000'000;
};

struct SeparationResult {
    MultiAssignSolution solution;
    std::int64_t cost = 0;           // exact, from the cost tensor
    int solves = 0;                  // two-dimensional assignment solves
    std::int64_t rounds = 0;         // auction bids across those solves
    std::int64_t tuples = 0;         // prefix tuples enumerated
    // Final prices per pair, indexed by target element id; reusable as
    // warm_prices for a nearby context.
    std::vector<std::vector<std::int64_t>> prices;
};

// Enforced-separation heuristic: sweeps adjacent layer pairs backward, from
// (layers-2, layers-1) down to (0, 1).  Each pair is collapsed to a
// two-dimensional assignment whose arc cost is the minimum tensor entry over
// prefix tuples consistent with the fixed arcs, with the suffix determined
// by the maps already chosen; the pair is then solved exactly over its
// unfixed sources and targets.  One solve per pair with at least one unfixed
// source (layers-1 solves from an empty context).
SeparationResult enforced_separation_nd(const MultiAssignInstance& instance,
                                        const ArcContext& context = {},
                                        const SeparationOptions& options = {});

// Three-layer specialization (jobs, machines, workers): machine-to-worker
// arc costs use the fixed job's row when the machine is already claimed and
// the minimum over unfixed jobs otherwise, then jobs are matched to the
// remaining machines.  Two solves from an empty context, one when every job
// is fixed.
SeparationResult enforced_separation_3d(
    const MultiAssignInstance& instance, const SeparationContext& context = {},
    const SeparationOptions& options = {});

struct MultiLedgerEntry {
    int pair = 0;
    int node = 0;    // source element being fixed
    int trials = 0;  // candidate targets evaluated
    int solves = 0;  // assignment solves spent on those trials
};

struct MultiRolloutOptions {
    bool warm_start = true;  // reuse prices across trials within a sweep
    std::int64_t tuple_budget = 1'000'000;
};

struct MultiRolloutResult {
    MultiAssignSolution solution;
    std::int64_t cost = 0;
    std::int64_t baseline_cost = 0;  // initial enforced-separation solution
    int baseline_solves = 0;         // spent on that initial solution
    int rollout_solves = 0;          // trial sweeps plus the final exact pass
    int final_pass_solves = 0;       // included in rollout_solves
    std::int64_t rounds = 0;
    std::vector<MultiLedgerEntry> ledger;
    std::vector<std::int64_t> chain;  // incumbent cost after each node
};

// Rollout over the enforced-separation heuristic: fixes arcs node by node
// across pairs 0..layers-3, trying every remaining target for the current
// source and keeping the best heuristic completion if it does not exceed the
// incumbent (following the incumbent's arc otherwise), then solves the last
// pair exactly.  The result never costs more than the plain heuristic.
MultiRolloutResult rollout_nd(const MultiAssignInstance& instance,
                              const MultiRolloutOptions& options = {});

// Three-layer entry point; identical driver, kept separate so callers state
// their shape.
MultiRolloutResult rollout_3d(const MultiAssignInstance& instance,
                              const MultiRolloutOptions& options = {});

} // namespace rolloutkit
