#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "rolloutkit/multiagent.hpp"
#include "rolloutkit/trajectory.hpp"

namespace rolloutkit {

// Seeded deterministic DP instances for tests, acceptance checks and the
// CLI generator.  Dynamics, stage costs and candidate counts are pure hash
// functions of (seed, stage, state, control), so instances are reproducible
// from their parameters alone.  Costs are integer-valued doubles; exact
// comparisons are safe.
struct ToyDpParams {
    std::uint64_t seed = 1;
    int horizon = 6;
    int max_candidates = 3;
    std::int64_t state_space = 64;
    std::int64_t cost_range = 100;
    // Probability (per mille) that an arbitrary control sequence passes the
    // feasibility test.  The bundled heuristics' own playouts from x0 are
    // always feasible, so every run has a feasible starting completion.
    int density_permille = 400;
};

struct ToyDp {
    ToyDpParams params;
    ProblemSpec<std::int64_t, std::int64_t> spec;
    std::int64_t x0 = 0;
    // Stage policy u = mu(k, x): resuming it inside its own completion
    // reproduces the tail, so rollout over it improves monotonically.
    BaseHeuristic<std::int64_t, std::int64_t> policy;
    // Depends on the parity of the control sum so far; resuming it mid-tail
    // can diverge, which lets plain rollout dead-end while fortified cannot.
    BaseHeuristic<std::int64_t, std::int64_t> flip_flop;
};

ToyDp make_toy_dp(const ToyDpParams& params);

struct ToyAgentParams {
    std::uint64_t seed = 1;
    int horizon = 3;
    int agents = 2;
    int max_components = 2;
    std::int64_t state_space = 64;
    std::int64_t cost_range = 100;
    int density_permille = 500;
};

struct ToyAgentDp {
    ToyAgentParams params;
    AgentProblemSpec<std::int64_t, std::int64_t> aspec;
    std::int64_t x0 = 0;
    // Component policy over the agent-by-agent split of the problem; can
    // complete from any mid-stage point.
    BaseHeuristic<SplitState<std::int64_t, std::int64_t>, std::int64_t>
        split_policy;
};

ToyAgentDp make_toy_agent_dp(const ToyAgentParams& params);

void to_json(nlohmann::json& j, const ToyDpParams& params);
void from_json(const nlohmann::json& j, ToyDpParams& params);
void to_json(nlohmann::json& j, const ToyAgentParams& params);
void from_json(const nlohmann::json& j, ToyAgentParams& params);

} // namespace rolloutkit
