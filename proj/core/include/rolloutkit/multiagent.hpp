#pragma once

#include <cstdint>
#include <vector>

#include "rolloutkit/errors.hpp"
#include "rolloutkit/rollout.hpp"
#include "rolloutkit/trajectory.hpp"

namespace rolloutkit {

// Problem whose stage control is a tuple of per-agent components.  Component
// candidate sets may depend on the components already chosen within the
// stage, and are ordered (ties break first-in-order as everywhere else).
template <typename S, typename A>
struct AgentProblemSpec {
    int horizon = 0;
    int agent_count = 0;

    std::function<S(int, const S&, const std::vector<A>&)> successor;

    // component_candidates(k, agent, x_k, components chosen so far at stage k)
    std::function<std::vector<A>(int, int, const S&, const std::vector<A>&)>
        component_candidates;

    std::function<double(const CompleteTrajectory<S, std::vector<A>>&)> cost;
    std::function<bool(const CompleteTrajectory<S, std::vector<A>>&)> feasible;
};

// State of the agent-by-agent reformulation: the stage's base state plus the
// components committed so far within the stage.
template <typename S, typename A>
struct SplitState {
    S base{};
    std::vector<A> partial;

    bool operator==(const SplitState& other) const {
        return base == other.base && partial == other.partial;
    }
};

namespace detail {

template <typename S, typename A>
void require_decomposed(const AgentProblemSpec<S, A>& aspec) {
    if (aspec.agent_count < 1 || !aspec.component_candidates)
        throw NotDecomposed("problem declares no agent decomposition");
}

// Rebuilds the whole-control trajectory from an agent-slot trajectory.
template <typename S, typename A>
CompleteTrajectory<S, std::vector<A>> merge_slots(
    int horizon, int agents,
    const PartialTrajectory<SplitState<S, A>, A>& split) {
    std::vector<S> states;
    std::vector<std::vector<A>> controls;
    states.reserve(horizon + 1);
    controls.reserve(horizon);
    for (int k = 0; k < horizon; ++k) {
        states.push_back(split.state(k * agents).base);
        std::vector<A> whole;
        whole.reserve(agents);
        for (int l = 0; l < agents; ++l)
            whole.push_back(split.control(k * agents + l));
        controls.push_back(std::move(whole));
    }
    states.push_back(split.state(horizon * agents).base);
    return CompleteTrajectory<S, std::vector<A>>(
        PartialTrajectory<S, std::vector<A>>::from_parts(std::move(states),
                                                         std::move(controls)));
}

} // namespace detail

// All-at-once form: stage candidates are the cartesian product of the
// component sets, enumerated with the last agent varying fastest.
template <typename S, typename A>
ProblemSpec<S, std::vector<A>> to_problem(const AgentProblemSpec<S, A>& aspec) {
    detail::require_decomposed(aspec);
    ProblemSpec<S, std::vector<A>> spec;
    spec.horizon = aspec.horizon;
    spec.successor = aspec.successor;
    spec.cost = aspec.cost;
    spec.feasible = aspec.feasible;
    const int agents = aspec.agent_count;
    spec.candidates =
        [aspec, agents](int k, const PartialTrajectory<S, std::vector<A>>& y) {
            std::vector<std::vector<A>> out;
            std::vector<A> chosen;
            const S& x = y.last_state();
            std::function<void(int)> grow = [&](int agent) {
                if (agent == agents) {
                    out.push_back(chosen);
                    return;
                }
                for (const A& a :
                     aspec.component_candidates(k, agent, x, chosen)) {
                    chosen.push_back(a);
                    grow(agent + 1);
                    chosen.pop_back();
                }
            };
            grow(0);
            return out;
        };
    return spec;
}

// Agent-by-agent form: one decision slot per (stage, agent) pair.  The state
// carries the stage's base state and the components committed so far, so the
// per-slot candidate count is additive rather than multiplicative in the
// number of agents.
template <typename S, typename A>
ProblemSpec<SplitState<S, A>, A> split_agents(
    const AgentProblemSpec<S, A>& aspec) {
    detail::require_decomposed(aspec);
    const int agents = aspec.agent_count;
    const int horizon = aspec.horizon;
    ProblemSpec<SplitState<S, A>, A> spec;
    spec.horizon = horizon * agents;
    spec.successor = [aspec, agents](int slot, const SplitState<S, A>& st,
                                     const A& a) -> SplitState<S, A> {
        const int k = slot / agents;
        std::vector<A> partial = st.partial;
        partial.push_back(a);
        if (static_cast<int>(partial.size()) < agents)
            return SplitState<S, A>{st.base, std::move(partial)};
        return SplitState<S, A>{aspec.successor(k, st.base, partial), {}};
    };
    spec.candidates = [aspec, agents](
                          int slot,
                          const PartialTrajectory<SplitState<S, A>, A>& y) {
        const int k = slot / agents;
        const int agent = slot % agents;
        const SplitState<S, A>& st = y.last_state();
        return aspec.component_candidates(k, agent, st.base, st.partial);
    };
    spec.cost = [aspec, agents, horizon](
                    const CompleteTrajectory<SplitState<S, A>, A>& t) {
        return aspec.cost(detail::merge_slots<S, A>(horizon, agents, t.body()));
    };
    spec.feasible = [aspec, agents, horizon](
                        const CompleteTrajectory<SplitState<S, A>, A>& t) {
        return aspec.feasible(
            detail::merge_slots<S, A>(horizon, agents, t.body()));
    };
    return spec;
}

template <typename S, typename A>
struct MultiagentOutcome {
    CompleteTrajectory<S, std::vector<A>> final_trajectory;
    double final_cost = 0.0;
    double baseline_cost = 0.0;
    std::vector<double> chain;          // one entry per agent slot
    std::vector<StageTrace<A>> trace;   // stage and agent filled per slot
    std::int64_t heuristic_calls = 0;   // includes the registration probe
};

enum class RolloutVariant { plain, fortified };

// Runs rollout on the agent-by-agent reformulation.  The heuristic must be
// able to complete from mid-stage states; that capability is probed once at
// registration and IncompleteHeuristic is raised when it is missing.
template <typename S, typename A>
MultiagentOutcome<S, A> multiagent_rollout(
    const AgentProblemSpec<S, A>& aspec,
    const BaseHeuristic<SplitState<S, A>, A>& h, const S& x0,
    RolloutVariant variant = RolloutVariant::fortified) {
    detail::require_decomposed(aspec);
    ProblemSpec<SplitState<S, A>, A> split = split_agents(aspec);
    const int agents = aspec.agent_count;
    const SplitState<S, A> s0{x0, {}};

    std::int64_t probe_calls = 0;
    if (agents >= 2) {
        PartialTrajectory<SplitState<S, A>, A> y0 =
            PartialTrajectory<SplitState<S, A>, A>::initial(s0);
        std::vector<A> cands = split.candidates(0, y0);
        if (!cands.empty()) {
            PartialTrajectory<SplitState<S, A>, A> mid =
                extend(split, y0, cands.front());
            ++probe_calls;
            if (!h.complete(mid))
                throw IncompleteHeuristic(
                    "heuristic cannot complete from a mid-stage state");
        }
    }

    RolloutOutcome<SplitState<S, A>, A> run = [&] {
        try {
            return variant == RolloutVariant::plain
                       ? rollout(split, h, s0)
                       : fortified_rollout(split, h, s0);
        } catch (const DeadEnd& e) {
            if (e.stage() % agents != 0 && e.candidates() > 0 &&
                e.completion_failures() == e.candidates())
                throw IncompleteHeuristic(
                    "heuristic cannot complete from a mid-stage state");
            throw;
        }
    }();

    MultiagentOutcome<S, A> out{detail::merge_slots<S, A>(
        aspec.horizon, agents, run.final_trajectory.body())};
    out.final_cost = run.final_cost;
    out.baseline_cost = run.baseline_cost;
    out.chain = std::move(run.chain);
    out.trace = std::move(run.trace);
    for (StageTrace<A>& t : out.trace) {
        const int slot = t.stage;
        t.stage = slot / agents;
        t.agent = slot % agents;
    }
    out.heuristic_calls = run.heuristic_calls + probe_calls;
    return out;
}

} // namespace rolloutkit
