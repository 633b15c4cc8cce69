#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "rolloutkit/errors.hpp"
#include "rolloutkit/trajectory.hpp"

namespace rolloutkit {

template <typename C>
struct StageTrace {
    int stage = 0;
    int agent = -1;  // filled by the multiagent driver
    int candidates_tried = 0;
    int feasible_count = 0;
    int completion_failures = 0;
    int heuristic_calls = 0;
    bool followed_incumbent = false;
    C chosen{};
    double chain_cost = 0.0;
};

template <typename S, typename C>
struct RolloutOutcome {
    CompleteTrajectory<S, C> final_trajectory;
    double final_cost = 0.0;
    double baseline_cost = 0.0;      // cost of the up-front completion R(y0)
    std::vector<double> chain;       // incumbent cost after each decision
    std::vector<StageTrace<C>> trace;
    std::int64_t heuristic_calls = 0;
};

namespace detail {

template <typename S, typename C>
struct Evaluated {
    C control;
    PartialTrajectory<S, C> prefix;  // y extended by control
    CompleteTrajectory<S, C> full;   // prefix joined with its completion
    double cost;
};

// Evaluates every stage candidate: extend, complete with the heuristic, join
// and keep the feasible ones.  Every candidate costs exactly one heuristic
// call whether or not it survives.
template <typename S, typename C>
std::vector<Evaluated<S, C>> evaluate_stage(const ProblemSpec<S, C>& spec,
                                            const BaseHeuristic<S, C>& h,
                                            const PartialTrajectory<S, C>& y,
                                            StageTrace<C>& t) {
    const int k = y.length();
    const std::vector<C> cands = spec.candidates(k, y);
    t.stage = k;
    t.candidates_tried = static_cast<int>(cands.size());
    std::vector<Evaluated<S, C>> kept;
    for (const C& u : cands) {
        PartialTrajectory<S, C> next = extend(spec, y, u);
        ++t.heuristic_calls;
        std::optional<TrajectorySegment<S, C>> tail = h.complete(next);
        if (!tail) {
            ++t.completion_failures;
            continue;
        }
        CompleteTrajectory<S, C> full = join(spec, next, *tail);
        if (!spec.feasible(full)) continue;
        ++t.feasible_count;
        const double cost = spec.cost(full);
        kept.push_back(
            Evaluated<S, C>{u, std::move(next), std::move(full), cost});
    }
    return kept;
}

template <typename S, typename C>
CompleteTrajectory<S, C> initial_incumbent(const ProblemSpec<S, C>& spec,
                                           const BaseHeuristic<S, C>& h,
                                           const S& x0,
                                           std::int64_t& calls) {
    PartialTrajectory<S, C> y0 = PartialTrajectory<S, C>::initial(x0);
    ++calls;
    std::optional<TrajectorySegment<S, C>> tail = h.complete(y0);
    if (!tail)
        throw InfeasibleStart("heuristic produced no completion from x0");
    CompleteTrajectory<S, C> full = join(spec, y0, *tail);
    if (!spec.feasible(full))
        throw InfeasibleStart("heuristic completion from x0 is infeasible");
    return full;
}

} // namespace detail

// One-step-lookahead rollout.  At each stage every candidate control is
// scored by the cost of its heuristic completion; the cheapest feasible one
// is committed.  Raises DeadEnd(k) when no candidate yields a feasible
// complete trajectory.
template <typename S, typename C>
RolloutOutcome<S, C> rollout(const ProblemSpec<S, C>& spec,
                             const BaseHeuristic<S, C>& h, const S& x0) {
    std::int64_t calls = 0;
    CompleteTrajectory<S, C> incumbent =
        detail::initial_incumbent(spec, h, x0, calls);
    const double baseline = spec.cost(incumbent);
    double incumbent_cost = baseline;

    RolloutOutcome<S, C> out{incumbent};
    out.baseline_cost = baseline;
    PartialTrajectory<S, C> y = PartialTrajectory<S, C>::initial(x0);
    for (int k = 0; k < spec.horizon; ++k) {
        StageTrace<C> t;
        std::vector<detail::Evaluated<S, C>> kept =
            detail::evaluate_stage(spec, h, y, t);
        calls += t.heuristic_calls;
        if (kept.empty()) {
            std::ostringstream msg;
            msg << "no candidate at stage " << k
                << " admits a feasible completion (" << t.completion_failures
                << " completion failures, " << t.candidates_tried
                << " candidates)";
            throw DeadEnd(k, msg.str(), t.completion_failures,
                          t.candidates_tried);
        }
        std::size_t best = 0;
        for (std::size_t i = 1; i < kept.size(); ++i)
            if (kept[i].cost < kept[best].cost) best = i;
        y = kept[best].prefix;
        incumbent = kept[best].full;
        incumbent_cost = kept[best].cost;
        t.chosen = kept[best].control;
        t.chain_cost = kept[best].cost;
        out.chain.push_back(kept[best].cost);
        out.trace.push_back(std::move(t));
    }
    out.final_trajectory = incumbent;
    out.final_cost = incumbent_cost;
    out.heuristic_calls = calls;
    return out;
}

// Fortified rollout.  Keeps the best complete trajectory seen so far (the
// incumbent); a stage either improves on it with the cheapest admissible
// candidate or follows the incumbent's own next control.  Never dead-ends
// and its final cost never exceeds the up-front completion's cost.
template <typename S, typename C>
RolloutOutcome<S, C> fortified_rollout(const ProblemSpec<S, C>& spec,
                                       const BaseHeuristic<S, C>& h,
                                       const S& x0) {
    std::int64_t calls = 0;
    CompleteTrajectory<S, C> incumbent =
        detail::initial_incumbent(spec, h, x0, calls);
    double incumbent_cost = spec.cost(incumbent);

    RolloutOutcome<S, C> out{incumbent};
    out.baseline_cost = incumbent_cost;
    PartialTrajectory<S, C> y = PartialTrajectory<S, C>::initial(x0);
    for (int k = 0; k < spec.horizon; ++k) {
        StageTrace<C> t;
        std::vector<detail::Evaluated<S, C>> kept =
            detail::evaluate_stage(spec, h, y, t);
        calls += t.heuristic_calls;
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            if (kept[i].cost > incumbent_cost) continue;
            if (!best || kept[i].cost < kept[*best].cost) best = i;
        }
        if (best) {
            y = kept[*best].prefix;
            incumbent = kept[*best].full;
            incumbent_cost = kept[*best].cost;
            t.chosen = kept[*best].control;
        } else {
            // All candidates (if any) are worse than the incumbent: replay
            // the incumbent's own control for this stage.
            const C& u = incumbent.control(k);
            y = extend(spec, y, u);
            t.chosen = u;
            t.followed_incumbent = true;
        }
        t.chain_cost = incumbent_cost;
        out.chain.push_back(incumbent_cost);
        out.trace.push_back(std::move(t));
    }
    out.final_trajectory = incumbent;
    out.final_cost = incumbent_cost;
    out.heuristic_calls = calls;
    return out;
}

// Tree-based rollout.  Grows a tree of partial trajectories; each expansion
// scores all children of the selected leaf and may improve the incumbent.
// Selection: cheapest known complete-trajectory cost through the leaf, ties
// broken deeper-first, then insertion order.  With budget == horizon this
// reproduces fortified_rollout's outcome exactly.
template <typename S, typename C>
RolloutOutcome<S, C> tree_rollout(const ProblemSpec<S, C>& spec,
                                  const BaseHeuristic<S, C>& h, const S& x0,
                                  std::int64_t budget) {
    if (budget < 0) throw BadParams("expansion budget must be nonnegative");
    constexpr double kInf = std::numeric_limits<double>::infinity();

    std::int64_t calls = 0;
    CompleteTrajectory<S, C> incumbent =
        detail::initial_incumbent(spec, h, x0, calls);
    double incumbent_cost = spec.cost(incumbent);

    struct Node {
        PartialTrajectory<S, C> y;
        double own_cost;  // cost of the completion found when it was created
        int depth;
        bool expanded = false;
    };
    std::vector<Node> nodes;
    nodes.push_back(Node{PartialTrajectory<S, C>::initial(x0), incumbent_cost,
                         0, false});

    RolloutOutcome<S, C> out{incumbent};
    out.baseline_cost = incumbent_cost;

    for (std::int64_t e = 0; e < budget; ++e) {
        // Select among unexpanded, expandable nodes.
        std::optional<std::size_t> pick;
        double pick_score = kInf;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const Node& n = nodes[i];
            if (n.expanded || n.depth >= spec.horizon) continue;
            double score = n.own_cost;
            if (n.y.is_prefix_of(incumbent.body()))
                score = std::min(score, incumbent_cost);
            const bool better =
                !pick || score < pick_score ||
                (score == pick_score && n.depth > nodes[*pick].depth);
            if (better) {
                pick = i;
                pick_score = score;
            }
        }
        if (!pick) break;

        const std::size_t idx = *pick;
        const bool on_incumbent_path =
            nodes[idx].y.is_prefix_of(incumbent.body());
        const PartialTrajectory<S, C> base = nodes[idx].y;
        const int depth = nodes[idx].depth;
        nodes[idx].expanded = true;

        StageTrace<C> t;
        std::vector<detail::Evaluated<S, C>> kept =
            detail::evaluate_stage(spec, h, base, t);
        calls += t.heuristic_calls;

        // Incumbent update mirrors the fortified rule: along the incumbent's
        // own path a child matching its cost replaces it; elsewhere only a
        // strict improvement does.
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < kept.size(); ++i)
            if (!best || kept[i].cost < kept[*best].cost) best = i;
        if (best && (kept[*best].cost < incumbent_cost ||
                     (on_incumbent_path && kept[*best].cost == incumbent_cost))) {
            incumbent = kept[*best].full;
            incumbent_cost = kept[*best].cost;
            t.chosen = kept[*best].control;
        }

        const std::vector<C> cands = spec.candidates(depth, base);
        std::size_t next_kept = 0;
        for (const C& u : cands) {
            if (next_kept < kept.size() && kept[next_kept].control == u) {
                nodes.push_back(Node{std::move(kept[next_kept].prefix),
                                     kept[next_kept].cost, depth + 1, false});
                ++next_kept;
            } else {
                nodes.push_back(Node{extend(spec, base, u), kInf, depth + 1,
                                     false});
            }
        }
        t.chain_cost = incumbent_cost;
        out.chain.push_back(incumbent_cost);
        out.trace.push_back(std::move(t));
    }

    out.final_trajectory = incumbent;
    out.final_cost = incumbent_cost;
    out.heuristic_calls = calls;
    return out;
}

} // namespace rolloutkit
