#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "rolloutkit/errors.hpp"

namespace rolloutkit {

template <typename S, typename C>
class PartialTrajectory;
template <typename S, typename C>
class CompleteTrajectory;
template <typename S, typename C>
struct ProblemSpec;

template <typename S, typename C>
PartialTrajectory<S, C> extend(const ProblemSpec<S, C>& spec,
                               const PartialTrajectory<S, C>& y, const C& u);

// Deterministic finite-horizon problem over opaque state and control values.
// Costs attach to complete trajectories only; `feasible` is the trajectory
// constraint set.  All callables must be pure: the toolkit may re-evaluate
// them in any order.
template <typename S, typename C>
struct ProblemSpec {
    int horizon = 0;

    // x_{k+1} = successor(k, x_k, u_k)
    std::function<S(int, const S&, const C&)> successor;

    // Ordered candidate controls at stage k given the partial trajectory so
    // far.  Order is meaningful: ties are always broken first-in-order.
    std::function<std::vector<C>(int, const PartialTrajectory<S, C>&)>
        candidates;

    std::function<double(const CompleteTrajectory<S, C>&)> cost;
    std::function<bool(const CompleteTrajectory<S, C>&)> feasible;
};

// Immutable prefix (x_0, u_0, x_1, ..., x_k).  Extension copies the spine;
// values are cheap at the instance sizes this toolkit targets.
template <typename S, typename C>
class PartialTrajectory {
public:
    static PartialTrajectory initial(S x0) {
        PartialTrajectory y;
        y.states_.push_back(std::move(x0));
        return y;
    }

    // Trusts that states obey the successor equation; used by callers that
    // already validated (join, checkers, IO).
    static PartialTrajectory from_parts(std::vector<S> states,
                                        std::vector<C> controls) {
        if (states.size() != controls.size() + 1)
            throw TrajectoryLengthError(
                "trajectory needs exactly one more state than controls");
        PartialTrajectory y;
        y.states_ = std::move(states);
        y.controls_ = std::move(controls);
        return y;
    }

    int length() const { return static_cast<int>(controls_.size()); }
    const S& state(int t) const { return states_.at(t); }
    const C& control(int t) const { return controls_.at(t); }
    const S& last_state() const { return states_.back(); }
    const std::vector<S>& states() const { return states_; }
    const std::vector<C>& controls() const { return controls_; }

    bool operator==(const PartialTrajectory& other) const {
        return states_ == other.states_ && controls_ == other.controls_;
    }

    bool is_prefix_of(const PartialTrajectory& other) const {
        if (length() > other.length()) return false;
        return std::equal(controls_.begin(), controls_.end(),
                          other.controls_.begin()) &&
               std::equal(states_.begin(), states_.end(),
                          other.states_.begin());
    }

private:
    PartialTrajectory() = default;

    friend PartialTrajectory<S, C> extend<S, C>(const ProblemSpec<S, C>&,
                                                const PartialTrajectory<S, C>&,
                                                const C&);

    std::vector<S> states_;
    std::vector<C> controls_;
};

// Tail segment (x_k, u_k, x_{k+1}, ..., x_N) produced by a completion
// heuristic.  May be empty (a single state) when completing at the horizon.
template <typename S, typename C>
struct TrajectorySegment {
    std::vector<S> states;    // length() + 1 entries
    std::vector<C> controls;  // may be empty

    int length() const { return static_cast<int>(controls.size()); }
    const S& front_state() const { return states.front(); }

    bool operator==(const TrajectorySegment& other) const {
        return states == other.states && controls == other.controls;
    }
};

// A trajectory whose length equals the problem horizon.
template <typename S, typename C>
class CompleteTrajectory {
public:
    explicit CompleteTrajectory(PartialTrajectory<S, C> body)
        : body_(std::move(body)) {}

    const PartialTrajectory<S, C>& body() const { return body_; }
    int length() const { return body_.length(); }
    const S& state(int t) const { return body_.state(t); }
    const C& control(int t) const { return body_.control(t); }

    bool operator==(const CompleteTrajectory& other) const {
        return body_ == other.body_;
    }

private:
    PartialTrajectory<S, C> body_;
};

// Appends one control.  The control must be among spec.candidates at the
// current stage and the new state comes from spec.successor.
template <typename S, typename C>
PartialTrajectory<S, C> extend(const ProblemSpec<S, C>& spec,
                               const PartialTrajectory<S, C>& y, const C& u) {
    const int k = y.length();
    if (k >= spec.horizon)
        throw StageOverflow("cannot extend past the horizon");
    const std::vector<C> cands = spec.candidates(k, y);
    if (std::find(cands.begin(), cands.end(), u) == cands.end())
        throw InvalidControl("control is not a stage candidate");
    PartialTrajectory<S, C> out = y;
    out.states_.push_back(spec.successor(k, y.last_state(), u));
    out.controls_.push_back(u);
    return out;
}

// Concatenates a prefix with a completion tail into a complete trajectory.
template <typename S, typename C>
CompleteTrajectory<S, C> join(const ProblemSpec<S, C>& spec,
                              const PartialTrajectory<S, C>& y,
                              const TrajectorySegment<S, C>& tail) {
    if (tail.states.empty())
        throw TrajectoryLengthError("segment must carry its starting state");
    if (!(tail.front_state() == y.last_state()))
        throw TrajectoryMismatch("segment does not start at the prefix end");
    if (y.length() + tail.length() != spec.horizon)
        throw TrajectoryLengthError(
            "prefix plus segment must span the whole horizon");
    std::vector<S> states(y.states().begin(), y.states().end());
    states.insert(states.end(), tail.states.begin() + 1, tail.states.end());
    std::vector<C> controls(y.controls().begin(), y.controls().end());
    controls.insert(controls.end(), tail.controls.begin(),
                    tail.controls.end());
    return CompleteTrajectory<S, C>(PartialTrajectory<S, C>::from_parts(
        std::move(states), std::move(controls)));
}

// Completion map R(y): may fail (nullopt) when the heuristic cannot finish
// from y.  When it succeeds the segment must start at y's last state, reach
// the horizon and obey the successor equations.  From a complete trajectory
// it must return the empty segment.
template <typename S, typename C>
struct BaseHeuristic {
    std::function<std::optional<TrajectorySegment<S, C>>(
        const PartialTrajectory<S, C>&)>
        complete;
};

// Convenience: heuristics defined by a stage policy u = mu(k, y).  Policies
// are pure functions of the visited prefix, so resuming one inside its own
// completion reproduces the tail step for step.
template <typename S, typename C>
BaseHeuristic<S, C> policy_heuristic(
    const ProblemSpec<S, C>& spec,
    std::function<std::optional<C>(int, const PartialTrajectory<S, C>&)> mu) {
    BaseHeuristic<S, C> h;
    h.complete = [spec, mu](const PartialTrajectory<S, C>& y)
        -> std::optional<TrajectorySegment<S, C>> {
        TrajectorySegment<S, C> seg;
        seg.states.push_back(y.last_state());
        PartialTrajectory<S, C> cur = y;
        while (cur.length() < spec.horizon) {
            std::optional<C> u = mu(cur.length(), cur);
            if (!u) return std::nullopt;
            cur = extend(spec, cur, *u);
            seg.controls.push_back(*u);
            seg.states.push_back(cur.last_state());
        }
        return seg;
    };
    return h;
}

} // namespace rolloutkit
