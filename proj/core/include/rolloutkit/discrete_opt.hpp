#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rolloutkit/trajectory.hpp"

namespace rolloutkit {

// General finite-selection problem: pick one value per slot, in order;
// cost and feasibility judge the complete selection.  Candidate sets may
// depend on the prefix chosen so far.
struct DiscreteOptSpec {
    int horizon = 0;
    std::function<std::vector<std::int64_t>(
        int slot, const std::vector<std::int64_t>& prefix)>
        candidates;
    std::function<double(const std::vector<std::int64_t>& selection)> cost;
    std::function<bool(const std::vector<std::int64_t>& selection)> feasible;
};

// Adapter to the trajectory layer: the state is the prefix of chosen values,
// so rollout machinery applies unchanged.  Start states from
// discrete_initial_state().
inline ProblemSpec<std::vector<std::int64_t>, std::int64_t> wrap_discrete(
    const DiscreteOptSpec& dspec) {
    ProblemSpec<std::vector<std::int64_t>, std::int64_t> spec;
    spec.horizon = dspec.horizon;
    spec.successor = [](int, const std::vector<std::int64_t>& x,
                        const std::int64_t& u) {
        std::vector<std::int64_t> next = x;
        next.push_back(u);
        return next;
    };
    spec.candidates =
        [candidates = dspec.candidates](
            int k,
            const PartialTrajectory<std::vector<std::int64_t>,
                                    std::int64_t>& y) {
            return candidates(k, y.last_state());
        };
    spec.cost = [cost = dspec.cost](
                    const CompleteTrajectory<std::vector<std::int64_t>,
                                             std::int64_t>& t) {
        return cost(t.body().last_state());
    };
    spec.feasible = [feasible = dspec.feasible](
                        const CompleteTrajectory<std::vector<std::int64_t>,
                                                 std::int64_t>& t) {
        return feasible(t.body().last_state());
    };
    return spec;
}

inline std::vector<std::int64_t> discrete_initial_state() { return {}; }

} // namespace rolloutkit
