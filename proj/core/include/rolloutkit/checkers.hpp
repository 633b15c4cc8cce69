#pragma once

#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "rolloutkit/rng.hpp"
#include "rolloutkit/rollout.hpp"
#include "rolloutkit/trajectory.hpp"

namespace rolloutkit {

enum class ProbeStatus { ok, violation, heuristic_failure, skipped };

struct ProbeFinding {
    int probe = 0;
    int stage = 0;
    ProbeStatus status = ProbeStatus::ok;
    std::string detail;
};

struct CheckReport {
    int probes = 0;
    int violations = 0;
    int heuristic_failures = 0;
    int skipped = 0;
    std::vector<ProbeFinding> findings;  // everything that is not ok

    bool clean() const { return violations == 0; }
};

// Seeded reachable prefixes.  Half the probes replay the heuristic's own
// completion to a random depth, the other half take a uniformly random
// candidate walk; the heuristic alone visits a single path, so random walks
// are needed for coverage.
template <typename S, typename C>
std::vector<PartialTrajectory<S, C>> make_probes(
    const ProblemSpec<S, C>& spec, const BaseHeuristic<S, C>& h, const S& x0,
    int count, std::uint64_t seed) {
    Substream rng(seed, "probes");
    std::vector<PartialTrajectory<S, C>> probes;
    probes.reserve(count);
    for (int i = 0; i < count; ++i) {
        const int depth =
            static_cast<int>(rng.next_below(static_cast<std::uint64_t>(
                spec.horizon)));
        const bool replay = (i % 2 == 0);
        PartialTrajectory<S, C> y = PartialTrajectory<S, C>::initial(x0);
        while (y.length() < depth) {
            std::vector<C> cands = spec.candidates(y.length(), y);
            if (cands.empty()) break;
            std::size_t at = 0;
            if (replay) {
                auto tail = h.complete(y);
                if (tail && tail->length() > 0) {
                    auto it = std::find(cands.begin(), cands.end(),
                                        tail->controls.front());
                    if (it != cands.end())
                        at = static_cast<std::size_t>(it - cands.begin());
                }
            } else {
                at = rng.next_below(cands.size());
            }
            y = extend(spec, y, cands[at]);
        }
        probes.push_back(std::move(y));
    }
    return probes;
}

// Checks that resuming the heuristic one step into its own completion
// reproduces the remaining tail exactly.
template <typename S, typename C>
CheckReport check_sequential_consistency(
    const ProblemSpec<S, C>& spec, const BaseHeuristic<S, C>& h,
    const std::vector<PartialTrajectory<S, C>>& probes) {
    CheckReport report;
    for (std::size_t p = 0; p < probes.size(); ++p) {
        const PartialTrajectory<S, C>& y = probes[p];
        ++report.probes;
        const int k = y.length();
        if (k >= spec.horizon) {
            ++report.skipped;
            report.findings.push_back(
                {static_cast<int>(p), k, ProbeStatus::skipped,
                 "probe is already complete"});
            continue;
        }
        auto tail = h.complete(y);
        if (!tail || tail->length() == 0) {
            ++report.heuristic_failures;
            report.findings.push_back(
                {static_cast<int>(p), k, ProbeStatus::heuristic_failure,
                 "no completion from probe"});
            continue;
        }
        // Step one control into the completion.
        std::vector<S> states = y.states();
        std::vector<C> controls = y.controls();
        controls.push_back(tail->controls.front());
        states.push_back(tail->states.at(1));
        PartialTrajectory<S, C> resumed = PartialTrajectory<S, C>::from_parts(
            std::move(states), std::move(controls));
        auto retail = h.complete(resumed);
        TrajectorySegment<S, C> expected;
        expected.states.assign(tail->states.begin() + 1, tail->states.end());
        expected.controls.assign(tail->controls.begin() + 1,
                                 tail->controls.end());
        if (!retail || !(*retail == expected)) {
            ++report.violations;
            std::ostringstream msg;
            msg << "resumed completion at stage " << (k + 1)
                << (retail ? " diverges from the original tail"
                           : " does not exist");
            report.findings.push_back({static_cast<int>(p), k,
                                       ProbeStatus::violation, msg.str()});
        }
    }
    return report;
}

// Checks the cost-improvement property: whenever the probe's own completion
// is feasible, some one-step lookahead completion must be feasible and at
// least as cheap.
template <typename S, typename C>
CheckReport check_sequential_improvement(
    const ProblemSpec<S, C>& spec, const BaseHeuristic<S, C>& h,
    const std::vector<PartialTrajectory<S, C>>& probes) {
    CheckReport report;
    for (std::size_t p = 0; p < probes.size(); ++p) {
        const PartialTrajectory<S, C>& y = probes[p];
        ++report.probes;
        const int k = y.length();
        if (k >= spec.horizon) {
            ++report.skipped;
            report.findings.push_back(
                {static_cast<int>(p), k, ProbeStatus::skipped,
                 "probe is already complete"});
            continue;
        }
        auto tail = h.complete(y);
        if (!tail) {
            ++report.heuristic_failures;
            report.findings.push_back(
                {static_cast<int>(p), k, ProbeStatus::heuristic_failure,
                 "no completion from probe"});
            continue;
        }
        CompleteTrajectory<S, C> through = join(spec, y, *tail);
        if (!spec.feasible(through)) {
            ++report.skipped;
            report.findings.push_back(
                {static_cast<int>(p), k, ProbeStatus::skipped,
                 "own completion infeasible; property premise void"});
            continue;
        }
        const double own = spec.cost(through);
        double best = std::numeric_limits<double>::infinity();
        bool any = false;
        for (const C& u : spec.candidates(k, y)) {
            PartialTrajectory<S, C> next = extend(spec, y, u);
            auto t2 = h.complete(next);
            if (!t2) continue;
            CompleteTrajectory<S, C> full = join(spec, next, *t2);
            if (!spec.feasible(full)) continue;
            any = true;
            best = std::min(best, spec.cost(full));
        }
        if (!any || best > own) {
            ++report.violations;
            std::ostringstream msg;
            if (!any)
                msg << "no candidate admits a feasible completion at stage "
                    << k;
            else
                msg << "best lookahead cost " << best
                    << " exceeds own completion cost " << own;
            report.findings.push_back({static_cast<int>(p), k,
                                       ProbeStatus::violation, msg.str()});
        }
    }
    return report;
}

} // namespace rolloutkit
