#include <doctest.h>

#include <rolloutkit/checkers.hpp>
#include <rolloutkit/toy_dp.hpp>

using namespace rolloutkit;

TEST_CASE("policy heuristics pass both probe checks") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        ToyDpParams params;
        params.seed = seed;
        const auto toy = make_toy_dp(params);
        const auto probes =
            make_probes(toy.spec, toy.policy, toy.x0, 24, seed);

        const auto cons =
            check_sequential_consistency(toy.spec, toy.policy, probes);
        CHECK(cons.violations == 0);
        CHECK(cons.heuristic_failures == 0);
        CHECK(cons.clean());
        CHECK(cons.findings.empty());

        const auto impr =
            check_sequential_improvement(toy.spec, toy.policy, probes);
        CHECK(impr.violations == 0);
        CHECK(impr.heuristic_failures == 0);
    }
}

TEST_CASE("probe count and determinism") {
    ToyDpParams params;
    params.seed = 7;
    const auto toy = make_toy_dp(params);
    const auto a = make_probes(toy.spec, toy.policy, toy.x0, 10, 99);
    const auto b = make_probes(toy.spec, toy.policy, toy.x0, 10, 99);
    REQUIRE(a.size() == 10);
    REQUIRE(b.size() == 10);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
    const auto rep = check_sequential_consistency(toy.spec, toy.policy, a);
    CHECK(rep.probes == 10);
}

TEST_CASE("the parity heuristic is caught by the consistency probe") {
    // The flip-flop completion depends on the parity of past controls, so
    // resuming it after one of its own steps can diverge.  At least one seed
    // in a small sweep must expose this.
    int exposed = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        ToyDpParams params;
        params.seed = seed;
        const auto toy = make_toy_dp(params);
        const auto probes =
            make_probes(toy.spec, toy.flip_flop, toy.x0, 32, seed);
        const auto rep =
            check_sequential_consistency(toy.spec, toy.flip_flop, probes);
        if (rep.violations > 0) ++exposed;
    }
    CHECK(exposed > 0);
}

TEST_CASE("failures to complete and failures to resume are kept apart") {
    ToyDpParams params;
    params.seed = 3;
    const auto toy = make_toy_dp(params);

    // Fails on every prefix that has at least one control: probes at depth
    // zero complete but cannot be resumed (a violation), deeper probes have
    // no completion at all (a heuristic failure).
    BaseHeuristic<std::int64_t, std::int64_t> brittle;
    brittle.complete = [inner = toy.policy](
                           const PartialTrajectory<std::int64_t, std::int64_t>& y)
        -> std::optional<TrajectorySegment<std::int64_t, std::int64_t>> {
        if (y.length() > 0) return std::nullopt;
        return inner.complete(y);
    };

    const auto probes = make_probes(toy.spec, toy.policy, toy.x0, 16, 5);
    const auto rep = check_sequential_consistency(toy.spec, brittle, probes);
    CHECK(rep.heuristic_failures > 0);
    CHECK(rep.violations > 0);
    CHECK(rep.heuristic_failures + rep.violations == rep.probes);

    int reported_failures = 0;
    for (const auto& f : rep.findings)
        if (f.status == ProbeStatus::heuristic_failure) ++reported_failures;
    CHECK(reported_failures == rep.heuristic_failures);
}
