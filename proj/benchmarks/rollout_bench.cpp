#include <benchmark/benchmark.h>

#include <rolloutkit/enforced_separation.hpp>
#include <rolloutkit/facility.hpp>
#include <rolloutkit/rng.hpp>
#include <rolloutkit/rollout.hpp>
#include <rolloutkit/toy_dp.hpp>

#include <cstdint>
#include <vector>

namespace {

using namespace rolloutkit;

MultiAssignInstance random_3d(int m, std::uint64_t seed) {
    Substream rng(seed, "bench3d");
    std::vector<std::int64_t> costs;
    costs.reserve(static_cast<std::size_t>(m) * m * m);
    for (int i = 0; i < m * m * m; ++i) costs.push_back(rng.next_int(0, 99));
    return MultiAssignInstance::create(3, m, costs);
}

FacilityInstance random_facility(int clients, int locations,
                                 std::uint64_t seed) {
    Substream rng(seed, "benchfac");
    std::vector<std::int64_t> demands, capacities, placement, service;
    std::int64_t total = 0;
    for (int i = 0; i < clients; ++i) {
        demands.push_back(rng.next_int(1, 3));
        total += demands.back();
    }
    // Every location alone covers demand, so all placements are feasible.
    capacities.assign(locations, total);
    for (int j = 0; j < locations; ++j) placement.push_back(rng.next_int(1, 40));
    for (int i = 0; i < clients * locations; ++i)
        service.push_back(rng.next_int(0, 9));
    return FacilityInstance::create(demands, capacities, placement, service);
}

}  // namespace

static void BM_fortified_rollout(benchmark::State& state) {
    ToyDpParams params;
    params.seed = 9;
    params.horizon = static_cast<int>(state.range(0));
    const ToyDp toy = make_toy_dp(params);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            fortified_rollout(toy.spec, toy.policy, toy.x0));
}
BENCHMARK(BM_fortified_rollout)->Arg(6)->Arg(10)->Arg(14);

static void BM_tree_rollout(benchmark::State& state) {
    ToyDpParams params;
    params.seed = 9;
    params.horizon = 8;
    const ToyDp toy = make_toy_dp(params);
    const auto budget = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            tree_rollout(toy.spec, toy.policy, toy.x0, budget));
}
BENCHMARK(BM_tree_rollout)->Arg(8)->Arg(64)->Arg(512);

static void BM_rollout_3d(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    const auto inst = random_3d(m, 31);
    for (auto _ : state) benchmark::DoNotOptimize(rollout_3d(inst));
}
BENCHMARK(BM_rollout_3d)->Arg(4)->Arg(6)->Arg(8);

static void BM_facility_rollout(benchmark::State& state) {
    const auto inst = random_facility(3, static_cast<int>(state.range(0)), 13);
    for (auto _ : state) benchmark::DoNotOptimize(facility_rollout(inst));
}
BENCHMARK(BM_facility_rollout)->Arg(3)->Arg(5);
