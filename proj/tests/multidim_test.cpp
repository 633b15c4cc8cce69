#include <doctest.h>

#include <json.hpp>
#include <rolloutkit/enforced_separation.hpp>
#include <rolloutkit/multidim.hpp>
#include <rolloutkit/oracle.hpp>
#include <rolloutkit/rng.hpp>

#include <cstdint>
#include <vector>

using namespace rolloutkit;

namespace {

MultiAssignInstance random_instance(std::uint64_t seed, int layers, int m,
                                    std::int64_t magnitude) {
    Substream rng(seed, "tensor");
    const std::size_t cells = [&] {
        std::size_t c = 1;
        for (int p = 0; p < layers; ++p) c *= static_cast<std::size_t>(m);
        return c;
    }();
    std::vector<std::int64_t> costs;
    costs.reserve(cells);
    for (std::size_t i = 0; i < cells; ++i)
        costs.push_back(rng.next_int(0, magnitude));
    return MultiAssignInstance::create(layers, m, std::move(costs));
}

// a[j][l][w] = beta[j][l] + gamma[l][w], optionally perturbed within +/- eps.
MultiAssignInstance separable_instance(std::uint64_t seed, int m,
                                       std::int64_t eps) {
    Substream rng(seed, "separable");
    std::vector<std::int64_t> beta, gamma;
    for (int i = 0; i < m * m; ++i) beta.push_back(rng.next_int(0, 50));
    for (int i = 0; i < m * m; ++i) gamma.push_back(rng.next_int(0, 50));
    std::vector<std::int64_t> costs;
    costs.reserve(static_cast<std::size_t>(m) * m * m);
    for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l)
            for (int w = 0; w < m; ++w) {
                std::int64_t a = beta[j * m + l] + gamma[l * m + w];
                if (eps > 0) a += rng.next_int(-eps, eps);
                costs.push_back(a);
            }
    return MultiAssignInstance::create(3, m, std::move(costs));
}

}  // namespace

TEST_CASE("tensor indexing and solution scoring") {
    // 2 layers, m = 2: plain assignment matrix in disguise.
    const auto inst = MultiAssignInstance::create(2, 2, {5, 9, 4, 7});
    CHECK(inst.cost({0, 1}) == 9);
    CHECK(inst.cost({1, 0}) == 4);

    MultiAssignSolution sol;
    sol.maps = {{1, 0}};
    CHECK(is_valid(inst, sol));
    CHECK(solution_tuple(inst, sol, 0) == std::vector<int>{0, 1});
    CHECK(solution_cost(inst, sol) == 9 + 4);

    MultiAssignSolution bad;
    bad.maps = {{0, 0}};
    CHECK_FALSE(is_valid(inst, bad));

    CHECK_THROWS_AS(MultiAssignInstance::create(1, 2, {1, 2}), BadParams);
    CHECK_THROWS_AS(MultiAssignInstance::create(2, 2, {1, 2, 3}), BadParams);
    CHECK_THROWS_AS(inst.cost({0, 5}), BadParams);
}

TEST_CASE("separation heuristic spends one solve per pair") {
    const auto inst = random_instance(9, 3, 3, 40);
    const auto base = enforced_separation_3d(inst);
    CHECK(base.solves == 2);
    CHECK(is_valid(inst, base.solution));
    CHECK(base.cost == solution_cost(inst, base.solution));

    // All jobs fixed: only the worker pair remains.
    SeparationContext ctx;
    ctx.fixed = {{0, 2}, {1, 0}, {2, 1}};
    const auto pinned = enforced_separation_3d(inst, ctx);
    CHECK(pinned.solves == 1);
    CHECK(pinned.solution.maps[0] == std::vector<int>{2, 0, 1});

    const auto nd = enforced_separation_nd(inst);
    CHECK(nd.solves == 2);
    CHECK(nd.cost == base.cost);
    CHECK(nd.solution.maps == base.solution.maps);
}

TEST_CASE("separable cost tensors are solved exactly") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto inst = separable_instance(seed, 3, 0);
        const auto heur = enforced_separation_3d(inst);
        const auto oracle = exact_multidim(inst);
        CHECK(heur.cost == oracle.cost);
    }
}

TEST_CASE("near-separable tensors stay within the perturbation bound") {
    for (std::int64_t eps : {1, 2, 3}) {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const int m = 3;
            const auto inst = separable_instance(seed * 131 + eps, m, eps);
            const auto heur = enforced_separation_3d(inst);
            const auto oracle = exact_multidim(inst);
            CHECK(heur.cost >= oracle.cost);
            CHECK(heur.cost - oracle.cost <= 4 * m * eps);
        }
    }
}

TEST_CASE("rollout dominates the heuristic and respects the oracle") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const int m = 3;
        const auto inst = random_instance(seed, 3, m, 60);
        const auto base = enforced_separation_3d(inst);
        const auto roll = rollout_3d(inst);
        const auto oracle = exact_multidim(inst);

        CHECK(roll.baseline_cost == base.cost);
        CHECK(roll.cost <= roll.baseline_cost);
        CHECK(roll.cost >= oracle.cost);
        CHECK(is_valid(inst, roll.solution));
        CHECK(roll.cost == solution_cost(inst, roll.solution));

        REQUIRE_FALSE(roll.chain.empty());
        CHECK(roll.chain.front() == roll.baseline_cost);
        for (std::size_t i = 1; i < roll.chain.size(); ++i)
            CHECK(roll.chain[i] <= roll.chain[i - 1]);
    }
}

TEST_CASE("rollout solve ledger is deterministic in m") {
    for (int m : {3, 4}) {
        const auto inst = random_instance(77 + m, 3, m, 90);
        const auto roll = rollout_3d(inst);
        CHECK(roll.baseline_solves == 2);
        CHECK(roll.final_pass_solves == 1);
        CHECK(roll.rollout_solves == m * (m + 1));

        int ledger_solves = 0;
        int ledger_trials = 0;
        REQUIRE(static_cast<int>(roll.ledger.size()) == m);
        for (int node = 0; node < m; ++node) {
            const auto& e = roll.ledger[node];
            CHECK(e.pair == 0);
            CHECK(e.node == node);
            CHECK(e.trials == m - node);
            ledger_solves += e.solves;
            ledger_trials += e.trials;
        }
        CHECK(ledger_trials == m * (m + 1) / 2);
        CHECK(ledger_solves + roll.final_pass_solves == roll.rollout_solves);
    }
}

TEST_CASE("warm started sweeps match cold ones") {
    for (std::uint64_t seed : {11ull, 23ull, 42ull, 57ull}) {
        const auto inst = random_instance(seed, 3, 3, 500);
        MultiRolloutOptions cold;
        cold.warm_start = false;
        const auto a = rollout_3d(inst, cold);
        const auto b = rollout_3d(inst);
        CHECK(a.cost == b.cost);
        CHECK(a.rollout_solves == b.rollout_solves);
        CHECK(b.rounds <= a.rounds);
    }
}

TEST_CASE("contexts are validated") {
    const auto inst = random_instance(5, 3, 3, 30);
    SeparationContext dupe_source;
    dupe_source.fixed = {{0, 1}, {0, 2}};
    CHECK_THROWS_AS(enforced_separation_3d(inst, dupe_source),
                    InconsistentContext);

    SeparationContext dupe_target;
    dupe_target.fixed = {{0, 1}, {2, 1}};
    CHECK_THROWS_AS(enforced_separation_3d(inst, dupe_target),
                    InconsistentContext);

    ArcContext off_range;
    off_range.fixed = {{{0, 9}}, {}};
    CHECK_THROWS_AS(enforced_separation_nd(inst, off_range),
                    InconsistentContext);

    ArcContext too_many;
    too_many.fixed = {{}, {}, {}};
    CHECK_THROWS_AS(enforced_separation_nd(inst, too_many),
                    InconsistentContext);
}

TEST_CASE("the prefix tuple budget is enforced") {
    const auto inst = random_instance(8, 4, 3, 30);
    SeparationOptions opts;
    opts.tuple_budget = 1;
    CHECK_THROWS_AS(enforced_separation_nd(inst, {}, opts), BudgetExceeded);
}

TEST_CASE("four-layer rollout stays within the oracle bracket") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto inst = random_instance(seed * 7, 4, 3, 45);
        const auto base = enforced_separation_nd(inst);
        CHECK(base.solves == 3);
        const auto roll = rollout_nd(inst);
        const auto oracle = exact_multidim(inst);
        CHECK(roll.baseline_cost == base.cost);
        CHECK(roll.cost <= roll.baseline_cost);
        CHECK(roll.cost >= oracle.cost);
        CHECK(roll.final_pass_solves == 1);
        CHECK(is_valid(inst, roll.solution));
    }
}

TEST_CASE("a one-element instance degenerates cleanly") {
    const auto inst = MultiAssignInstance::create(3, 1, {4});
    const auto heur = enforced_separation_3d(inst);
    CHECK(heur.cost == 4);
    const auto roll = rollout_3d(inst);
    CHECK(roll.cost == 4);
}

TEST_CASE("instances and solutions round-trip through JSON") {
    const auto inst = random_instance(3, 3, 2, 20);
    const nlohmann::json j = inst;
    const auto inst2 = j.get<MultiAssignInstance>();
    CHECK(inst2.layers() == inst.layers());
    CHECK(inst2.m() == inst.m());
    CHECK(inst2.cost({0, 1, 1}) == inst.cost({0, 1, 1}));

    MultiAssignSolution sol;
    sol.maps = {{1, 0}, {0, 1}};
    const nlohmann::json js = sol;
    const auto sol2 = js.get<MultiAssignSolution>();
    CHECK(sol2.maps == sol.maps);
}
