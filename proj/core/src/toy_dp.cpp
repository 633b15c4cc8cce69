#include "rolloutkit/toy_dp.hpp"

#include <json.hpp>

#include "rolloutkit/errors.hpp"
#include "rolloutkit/rng.hpp"

namespace rolloutkit {

namespace {

void validate_common(std::int64_t horizon, std::int64_t state_space,
                     std::int64_t cost_range, int density_permille) {
    if (horizon < 1 || state_space < 1 || cost_range < 1)
        throw BadParams("toy problem needs positive horizon, state space "
                        "and cost range");
    if (density_permille < 0 || density_permille > 1000)
        throw BadParams("density must be in [0, 1000] per mille");
}

std::uint64_t controls_hash(std::uint64_t seed,
                            const std::vector<std::int64_t>& controls) {
    std::uint64_t h = keyed_hash(seed, "feas", controls.size());
    for (std::int64_t u : controls)
        h = hash_combine(h, static_cast<std::uint64_t>(u));
    return h;
}

} // namespace

ToyDp make_toy_dp(const ToyDpParams& params) {
    validate_common(params.horizon, params.state_space, params.cost_range,
                    params.density_permille);
    if (params.max_candidates < 1)
        throw BadParams("toy problem needs at least one candidate per stage");

    const std::uint64_t seed = params.seed;
    const std::int64_t space = params.state_space;
    const std::int64_t range = params.cost_range;
    const int max_cands = params.max_candidates;
    const int horizon = params.horizon;

    ToyDp toy;
    toy.params = params;
    toy.x0 =
        static_cast<std::int64_t>(keyed_hash(seed, "x0", 0) %
                                  static_cast<std::uint64_t>(space));

    auto cand_count = [seed, max_cands](int k, std::int64_t x) {
        return 1 + static_cast<int>(
                       keyed_hash(seed, "ncand", k, x) %
                       static_cast<std::uint64_t>(max_cands));
    };
    auto stage_cost = [seed, range](int k, std::int64_t x, std::int64_t u) {
        return static_cast<double>(keyed_hash(seed, "g", k, x, u) %
                                   static_cast<std::uint64_t>(range));
    };
    auto terminal_cost = [seed, range](std::int64_t x) {
        return static_cast<double>(keyed_hash(seed, "term", x) %
                                   static_cast<std::uint64_t>(range));
    };
    auto next_state = [seed, space](int k, std::int64_t x, std::int64_t u) {
        return static_cast<std::int64_t>(keyed_hash(seed, "succ", k, x, u) %
                                         static_cast<std::uint64_t>(space));
    };
    auto policy_pick = [seed, cand_count](int k, std::int64_t x) {
        return static_cast<std::int64_t>(keyed_hash(seed, "mu", k, x) %
                                         static_cast<std::uint64_t>(
                                             cand_count(k, x)));
    };
    auto flip_flop_pick = [seed, cand_count](int k, std::int64_t x,
                                             std::int64_t parity) {
        return static_cast<std::int64_t>(
            keyed_hash(seed, "ff", k, x, parity) %
            static_cast<std::uint64_t>(cand_count(k, x)));
    };

    toy.spec.horizon = horizon;
    toy.spec.successor = [next_state](int k, const std::int64_t& x,
                                      const std::int64_t& u) {
        return next_state(k, x, u);
    };
    toy.spec.candidates =
        [cand_count](int k,
                     const PartialTrajectory<std::int64_t, std::int64_t>& y) {
            std::vector<std::int64_t> out;
            const int c = cand_count(k, y.last_state());
            for (int u = 0; u < c; ++u) out.push_back(u);
            return out;
        };
    toy.spec.cost =
        [stage_cost, terminal_cost,
         horizon](const CompleteTrajectory<std::int64_t, std::int64_t>& t) {
            double total = 0;
            for (int k = 0; k < horizon; ++k)
                total += stage_cost(k, t.state(k), t.control(k));
            return total + terminal_cost(t.state(horizon));
        };

    // Both bundled heuristics' own playouts from x0 are declared feasible,
    // so rollout always starts with a usable incumbent.
    std::vector<std::int64_t> policy_playout;
    std::vector<std::int64_t> flip_flop_playout;
    {
        std::int64_t x = toy.x0;
        for (int k = 0; k < horizon; ++k) {
            const std::int64_t u = policy_pick(k, x);
            policy_playout.push_back(u);
            x = next_state(k, x, u);
        }
        x = toy.x0;
        for (int k = 0; k < horizon; ++k) {
            const std::int64_t u = flip_flop_pick(k, x, k % 2);
            flip_flop_playout.push_back(u);
            x = next_state(k, x, u);
        }
    }
    const int density = params.density_permille;
    toy.spec.feasible =
        [seed, density, policy_playout, flip_flop_playout](
            const CompleteTrajectory<std::int64_t, std::int64_t>& t) {
            const std::vector<std::int64_t>& u = t.body().controls();
            if (u == policy_playout || u == flip_flop_playout) return true;
            return controls_hash(seed, u) % 1000 <
                   static_cast<std::uint64_t>(density);
        };

    toy.policy = policy_heuristic<std::int64_t, std::int64_t>(
        toy.spec,
        [policy_pick](int k,
                      const PartialTrajectory<std::int64_t, std::int64_t>& y)
            -> std::optional<std::int64_t> {
            return policy_pick(k, y.last_state());
        });
    // Alternates on the number of steps since the completion started, not on
    // the prefix, so restarting it mid-tail shifts the phase: sequentially
    // inconsistent by construction.
    toy.flip_flop.complete =
        [spec = toy.spec, flip_flop_pick](
            const PartialTrajectory<std::int64_t, std::int64_t>& y)
        -> std::optional<TrajectorySegment<std::int64_t, std::int64_t>> {
        TrajectorySegment<std::int64_t, std::int64_t> seg;
        seg.states.push_back(y.last_state());
        PartialTrajectory<std::int64_t, std::int64_t> cur = y;
        std::int64_t offset = 0;
        while (cur.length() < spec.horizon) {
            const std::int64_t u = flip_flop_pick(
                cur.length(), cur.last_state(), offset % 2);
            cur = extend(spec, cur, u);
            seg.controls.push_back(u);
            seg.states.push_back(cur.last_state());
            ++offset;
        }
        return seg;
    };
    return toy;
}

ToyAgentDp make_toy_agent_dp(const ToyAgentParams& params) {
    validate_common(params.horizon, params.state_space, params.cost_range,
                    params.density_permille);
    if (params.agents < 1 || params.max_components < 1)
        throw BadParams("toy agent problem needs agents and components");

    const std::uint64_t seed = params.seed;
    const std::int64_t space = params.state_space;
    const std::int64_t range = params.cost_range;
    const int max_comp = params.max_components;
    const int agents = params.agents;
    const int horizon = params.horizon;

    ToyAgentDp toy;
    toy.params = params;
    toy.x0 =
        static_cast<std::int64_t>(keyed_hash(seed, "ax0", 0) %
                                  static_cast<std::uint64_t>(space));

    auto tuple_hash = [](const std::vector<std::int64_t>& v) {
        std::uint64_t h = 0x51ed270b;
        for (std::int64_t u : v)
            h = hash_combine(h, static_cast<std::uint64_t>(u));
        return h;
    };
    auto comp_count = [seed, max_comp, agents, tuple_hash](
                          int k, int agent, std::int64_t x,
                          const std::vector<std::int64_t>& prefix) {
        return 1 + static_cast<int>(
                       keyed_hash(seed, "anc", k * agents + agent, x,
                                  tuple_hash(prefix)) %
                       static_cast<std::uint64_t>(max_comp));
    };
    auto next_state = [seed, space, tuple_hash](
                          int k, std::int64_t x,
                          const std::vector<std::int64_t>& whole) {
        return static_cast<std::int64_t>(
            keyed_hash(seed, "asucc", k, x, tuple_hash(whole)) %
            static_cast<std::uint64_t>(space));
    };

    toy.aspec.horizon = horizon;
    toy.aspec.agent_count = agents;
    toy.aspec.successor = [next_state](int k, const std::int64_t& x,
                                       const std::vector<std::int64_t>& w) {
        return next_state(k, x, w);
    };
    toy.aspec.component_candidates =
        [comp_count](int k, int agent, const std::int64_t& x,
                     const std::vector<std::int64_t>& prefix) {
            std::vector<std::int64_t> out;
            const int c = comp_count(k, agent, x, prefix);
            for (int u = 0; u < c; ++u) out.push_back(u);
            return out;
        };
    toy.aspec.cost =
        [seed, range, horizon, tuple_hash](
            const CompleteTrajectory<std::int64_t,
                                     std::vector<std::int64_t>>& t) {
            double total = 0;
            for (int k = 0; k < horizon; ++k)
                total += static_cast<double>(
                    keyed_hash(seed, "ag", k, t.state(k),
                               tuple_hash(t.control(k))) %
                    static_cast<std::uint64_t>(range));
            return total + static_cast<double>(
                               keyed_hash(seed, "aterm", t.state(horizon)) %
                               static_cast<std::uint64_t>(range));
        };

    // Component policy: a pure function of (slot, base state, within-stage
    // prefix), so it can resume from any mid-stage point.
    auto comp_pick = [seed, comp_count, agents, tuple_hash](
                         int k, int agent, std::int64_t x,
                         const std::vector<std::int64_t>& prefix) {
        return static_cast<std::int64_t>(
            keyed_hash(seed, "amu", k * agents + agent, x,
                       tuple_hash(prefix)) %
            static_cast<std::uint64_t>(comp_count(k, agent, x, prefix)));
    };

    // Forced-feasible playout of that policy from x0.
    std::vector<std::vector<std::int64_t>> playout;
    {
        std::int64_t x = toy.x0;
        for (int k = 0; k < horizon; ++k) {
            std::vector<std::int64_t> whole;
            for (int a = 0; a < agents; ++a)
                whole.push_back(comp_pick(k, a, x, whole));
            x = next_state(k, x, whole);
            playout.push_back(std::move(whole));
        }
    }
    const int density = params.density_permille;
    toy.aspec.feasible =
        [seed, density, playout, tuple_hash](
            const CompleteTrajectory<std::int64_t,
                                     std::vector<std::int64_t>>& t) {
            if (t.body().controls() == playout) return true;
            std::uint64_t h = keyed_hash(seed, "afeas", playout.size());
            for (const auto& whole : t.body().controls())
                h = hash_combine(h, tuple_hash(whole));
            return h % 1000 < static_cast<std::uint64_t>(density);
        };

    const auto split = split_agents(toy.aspec);
    toy.split_policy = policy_heuristic<SplitState<std::int64_t, std::int64_t>,
                                        std::int64_t>(
        split,
        [comp_pick, agents](
            int slot,
            const PartialTrajectory<SplitState<std::int64_t, std::int64_t>,
                                    std::int64_t>& y)
            -> std::optional<std::int64_t> {
            const auto& st = y.last_state();
            return comp_pick(slot / agents, slot % agents, st.base,
                             st.partial);
        });
    return toy;
}

void to_json(nlohmann::json& j, const ToyDpParams& params) {
    j = nlohmann::json{{"seed", params.seed},
                       {"horizon", params.horizon},
                       {"max_candidates", params.max_candidates},
                       {"state_space", params.state_space},
                       {"cost_range", params.cost_range},
                       {"density_permille", params.density_permille}};
}

void from_json(const nlohmann::json& j, ToyDpParams& params) {
    params.seed = j.at("seed").get<std::uint64_t>();
    params.horizon = j.at("horizon").get<int>();
    params.max_candidates = j.at("max_candidates").get<int>();
    params.state_space = j.at("state_space").get<std::int64_t>();
    params.cost_range = j.at("cost_range").get<std::int64_t>();
    params.density_permille = j.at("density_permille").get<int>();
}

void to_json(nlohmann::json& j, const ToyAgentParams& params) {
    j = nlohmann::json{{"seed", params.seed},
                       {"horizon", params.horizon},
                       {"agents", params.agents},
                       {"max_components", params.max_components},
                       {"state_space", params.state_space},
                       {"cost_range", params.cost_range},
                       {"density_permille", params.density_permille}};
}

void from_json(const nlohmann::json& j, ToyAgentParams& params) {
    params.seed = j.at("seed").get<std::uint64_t>();
    params.horizon = j.at("horizon").get<int>();
    params.agents = j.at("agents").get<int>();
    params.max_components = j.at("max_components").get<int>();
    params.state_space = j.at("state_space").get<std::int64_t>();
    params.cost_range = j.at("cost_range").get<std::int64_t>();
    params.density_permille = j.at("density_permille").get<int>();
}

} // namespace rolloutkit
