#include "rolloutkit/enforced_separation.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "rolloutkit/assignment2d.hpp"
#include "rolloutkit/auction.hpp"
#include "rolloutkit/errors.hpp"

namespace rolloutkit {

namespace {

struct PairFixings {
    std::vector<int> src_to_tgt;  // -1 when the source is unfixed
    std::vector<int> tgt_to_src;  // -1 when the target is unfixed
};

std::vector<PairFixings> index_context(const MultiAssignInstance& instance,
                                       const ArcContext& context) {
    const int pairs = instance.layers() - 1;
    if (context.fixed.size() > static_cast<std::size_t>(pairs))
        throw InconsistentContext("more fixed-arc groups than layer pairs");
    std::vector<PairFixings> out(pairs);
    for (int p = 0; p < pairs; ++p) {
        out[p].src_to_tgt.assign(instance.m(), -1);
        out[p].tgt_to_src.assign(instance.m(), -1);
        if (context.fixed.size() <= static_cast<std::size_t>(p)) continue;
        for (const auto& [x, y] : context.fixed[p]) {
            if (x < 0 || x >= instance.m() || y < 0 || y >= instance.m())
                throw InconsistentContext("fixed arc out of range");
            if (out[p].src_to_tgt[x] >= 0)
                throw InconsistentContext("source fixed twice in pair " +
                                          std::to_string(p));
            if (out[p].tgt_to_src[y] >= 0)
                throw InconsistentContext("target fixed twice in pair " +
                                          std::to_string(p));
            out[p].src_to_tgt[x] = y;
            out[p].tgt_to_src[y] = x;
        }
    }
    return out;
}

// Minimum tensor entry over tuples that pass through arc (x, y) of pair
// `pair`, agree with every fixed arc, and follow the already-solved maps
// after layer pair+1.  Prefix layers are enumerated back to front: a layer
// value that is a fixed target forces its source, otherwise any unfixed
// source qualifies.
class ArcCoster {
public:
    ArcCoster(const MultiAssignInstance& instance,
              const std::vector<PairFixings>& fixings,
              const std::vector<std::vector<int>>& maps,
              std::int64_t tuple_budget, std::int64_t& tuples)
        : instance_(instance),
          fixings_(fixings),
          maps_(maps),
          budget_(tuple_budget),
          tuples_(tuples) {}

    std::int64_t cost(int pair, int x, int y) {
        tuple_.assign(instance_.layers(), 0);
        tuple_[pair] = x;
        tuple_[pair + 1] = y;
        for (int l = pair + 1; l + 1 < instance_.layers(); ++l)
            tuple_[l + 1] = maps_[l][tuple_[l]];
        best_ = std::numeric_limits<std::int64_t>::max();
        descend(pair - 1);
        return best_;
    }

private:
    void descend(int layer) {
        if (layer < 0) {
            if (++tuples_ > budget_)
                throw BudgetExceeded("prefix tuple budget exhausted while "
                                     "building arc costs");
            best_ = std::min(best_, instance_.cost(tuple_));
            return;
        }
        const int next = tuple_[layer + 1];
        const int forced = fixings_[layer].tgt_to_src[next];
        if (forced >= 0) {
            tuple_[layer] = forced;
            descend(layer - 1);
            return;
        }
        for (int v = 0; v < instance_.m(); ++v) {
            if (fixings_[layer].src_to_tgt[v] >= 0) continue;
            tuple_[layer] = v;
            descend(layer - 1);
        }
    }

    const MultiAssignInstance& instance_;
    const std::vector<PairFixings>& fixings_;
    const std::vector<std::vector<int>>& maps_;
    std::int64_t budget_;
    std::int64_t& tuples_;
    std::vector<int> tuple_;
    std::int64_t best_ = 0;
};

} // namespace

SeparationResult enforced_separation_nd(const MultiAssignInstance& instance,
                                        const ArcContext& context,
                                        const SeparationOptions& options) {
    if (instance.layers() < 2) throw BadParams("instance has no layer pairs");
    const int pairs = instance.layers() - 1;
    const int m = instance.m();
    auto fixings = index_context(instance, context);

    SeparationResult res;
    res.prices.assign(pairs, {});
    for (int p = 0;
         p < pairs && options.warm_prices.size() > static_cast<std::size_t>(p);
         ++p) {
        if (options.warm_prices[p].empty()) continue;
        if (options.warm_prices[p].size() != static_cast<std::size_t>(m))
            throw BadParams("warm price vector size mismatch");
        res.prices[p] = options.warm_prices[p];
    }

    std::vector<std::vector<int>> maps(pairs, std::vector<int>(m, -1));
    ArcCoster coster(instance, fixings, maps, options.tuple_budget,
                     res.tuples);

    for (int p = pairs - 1; p >= 0; --p) {
        std::vector<int> open_sources;
        std::vector<int> open_targets;
        for (int v = 0; v < m; ++v) {
            if (fixings[p].src_to_tgt[v] < 0) open_sources.push_back(v);
            if (fixings[p].tgt_to_src[v] < 0) open_targets.push_back(v);
            maps[p][v] = fixings[p].src_to_tgt[v];
        }
        if (open_sources.size() != open_targets.size())
            throw InconsistentContext(
                "fixed arcs are not a partial matching");
        const int r = static_cast<int>(open_sources.size());
        if (r == 0) continue;

        std::vector<std::int64_t> benefits(
            static_cast<std::size_t>(r) * r);
        for (int si = 0; si < r; ++si)
            for (int ti = 0; ti < r; ++ti)
                benefits[static_cast<std::size_t>(si) * r + ti] =
                    -coster.cost(p, open_sources[si], open_targets[ti]);
        const auto sub = Assignment2DInstance::dense(r, r, benefits);

        AuctionResult solved;
        if (res.prices[p].empty()) {
            solved = auction_scaled(sub);
        } else {
            std::vector<std::int64_t> warm(r);
            for (int ti = 0; ti < r; ++ti)
                warm[ti] = res.prices[p][open_targets[ti]];
            solved = auction_final_pass(sub, std::move(warm));
        }
        ++res.solves;
        res.rounds += solved.rounds;

        if (res.prices[p].empty()) res.prices[p].assign(m, 0);
        for (int ti = 0; ti < r; ++ti)
            res.prices[p][open_targets[ti]] = solved.prices[ti];
        for (int si = 0; si < r; ++si)
            maps[p][open_sources[si]] = open_targets[solved.assignment[si]];
    }

    res.solution.maps = std::move(maps);
    res.cost = solution_cost(instance, res.solution);
    return res;
}

SeparationResult enforced_separation_3d(const MultiAssignInstance& instance,
                                        const SeparationContext& context,
                                        const SeparationOptions& options) {
    if (instance.layers() != 3)
        throw BadParams("three-layer context on a non-three-layer instance");
    ArcContext ctx;
    ctx.fixed.resize(2);
    ctx.fixed[0] = context.fixed;
    if (context.trial) ctx.fixed[0].push_back(*context.trial);
    return enforced_separation_nd(instance, ctx, options);
}

namespace {

MultiRolloutResult run_rollout(const MultiAssignInstance& instance,
                               const MultiRolloutOptions& options) {
    if (instance.layers() < 3)
        throw BadParams("rollout needs at least three layers");
    const int pairs = instance.layers() - 1;
    const int m = instance.m();

    SeparationOptions sep_opts;
    sep_opts.tuple_budget = options.tuple_budget;

    MultiRolloutResult res;
    SeparationResult base =
        enforced_separation_nd(instance, {}, sep_opts);
    res.baseline_cost = base.cost;
    res.baseline_solves = base.solves;
    res.rounds += base.rounds;
    res.chain.push_back(base.cost);

    MultiAssignSolution incumbent = base.solution;
    std::int64_t incumbent_cost = base.cost;

    ArcContext ctx;
    ctx.fixed.resize(pairs);
    for (int p = 0; p + 1 < pairs; ++p) {
        std::vector<char> target_used(m, 0);
        for (int x = 0; x < m; ++x) {
            MultiLedgerEntry entry;
            entry.pair = p;
            entry.node = x;

            std::int64_t best_cost = 0;
            int best_target = -1;
            SeparationResult best;
            SeparationOptions trial_opts = sep_opts;
            for (int y = 0; y < m; ++y) {
                if (target_used[y]) continue;
                ArcContext trial_ctx = ctx;
                trial_ctx.fixed[p].emplace_back(x, y);
                SeparationResult trial =
                    enforced_separation_nd(instance, trial_ctx, trial_opts);
                ++entry.trials;
                entry.solves += trial.solves;
                res.rounds += trial.rounds;
                if (options.warm_start) trial_opts.warm_prices = trial.prices;
                if (best_target < 0 || trial.cost < best_cost) {
                    best_cost = trial.cost;
                    best_target = y;
                    best = std::move(trial);
                }
            }
            res.rollout_solves += entry.solves;
            res.ledger.push_back(entry);

            int chosen = best_target;
            if (best_cost <= incumbent_cost) {
                incumbent = best.solution;
                incumbent_cost = best_cost;
            } else {
                chosen = incumbent.maps[p][x];
            }
            ctx.fixed[p].emplace_back(x, chosen);
            target_used[chosen] = 1;
            res.chain.push_back(incumbent_cost);
        }
    }

    SeparationResult final_pass =
        enforced_separation_nd(instance, ctx, sep_opts);
    res.final_pass_solves = final_pass.solves;
    res.rollout_solves += final_pass.solves;
    res.rounds += final_pass.rounds;
    res.solution = final_pass.solution;
    res.cost = final_pass.cost;
    res.chain.push_back(final_pass.cost);
    return res;
}

} // namespace

MultiRolloutResult rollout_nd(const MultiAssignInstance& instance,
                              const MultiRolloutOptions& options) {
    return run_rollout(instance, options);
}

MultiRolloutResult rollout_3d(const MultiAssignInstance& instance,
                              const MultiRolloutOptions& options) {
    if (instance.layers() != 3)
        throw BadParams("three-layer rollout on a non-three-layer instance");
    return run_rollout(instance, options);
}

} // namespace rolloutkit
