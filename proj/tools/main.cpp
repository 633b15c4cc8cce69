// Command line front end: generates instances, solves them, verifies reports
// against independent reference solvers and runs the warm-start benchmark.
// Exit codes: 0 success, 2 declared infeasibility, 1 any other error.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <rolloutkit/auction.hpp>
#include <rolloutkit/enforced_separation.hpp>
#include <rolloutkit/facility.hpp>
#include <rolloutkit/oracle.hpp>
#include <rolloutkit/rollout.hpp>
#include <rolloutkit/rng.hpp>
#include <rolloutkit/toy_dp.hpp>

using nlohmann::json;
using namespace rolloutkit;

namespace {

OracleBudget oracle_budget() {
    OracleBudget budget;
    if (const char* raw = std::getenv("ROLLOUTKIT_BUDGET")) {
        char* end = nullptr;
        const long long parsed = std::strtoll(raw, &end, 10);
        if (end == raw || *end != '\0' || parsed <= 0)
            throw BadParams("ROLLOUTKIT_BUDGET must be a positive integer");
        budget.max_nodes = parsed;
    }
    return budget;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_output(const json& j, const std::string& out_path) {
    const std::string text = j.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write " + out_path);
    out << text;
}

// ---------------------------------------------------------------------------
// generators

json gen_assign2d(std::uint64_t seed, int persons, int objects,
                  std::int64_t magnitude) {
    if (objects <= 0) objects = persons;
    Substream rng(seed, "gen2d");
    std::vector<std::int64_t> benefits;
    benefits.reserve(static_cast<std::size_t>(persons) * objects);
    for (int i = 0; i < persons * objects; ++i)
        benefits.push_back(rng.next_int(-magnitude, magnitude));
    json j = Assignment2DInstance::dense(persons, objects, std::move(benefits));
    j["kind"] = "assign2d";
    j["seed"] = seed;
    return j;
}

json gen_multidim(std::uint64_t seed, int layers, int m,
                  std::int64_t magnitude, const std::string& kind) {
    Substream rng(seed, "gennd");
    std::size_t cells = 1;
    for (int p = 0; p < layers; ++p) cells *= static_cast<std::size_t>(m);
    std::vector<std::int64_t> costs;
    costs.reserve(cells);
    for (std::size_t i = 0; i < cells; ++i)
        costs.push_back(rng.next_int(0, magnitude));
    json j = MultiAssignInstance::create(layers, m, std::move(costs));
    j["kind"] = kind;
    j["seed"] = seed;
    return j;
}

json gen_separable3d(std::uint64_t seed, int m, std::int64_t magnitude,
                     std::int64_t epsilon, const std::string& kind) {
    Substream rng(seed, "gensep");
    std::vector<std::int64_t> beta, gamma;
    for (int i = 0; i < m * m; ++i) beta.push_back(rng.next_int(0, magnitude));
    for (int i = 0; i < m * m; ++i) gamma.push_back(rng.next_int(0, magnitude));
    std::vector<std::int64_t> costs;
    costs.reserve(static_cast<std::size_t>(m) * m * m);
    for (int a = 0; a < m; ++a)
        for (int l = 0; l < m; ++l)
            for (int w = 0; w < m; ++w) {
                std::int64_t c = beta[a * m + l] + gamma[l * m + w];
                if (epsilon > 0) c += rng.next_int(-epsilon, epsilon);
                costs.push_back(c);
            }
    json j = MultiAssignInstance::create(3, m, std::move(costs));
    j["kind"] = kind;
    j["seed"] = seed;
    j["beta"] = beta;
    j["gamma"] = gamma;
    j["epsilon"] = epsilon;
    return j;
}

json gen_facility(std::uint64_t seed, int clients, int locations,
                  std::int64_t demand_max) {
    Substream rng(seed, "genfac");
    std::vector<std::int64_t> demands, capacities, placements, service;
    for (int i = 0; i < clients; ++i)
        demands.push_back(rng.next_int(1, demand_max));
    std::int64_t total = 0;
    for (auto d : demands) total += d;
    // Any single open location can cover the whole demand, so every
    // placement with at least one open location is shippable.
    for (int l = 0; l < locations; ++l) capacities.push_back(total);
    for (int l = 0; l < locations; ++l)
        placements.push_back(rng.next_int(1, 25));
    for (int i = 0; i < clients * locations; ++i)
        service.push_back(rng.next_int(0, 9));
    json j = FacilityInstance::create(demands, capacities, placements,
                                      service);
    j["kind"] = "facility";
    j["seed"] = seed;
    return j;
}

json gen_toydp(const ToyDpParams& params) {
    make_toy_dp(params);  // validates
    json j = params;
    j["kind"] = "toy-dp";
    return j;
}

// ---------------------------------------------------------------------------
// instance loading

const std::set<std::string>& known_kinds() {
    static const std::set<std::string> kinds{
        "assign2d", "assign3d",       "assignnd", "separable3d",
        "facility", "eps-separable3d", "toy-dp"};
    return kinds;
}

bool is_multidim_kind(const std::string& kind) {
    return kind == "assign3d" || kind == "assignnd" ||
           kind == "separable3d" || kind == "eps-separable3d";
}

bool is_separable_kind(const std::string& kind) {
    return kind == "separable3d" || kind == "eps-separable3d";
}

void check_separable_metadata(const json& j) {
    const int m = j.at("m").get<int>();
    const auto beta = j.at("beta").get<std::vector<std::int64_t>>();
    const auto gamma = j.at("gamma").get<std::vector<std::int64_t>>();
    const auto costs = j.at("costs").get<std::vector<std::int64_t>>();
    const std::int64_t eps = j.value("epsilon", std::int64_t{0});
    if (static_cast<int>(beta.size()) != m * m ||
        static_cast<int>(gamma.size()) != m * m)
        throw BadParams("separable metadata has the wrong shape");
    std::size_t at = 0;
    for (int a = 0; a < m; ++a)
        for (int l = 0; l < m; ++l)
            for (int w = 0; w < m; ++w, ++at) {
                const std::int64_t split = beta[a * m + l] + gamma[l * m + w];
                if (std::abs(costs[at] - split) > eps)
                    throw BadParams(
                        "cost tensor strays from the declared separable "
                        "structure by more than epsilon");
            }
}

struct Instance {
    std::string kind;
    json body;
};

Instance load_instance(const std::string& path) {
    json j = load_json(path);
    if (!j.is_object() || !j.contains("kind"))
        throw BadParams("instance file carries no kind field");
    const std::string kind = j.at("kind").get<std::string>();
    if (known_kinds().count(kind) == 0)
        throw BadParams("unknown instance kind: " + kind);
    if (is_separable_kind(kind)) check_separable_metadata(j);
    return {kind, std::move(j)};
}

// ---------------------------------------------------------------------------
// solving

struct SolveFlags {
    std::string variant = "fortified";
    std::string heuristic = "policy";
    std::string cache = "on";
    std::int64_t budget = -1;
    double epsilon = 0.0;
    bool epsilon_set = false;
    bool budget_set = false;
    bool no_warm_start = false;
};

json trace_json(const std::vector<StageTrace<std::int64_t>>& trace) {
    json arr = json::array();
    for (const auto& t : trace)
        arr.push_back({{"stage", t.stage},
                       {"candidates_tried", t.candidates_tried},
                       {"feasible_count", t.feasible_count},
                       {"completion_failures", t.completion_failures},
                       {"heuristic_calls", t.heuristic_calls},
                       {"followed_incumbent", t.followed_incumbent},
                       {"chosen", t.chosen},
                       {"chain_cost", t.chain_cost}});
    return arr;
}

json solve_assign2d(const Instance& inst, const SolveFlags& flags,
                    json& options) {
    Assignment2DInstance a = inst.body.get<Assignment2DInstance>();
    AuctionResult res;
    std::string method;
    if (flags.epsilon_set) {
        if (a.num_persons() != a.num_objects())
            throw BadParams(
                "--epsilon runs a single pass and needs a square instance");
        res = auction_solve(a, flags.epsilon);
        method = "single-pass";
        options["epsilon"] = flags.epsilon;
    } else if (a.num_persons() < a.num_objects()) {
        res = asymmetric_solve(a);
        method = "asymmetric";
    } else {
        res = auction_scaled(a);
        method = "scaled";
    }
    options["method"] = method;
    return json(res);
}

json multidim_result_json(const MultiRolloutResult& res) {
    json ledger = json::array();
    for (const auto& e : res.ledger)
        ledger.push_back({{"pair", e.pair},
                          {"node", e.node},
                          {"trials", e.trials},
                          {"solves", e.solves}});
    return json{{"solution", res.solution},
                {"cost", res.cost},
                {"baseline_cost", res.baseline_cost},
                {"baseline_solves", res.baseline_solves},
                {"rollout_solves", res.rollout_solves},
                {"final_pass_solves", res.final_pass_solves},
                {"rounds", res.rounds},
                {"ledger", std::move(ledger)},
                {"chain", res.chain}};
}

json solve_multidim(const Instance& inst, const SolveFlags& flags,
                    json& options) {
    MultiAssignInstance m = inst.body.get<MultiAssignInstance>();
    MultiRolloutOptions opts;
    opts.warm_start = !flags.no_warm_start;
    options["warm_start"] = opts.warm_start;
    const MultiRolloutResult res =
        m.layers() == 3 ? rollout_3d(m, opts) : rollout_nd(m, opts);
    return multidim_result_json(res);
}

json solve_facility(const Instance& inst, const SolveFlags& flags,
                    json& options) {
    FacilityInstance f = inst.body.get<FacilityInstance>();
    FacilityOptions opts;
    opts.cache = flags.cache != "off";
    options["cache"] = opts.cache;
    return json(facility_rollout(f, opts));
}

json solve_toydp(const Instance& inst, const SolveFlags& flags,
                 json& options) {
    const ToyDpParams params = inst.body.get<ToyDpParams>();
    const ToyDp toy = make_toy_dp(params);
    const BaseHeuristic<std::int64_t, std::int64_t>& h =
        flags.heuristic == "flip-flop" ? toy.flip_flop : toy.policy;
    options["variant"] = flags.variant;
    options["heuristic"] = flags.heuristic;

    RolloutOutcome<std::int64_t, std::int64_t> out = [&] {
        if (flags.variant == "plain") return rollout(toy.spec, h, toy.x0);
        if (flags.variant == "tree") {
            if (!flags.budget_set)
                throw BadParams("the tree variant needs --budget");
            options["budget"] = flags.budget;
            return tree_rollout(toy.spec, h, toy.x0, flags.budget);
        }
        return fortified_rollout(toy.spec, h, toy.x0);
    }();

    const auto& body = out.final_trajectory.body();
    return json{{"controls", body.controls()},
                {"states", body.states()},
                {"final_cost", out.final_cost},
                {"baseline_cost", out.baseline_cost},
                {"chain", out.chain},
                {"heuristic_calls", out.heuristic_calls},
                {"trace", trace_json(out.trace)}};
}

// ---------------------------------------------------------------------------
// verification

struct Check {
    std::string name;
    bool ok = true;
    std::string detail;
};

void add_check(std::vector<Check>& checks, const std::string& name, bool ok,
               const std::string& detail = "") {
    checks.push_back({name, ok, detail});
}

// The oracle runs under the (env-overridable) node budget; exhausting it is
// an error, not a silent pass.
template <typename F>
void oracle_check(std::vector<Check>& checks, const std::string& name, F f) {
    try {
        f();
    } catch (const BudgetExceeded&) {
        throw Error("reference check '" + name +
                    "' exhausted the oracle budget; raise ROLLOUTKIT_BUDGET");
    }
}

std::vector<Check> verify_assign2d(const Instance& inst, const json& report) {
    const Assignment2DInstance a = inst.body.get<Assignment2DInstance>();
    const AuctionResult res = report.at("result").get<AuctionResult>();
    std::vector<Check> checks;

    const int n = a.num_persons();
    bool shape = static_cast<int>(res.assignment.size()) == n;
    for (int obj : res.assignment)
        shape = shape && obj >= 0 && obj < a.num_objects();
    add_check(checks, "assignment shape", shape);
    if (!shape) return checks;

    std::set<int> used;
    for (int obj : res.assignment) used.insert(obj);
    add_check(checks, "assignment injectivity",
              static_cast<int>(used.size()) == n);

    bool masked_ok = true;
    for (int i = 0; i < n; ++i)
        masked_ok = masked_ok && a.allowed(i, res.assignment[i]);
    add_check(checks, "mask compliance", masked_ok);

    std::int64_t primal = 0;
    for (int i = 0; i < n; ++i) primal += a.benefit(i, res.assignment[i]);
    add_check(checks, "objective recomputation", primal == res.primal,
              "assignment is worth " + std::to_string(primal));

    const auto cs = verify_eps_cs(a, res);
    add_check(checks, "price competitiveness", cs.satisfied,
              cs.satisfied ? "" : cs.violations.front().detail);

    oracle_check(checks, "optimality", [&] {
        const auto oracle = exact_assignment_2d(a, oracle_budget());
        add_check(checks, "optimality", oracle.value == res.primal,
                  "reference optimum is " + std::to_string(oracle.value));
    });
    return checks;
}

std::vector<Check> verify_multidim(const Instance& inst, const json& report) {
    const MultiAssignInstance m = inst.body.get<MultiAssignInstance>();
    const json& result = report.at("result");
    const MultiAssignSolution sol =
        result.at("solution").get<MultiAssignSolution>();
    const std::int64_t cost = result.at("cost").get<std::int64_t>();
    const std::int64_t baseline =
        result.at("baseline_cost").get<std::int64_t>();
    std::vector<Check> checks;

    const bool valid = is_valid(m, sol);
    add_check(checks, "layer map permutations", valid);
    if (!valid) return checks;

    add_check(checks, "objective recomputation",
              solution_cost(m, sol) == cost);
    add_check(checks, "improvement guarantee", cost <= baseline,
              "baseline costs " + std::to_string(baseline));

    oracle_check(checks, "oracle lower bound", [&] {
        const auto oracle = exact_multidim(m, oracle_budget());
        add_check(checks, "oracle lower bound", cost >= oracle.cost,
                  "reference optimum is " + std::to_string(oracle.cost));
        if (is_separable_kind(inst.kind)) {
            const std::int64_t eps =
                inst.body.value("epsilon", std::int64_t{0});
            const std::int64_t slack = 4 * m.m() * eps;
            add_check(checks, "separable optimality gap",
                      cost - oracle.cost <= slack,
                      "gap " + std::to_string(cost - oracle.cost) +
                          " allowed " + std::to_string(slack));
        }
    });
    return checks;
}

std::vector<Check> verify_facility(const Instance& inst, const json& report) {
    const FacilityInstance f = inst.body.get<FacilityInstance>();
    const json& result = report.at("result");
    const auto placements =
        result.at("placements").get<std::vector<std::int64_t>>();
    const auto flows = result.at("flows").get<std::vector<std::int64_t>>();
    const std::int64_t cost = result.at("cost").get<std::int64_t>();
    const std::int64_t baseline =
        result.at("baseline_cost").get<std::int64_t>();
    std::vector<Check> checks;

    const int n = f.num_clients();
    const int loc = f.num_locations();
    const bool shape = static_cast<int>(placements.size()) == loc &&
                       static_cast<int>(flows.size()) == n * loc;
    add_check(checks, "report shape", shape);
    if (!shape) return checks;

    std::int64_t open_capacity = 0;
    for (int l = 0; l < loc; ++l)
        if (placements[l] != 0) open_capacity += f.capacities()[l];
    add_check(checks, "placement feasibility",
              open_capacity >= f.total_demand());

    bool conserved = true;
    for (int i = 0; i < n; ++i) {
        std::int64_t shipped = 0;
        for (int l = 0; l < loc; ++l) shipped += flows[i * loc + l];
        conserved = conserved && shipped == f.demands()[i];
    }
    add_check(checks, "demand conservation", conserved);

    bool capacity_ok = true;
    bool closed_idle = true;
    for (int l = 0; l < loc; ++l) {
        std::int64_t used = 0;
        for (int i = 0; i < n; ++i) {
            capacity_ok = capacity_ok && flows[i * loc + l] >= 0;
            used += flows[i * loc + l];
        }
        if (placements[l] == 0)
            closed_idle = closed_idle && used == 0;
        else
            capacity_ok = capacity_ok && used <= f.capacities()[l];
    }
    add_check(checks, "capacity compliance", capacity_ok);
    add_check(checks, "closed locations idle", closed_idle);

    std::int64_t recomputed = 0;
    for (int l = 0; l < loc; ++l)
        if (placements[l] != 0) recomputed += f.placement_costs()[l];
    std::int64_t service = 0;
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < loc; ++l)
            service += flows[i * loc + l] * f.service_cost(i, l);
    add_check(checks, "objective recomputation",
              recomputed + service == cost);
    add_check(checks, "improvement guarantee", cost <= baseline);

    oracle_check(checks, "shipment optimality", [&] {
        const auto ship = exact_transport(f, placements, oracle_budget());
        add_check(checks, "shipment optimality", ship.cost == service,
                  "reference shipment costs " + std::to_string(ship.cost));
    });
    oracle_check(checks, "oracle lower bound", [&] {
        const auto oracle = exact_facility(f, oracle_budget());
        add_check(checks, "oracle lower bound", cost >= oracle.cost,
                  "reference optimum is " + std::to_string(oracle.cost));
    });
    return checks;
}

std::vector<Check> verify_toydp(const Instance& inst, const json& report) {
    const ToyDpParams params = inst.body.get<ToyDpParams>();
    const ToyDp toy = make_toy_dp(params);
    const json& result = report.at("result");
    const auto controls = result.at("controls").get<std::vector<std::int64_t>>();
    const auto states = result.at("states").get<std::vector<std::int64_t>>();
    const double final_cost = result.at("final_cost").get<double>();
    const double baseline = result.at("baseline_cost").get<double>();
    std::vector<Check> checks;

    if (static_cast<int>(controls.size()) != params.horizon) {
        add_check(checks, "report shape", false);
        return checks;
    }
    add_check(checks, "report shape", true);

    auto y = PartialTrajectory<std::int64_t, std::int64_t>::initial(toy.x0);
    bool replayed = true;
    try {
        for (std::int64_t u : controls) y = extend(toy.spec, y, u);
    } catch (const Error&) {
        replayed = false;
    }
    replayed = replayed && y.states() == states;
    add_check(checks, "dynamics replay", replayed);
    if (!replayed) return checks;

    const CompleteTrajectory<std::int64_t, std::int64_t> traj(y);
    add_check(checks, "trajectory feasibility", toy.spec.feasible(traj));
    add_check(checks, "objective recomputation",
              toy.spec.cost(traj) == final_cost);

    const json& options = report.at("options");
    const bool guarded = options.value("variant", "fortified") != "plain" ||
                         options.value("heuristic", "policy") == "policy";
    if (guarded)
        add_check(checks, "improvement guarantee", final_cost <= baseline);

    oracle_check(checks, "oracle lower bound", [&] {
        const auto oracle = exact_dp(toy.spec, toy.x0, oracle_budget());
        add_check(checks, "oracle lower bound", final_cost >= oracle.cost,
                  "reference optimum is " + std::to_string(oracle.cost));
    });
    return checks;
}

std::vector<Check> verify_dispatch(const Instance& inst, const json& report) {
    std::vector<Check> checks;
    const std::string report_kind = report.value("kind", "");
    add_check(checks, "report kind matches instance",
              report_kind == inst.kind);
    if (report_kind != inst.kind) return checks;

    std::vector<Check> more;
    if (inst.kind == "assign2d")
        more = verify_assign2d(inst, report);
    else if (is_multidim_kind(inst.kind))
        more = verify_multidim(inst, report);
    else if (inst.kind == "facility")
        more = verify_facility(inst, report);
    else
        more = verify_toydp(inst, report);
    checks.insert(checks.end(), more.begin(), more.end());
    return checks;
}

bool print_checks(const std::vector<Check>& checks, std::ostream& out) {
    bool all_ok = true;
    for (const auto& c : checks) {
        out << (c.ok ? "ok: " : "violation: ") << c.name;
        if (!c.detail.empty()) out << " (" << c.detail << ")";
        out << '\n';
        all_ok = all_ok && c.ok;
    }
    out << (all_ok ? "verification passed" : "verification failed") << '\n';
    return all_ok;
}

// ---------------------------------------------------------------------------
// warm-start benchmark

json bench_warm_start(std::uint64_t seed, int n, int trials,
                      std::int64_t magnitude) {
    Substream rng(seed, "benchwarm");
    std::vector<std::int64_t> benefits;
    benefits.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n * n; ++i)
        benefits.push_back(rng.next_int(-magnitude, magnitude));
    const auto base =
        Assignment2DInstance::dense(n, n, std::vector<std::int64_t>(benefits));
    const auto base_solved = auction_scaled(base);

    std::vector<double> ratios;
    std::int64_t cold_total = 0;
    std::int64_t warm_total = 0;
    int agreements = 0;
    for (int t = 0; t < trials; ++t) {
        // Perturb a single benefit entry, then solve cold (full scaling) and
        // warm (one final-precision pass from the base prices).
        auto perturbed = benefits;
        const int person = static_cast<int>(rng.next_below(n));
        const int object = static_cast<int>(rng.next_below(n));
        perturbed[static_cast<std::size_t>(person) * n + object] =
            rng.next_int(-magnitude, magnitude);
        const auto inst = Assignment2DInstance::dense(n, n, perturbed);

        const auto cold = auction_scaled(inst);
        const auto warm = auction_final_pass(inst, base_solved.prices);
        if (warm.primal == cold.primal) ++agreements;
        cold_total += cold.rounds;
        warm_total += warm.rounds;
        ratios.push_back(static_cast<double>(warm.rounds) /
                         static_cast<double>(cold.rounds));
    }
    std::sort(ratios.begin(), ratios.end());
    const double median =
        trials % 2 == 1
            ? ratios[trials / 2]
            : 0.5 * (ratios[trials / 2 - 1] + ratios[trials / 2]);

    return json{{"benchmark", "warm-start"},
                {"n", n},
                {"trials", trials},
                {"seed", seed},
                {"magnitude", magnitude},
                {"agreements", agreements},
                {"cold_rounds_total", cold_total},
                {"warm_rounds_total", warm_total},
                {"median_round_ratio", median}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"constrained rollout and auction assignment toolkit"};
    app.require_subcommand(1);

    // gen ------------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a seeded instance file");
    gen->require_subcommand(1);
    std::uint64_t seed = 1;
    std::string out_path;
    gen->add_option("--seed", seed, "generator seed");
    gen->add_option("--out,-o", out_path, "output file (default stdout)");

    int persons = 6, objects = 0, m3 = 3, layers = 4, mn = 3, msep = 3;
    std::int64_t magnitude2d = 100, magnitude3d = 100, magnitudend = 100,
                 magnitudesep = 50, sep_eps = 2;
    auto* g2d = gen->add_subcommand("assign2d", "two-dimensional assignment");
    g2d->add_option("--persons", persons, "bidding side size");
    g2d->add_option("--objects", objects,
                    "object side size (default: persons)");
    g2d->add_option("--magnitude", magnitude2d, "benefit magnitude bound");

    auto* g3d = gen->add_subcommand("assign3d", "three-layer assignment");
    g3d->add_option("--m", m3, "elements per layer");
    g3d->add_option("--magnitude", magnitude3d, "cost magnitude bound");

    auto* gnd = gen->add_subcommand("assignnd", "multi-layer assignment");
    gnd->add_option("--layers", layers, "layer count");
    gnd->add_option("--m", mn, "elements per layer");
    gnd->add_option("--magnitude", magnitudend, "cost magnitude bound");

    auto* gsep =
        gen->add_subcommand("separable3d", "separable three-layer tensor");
    gsep->add_option("--m", msep, "elements per layer");
    gsep->add_option("--magnitude", magnitudesep, "beta/gamma magnitude");

    auto* geps = gen->add_subcommand(
        "eps-separable3d", "separable tensor with bounded perturbation");
    geps->add_option("--m", msep, "elements per layer");
    geps->add_option("--magnitude", magnitudesep, "beta/gamma magnitude");
    geps->add_option("--epsilon", sep_eps, "perturbation bound");

    int clients = 2, locations = 3;
    std::int64_t demand_max = 4;
    auto* gfac = gen->add_subcommand("facility", "facility location");
    gfac->add_option("--clients", clients, "client count");
    gfac->add_option("--locations", locations, "candidate location count");
    gfac->add_option("--demand-max", demand_max, "per-client demand bound");

    ToyDpParams toy_params;
    auto* gtoy = gen->add_subcommand("toy-dp", "seeded deterministic DP");
    for (CLI::App* leaf : {g2d, g3d, gnd, gsep, geps, gfac, gtoy})
        leaf->fallthrough();
    gtoy->add_option("--horizon", toy_params.horizon, "stage count");
    gtoy->add_option("--max-candidates", toy_params.max_candidates,
                     "maximum controls per stage");
    gtoy->add_option("--state-space", toy_params.state_space,
                     "state value modulus");
    gtoy->add_option("--cost-range", toy_params.cost_range,
                     "stage cost bound");
    gtoy->add_option("--density", toy_params.density_permille,
                     "feasible fraction, permille");

    // solve ------------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "solve an instance file");
    std::string instance_path, solve_out;
    SolveFlags flags;
    bool do_verify = false;
    solve->add_option("instance", instance_path, "instance file")->required();
    solve->add_option("--out,-o", solve_out, "report file (default stdout)");
    solve->add_option("--variant", flags.variant, "toy-dp rollout variant")
        ->check(CLI::IsMember({"plain", "fortified", "tree"}));
    solve
        ->add_option("--heuristic", flags.heuristic,
                     "toy-dp completion heuristic")
        ->check(CLI::IsMember({"policy", "flip-flop"}));
    auto* budget_opt = solve->add_option(
        "--budget", flags.budget, "tree variant expansion budget");
    auto* eps_opt = solve->add_option(
        "--epsilon", flags.epsilon,
        "run a single auction pass at this epsilon (assign2d)");
    solve->add_flag("--no-warm-start", flags.no_warm_start,
                    "re-run the full epsilon schedule on every trial solve");
    solve->add_option("--cache", flags.cache, "facility transport memo")
        ->check(CLI::IsMember({"on", "off"}));
    solve->add_flag("--verify", do_verify,
                    "verify the report before exiting");

    // verify -----------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "check a report file");
    std::string v_instance, v_report;
    verify->add_option("instance", v_instance, "instance file")->required();
    verify->add_option("report", v_report, "report file")->required();

    // bench ------------------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "deterministic benchmarks");
    bench->require_subcommand(1);
    auto* bwarm = bench->add_subcommand(
        "warm-start", "cold scaling vs warm single-pass auction rounds");
    std::uint64_t bseed = 1;
    int bn = 50, btrials = 50;
    std::int64_t bmag = 1000;
    std::string bench_out;
    bwarm->add_option("--seed", bseed, "benchmark seed");
    bwarm->add_option("--n", bn, "assignment size");
    bwarm->add_option("--trials", btrials, "perturbation count");
    bwarm->add_option("--magnitude", bmag, "benefit magnitude bound");
    bwarm->add_option("--out,-o", bench_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (gen->parsed()) {
            json j;
            if (g2d->parsed())
                j = gen_assign2d(seed, persons, objects, magnitude2d);
            else if (g3d->parsed())
                j = gen_multidim(seed, 3, m3, magnitude3d, "assign3d");
            else if (gnd->parsed())
                j = gen_multidim(seed, layers, mn, magnitudend, "assignnd");
            else if (gsep->parsed())
                j = gen_separable3d(seed, msep, magnitudesep, 0,
                                    "separable3d");
            else if (geps->parsed())
                j = gen_separable3d(seed, msep, magnitudesep, sep_eps,
                                    "eps-separable3d");
            else if (gfac->parsed())
                j = gen_facility(seed, clients, locations, demand_max);
            else {
                toy_params.seed = seed;
                j = gen_toydp(toy_params);
            }
            write_output(j, out_path);
            return 0;
        }

        if (solve->parsed()) {
            flags.epsilon_set = eps_opt->count() > 0;
            flags.budget_set = budget_opt->count() > 0;
            const Instance inst = load_instance(instance_path);

            json options;
            const auto t0 = std::chrono::steady_clock::now();
            json result;
            if (inst.kind == "assign2d")
                result = solve_assign2d(inst, flags, options);
            else if (is_multidim_kind(inst.kind))
                result = solve_multidim(inst, flags, options);
            else if (inst.kind == "facility")
                result = solve_facility(inst, flags, options);
            else
                result = solve_toydp(inst, flags, options);
            const auto t1 = std::chrono::steady_clock::now();

            json report{{"kind", inst.kind},
                        {"options", options},
                        {"result", result}};
            report["wall_time_ms"] =
                std::chrono::duration<double, std::milli>(t1 - t0).count();
            write_output(report, solve_out);

            if (do_verify && !print_checks(verify_dispatch(inst, report),
                                           std::cerr))
                return 1;
            return 0;
        }

        if (verify->parsed()) {
            const Instance inst = load_instance(v_instance);
            const json report = load_json(v_report);
            return print_checks(verify_dispatch(inst, report), std::cout)
                       ? 0
                       : 1;
        }

        if (bwarm->parsed()) {
            write_output(bench_warm_start(bseed, bn, btrials, bmag),
                         bench_out);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.declared_infeasible() ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
