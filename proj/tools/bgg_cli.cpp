// bgg: solver, strategy synthesis and simulation for infinite-duration
// bidding games under taxman bidding. Machine-readable output goes to
// stdout, diagnostics to stderr. Exit codes: 0 success, 2 input error,
// 3 unsupported or infeasible, 4 numerical failure.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "bgg/errors.hpp"
#include "bgg/etr.hpp"
#include "bgg/game.hpp"
#include "bgg/mpvalue.hpp"
#include "bgg/rtb.hpp"
#include "bgg/scc.hpp"
#include "bgg/sim.hpp"
#include "bgg/strategy.hpp"
#include "bgg/thresholds.hpp"

using nlohmann::json;
using namespace bgg;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ContractError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ContractError("cannot write '" + path + "'");
    out << text;
}

Rat rat_flag(const std::string& text, const char* what) {
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw ContractError(std::string(what) + ": " + e.what());
    }
}

Rat tau_flag(const std::string& text) {
    Rat tau = rat_flag(text, "--tau");
    if (tau < 0 || tau > 1) throw ContractError("--tau must lie in [0,1]");
    return tau;
}

void require_positive(double x, const char* what) {
    if (!(x > 0)) throw ContractError(std::string(what) + " must be positive");
}

struct LoadedStrategy {
    std::unique_ptr<Strategy> runtime;
    std::optional<MaxMpStrategy> mp; // set when an mp strategy file was loaded
};

bool is_catalog_name(const std::string& spec) {
    return spec == "allin" || spec == "fraction" || spec.rfind("fraction:", 0) == 0 ||
           spec == "random" || spec == "mimic" || spec == "reach";
}

LoadedStrategy load_strategy(const GameGraph& g, const std::string& spec,
                             const StrategyContext& ctx) {
    if (is_catalog_name(spec)) return {make_adversary(spec, ctx), std::nullopt};
    json doc;
    try {
        doc = json::parse(read_input(spec));
    } catch (const json::parse_error& e) {
        throw ValidationError("strategy file '" + spec + "': " + e.what());
    }
    std::string kind = doc.value("kind", "");
    if (kind == "max-mp" || kind == "min-mp") {
        MaxMpStrategy strat = MaxMpStrategy::from_json(g, doc);
        LoadedStrategy out{make_mp_runtime(g, strat), strat};
        return out;
    }
    if (kind == "reach") return {make_qual_runtime(g, QualReachStrategy::from_json(g, doc)), std::nullopt};
    throw ValidationError("strategy file '" + spec + "': unknown kind '" + kind + "'");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---- subcommand bodies -----------------------------------------------------

int cmd_validate(const std::string& path) {
    GameGraph g = parse_game(read_input(path));
    SccDecomposition d = scc_decompose(g);
    int bottoms = 0;
    for (bool b : d.is_bottom) bottoms += b ? 1 : 0;
    json j = {{"vertices", g.n()},
              {"edges", g.edge_list.size()},
              {"targets", g.targets.size()},
              {"parity_complete", g.parity_complete()},
              {"strongly_connected", d.size() == 1},
              {"scc_count", d.size()},
              {"bottom_scc_count", bottoms},
              {"valid", true}};
    std::cout << dump(j);
    return 0;
}

int cmd_solve(const std::string& path, const std::string& objective, const std::string& tau_s,
              const std::string& ratio_s, double tol, long max_iters, const std::string& format) {
    GameGraph g = parse_game(read_input(path));
    Rat tau = tau_flag(tau_s);
    require_positive(tol, "--tol");
    if (max_iters <= 0) throw ContractError("--max-iters must be positive");

    auto th_csv = [&](const ThresholdMap& tm) {
        std::ostringstream os;
        os << "vertex,th\n";
        for (int v = 0; v < g.n(); ++v)
            os << g.ids[v] << ',' << double_to_string(tm.th[v], 12) << "\n";
        return os.str();
    };

    if (objective == "reach") {
        ThresholdMap tm = solve_reachability_thresholds(g, tau, tol, max_iters);
        std::cout << (format == "csv" ? th_csv(tm) : dump(tm.to_json(g)));
        return 0;
    }
    if (objective == "parity") {
        ThresholdMap tm = solve_parity_thresholds(g, tau, tol, max_iters);
        std::cout << (format == "csv" ? th_csv(tm) : dump(tm.to_json(g)));
        return 0;
    }
    if (objective == "mp-value") {
        if (ratio_s.empty()) throw ContractError("mp-value needs --ratio");
        double ratio = rat_to_double(rat_flag(ratio_s, "--ratio"));
        double p = bias(tau, ratio);
        RtbSolution sol = solve_mp(g, p, tol);
        json j = sol.to_json(g);
        j["tau"] = rat_to_fraction(tau);
        j["ratio"] = ratio;
        std::cout << dump(j);
        return 0;
    }
    if (objective == "mp-threshold") {
        MpThresholdResult res = solve_general_mp_thresholds(g, tau, tol);
        std::cout << (format == "csv" ? th_csv(res.map) : dump(res.to_json(g)));
        return 0;
    }
    throw ContractError("unknown objective '" + objective +
                        "' (reach|parity|mp-value|mp-threshold)");
}

int cmd_curve(const std::string& path, const std::string& ratio_s, const std::string& grid_s,
              long grid_points, double tol) {
    GameGraph g = parse_game(read_input(path));
    double ratio = rat_to_double(rat_flag(ratio_s, "--ratio"));
    require_positive(tol, "--tol");
    std::vector<Rat> grid;
    if (!grid_s.empty()) {
        std::istringstream ss(grid_s);
        std::string item;
        while (std::getline(ss, item, ',')) grid.push_back(rat_flag(item, "--tau-grid"));
    } else {
        if (grid_points < 2) throw ContractError("--grid-points must be at least 2");
        for (long i = 0; i < grid_points; ++i) grid.emplace_back(i, grid_points - 1);
    }
    std::cout << curve_csv(value_curve(g, ratio, grid, tol));
    return 0;
}

int cmd_synth(const std::string& path, const std::string& kind, const std::string& tau_s,
              const std::string& ratio_s, const std::string& epsilon_s, const std::string& target_s,
              double tol, const std::string& out_path) {
    GameGraph g = parse_game(read_input(path));
    Rat tau = tau_flag(tau_s);
    require_positive(tol, "--tol");

    if (kind == "max-mp" || kind == "min-mp") {
        if (ratio_s.empty() || epsilon_s.empty())
            throw ContractError("mean-payoff synthesis needs --ratio and --epsilon");
        double ratio = rat_to_double(rat_flag(ratio_s, "--ratio"));
        double eps = rat_to_double(rat_flag(epsilon_s, "--epsilon"));
        MaxMpStrategy strat = kind == "max-mp"
                                  ? synth_max_mp_strategy(g, tau, ratio, eps, tol)
                                  : synth_min_mp_strategy(g, tau, ratio, eps, tol);
        write_output(out_path, dump(strat.to_json(g)));
        return 0;
    }
    if (kind == "reach") {
        if (epsilon_s.empty()) throw ContractError("reach synthesis needs --epsilon");
        Rat eps = rat_flag(epsilon_s, "--epsilon");
        int target;
        if (!target_s.empty()) {
            target = g.require_vertex(target_s);
        } else if (g.targets.size() == 1) {
            target = g.targets.front();
        } else {
            throw ContractError("reach synthesis needs --target (the game declares " +
                                std::to_string(g.targets.size()) + " targets)");
        }
        QualReachStrategy strat = synth_qual_reach_strategy(g, target, tau, eps);
        write_output(out_path, dump(strat.to_json(g)));
        return 0;
    }
    throw ContractError("unknown synthesis kind '" + kind + "' (max-mp|min-mp|reach)");
}

int cmd_simulate(const std::string& path, const std::string& tau_s, const std::string& p1_spec,
                 const std::string& p2_spec, const std::string& b1_s, const std::string& b2_s,
                 long steps, std::uint64_t seed, const std::string& tie_s,
                 const std::string& start_s, const std::string& trace_path, bool exact, bool strict,
                 bool stop_at_target, const std::string& windows_s) {
    GameGraph g = parse_game(read_input(path));
    Rat tau = tau_flag(tau_s);
    if (steps <= 0) throw ContractError("--steps must be positive");
    Budgets budgets(rat_flag(b1_s, "--b1"), rat_flag(b2_s, "--b2"));

    // a loaded mean-payoff strategy feeds the mimic adversary and the audits
    StrategyContext ctx;
    ctx.game = &g;
    ctx.tau = tau;
    LoadedStrategy s1 = load_strategy(g, p1_spec, ctx);
    std::optional<RtbSolution> audit_sol;
    std::optional<GameGraph> pov;
    if (s1.mp) {
        pov = s1.mp->kind == MaxMpStrategy::Kind::max_mp ? g : negate_weights(g);
        audit_sol = solve_mp(*pov, s1.mp->p, 1e-10);
        ctx.opposing_mp = &*s1.mp;
        ctx.opposing_sol = &*audit_sol;
    }
    LoadedStrategy s2 = load_strategy(g, p2_spec, ctx);

    EngineConfig cfg;
    cfg.steps = steps;
    cfg.seed = seed;
    cfg.tie = tie_break_of(tie_s);
    cfg.start_vertex = start_s.empty() ? 0 : g.require_vertex(start_s);
    cfg.strict_bids = strict;
    cfg.exact_budgets = exact;
    cfg.stop_at_target = stop_at_target;

    auto t0 = std::chrono::steady_clock::now();
    PlayTrace trace = run_play(g, Mechanism(tau), budgets, *s1.runtime, *s2.runtime, cfg);
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::vector<long> windows;
    if (!windows_s.empty()) {
        std::istringstream ss(windows_s);
        std::string item;
        while (std::getline(ss, item, ','))
            windows.push_back(static_cast<long>(std::stol(item)));
    } else {
        for (long w : {trace.steps() / 10, trace.steps() / 4, trace.steps() / 2})
            if (w >= 1) windows.push_back(w);
        if (windows.empty() && trace.steps() > 0) windows.push_back(trace.steps());
    }

    SimReport rep = make_report(trace, g, windows, wall);
    json j = rep.to_json();
    if (s1.mp && trace.steps() > 0) {
        LedgerAudit audit = audit_energy_ledger(trace, *pov, *audit_sol, s1.mp->nu, s1.mp->mu);
        j["ledger_min_slack"] = audit.min_slack;
        j["ledger_argmin_round"] = audit.argmin_round;
    }
    std::cout << dump(j);
    std::cerr << "wall time: " << double_to_string(rep.wall_time_s, 4) << "s\n";
    if (!trace_path.empty()) write_output(trace_path, trace.to_csv(g, exact));
    return 0;
}

int cmd_export_etr(const std::string& path, const std::string& tau_s, const std::string& vertex_s,
                   double tol) {
    GameGraph g = parse_game(read_input(path));
    Rat tau = tau_flag(tau_s);
    require_positive(tol, "--tol");
    int v0 = g.require_vertex(vertex_s);
    ThresholdMap tm = solve_reachability_thresholds(g, tau, tol);
    MoveSelection sel = selection_from_thresholds(g, tm.th);
    std::cout << export_etr_constraints(g, tau, v0, sel);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bidding games on graphs: taxman solvers, strategy synthesis, simulation"};
    app.require_subcommand(1);

    std::string game, tau = "1", ratio, epsilon, objective = "reach", format = "json";
    std::string kind = "max-mp", target, out_path, grid, trace_path, windows;
    std::string p1 = "allin", p2 = "allin", b1 = "1/2", b2 = "1/2", tie = "player1", start;
    double tol = 1e-10;
    long max_iters = 1000000, steps = 100000, grid_points = 0;
    std::uint64_t seed = 0;
    bool exact = false, strict = false, stop_at_target = false;

    auto* validate = app.add_subcommand("validate", "parse a game file and report its shape");
    validate->add_option("game", game, "game file (- for stdin)")->required();

    auto* solve = app.add_subcommand("solve", "threshold ratios and mean-payoff values");
    solve->add_option("game", game)->required();
    solve->add_option("--objective", objective, "reach|parity|mp-value|mp-threshold");
    solve->add_option("--tau", tau, "taxman parameter (1 Richman, 0 poorman)");
    solve->add_option("--ratio", ratio, "initial ratio of the maximizer (mp-value)");
    solve->add_option("--tol", tol, "solver tolerance");
    solve->add_option("--max-iters", max_iters, "fixed-point iteration budget");
    solve->add_option("--format", format, "json|csv");

    auto* curve = app.add_subcommand("curve", "mean-payoff value over a tau grid (CSV)");
    curve->add_option("game", game)->required();
    curve->add_option("--ratio", ratio)->required();
    curve->add_option("--tau-grid", grid, "comma-separated taus (sorted)");
    curve->add_option("--grid-points", grid_points, "uniform grid size over [0,1]");
    curve->add_option("--tol", tol);

    auto* synth = app.add_subcommand("synth", "synthesize a bidding strategy");
    synth->add_option("game", game)->required();
    synth->add_option("--kind", kind, "max-mp|min-mp|reach");
    synth->add_option("--tau", tau);
    synth->add_option("--ratio", ratio, "target ratio (mean-payoff kinds)");
    synth->add_option("--epsilon", epsilon, "optimality slack / reach budget");
    synth->add_option("--target", target, "target vertex (reach)");
    synth->add_option("--tol", tol);
    synth->add_option("--out", out_path, "write the strategy here instead of stdout");

    auto* simulate = app.add_subcommand("simulate", "run a play and report payoff and audits");
    simulate->add_option("game", game)->required();
    simulate->add_option("--tau", tau);
    simulate->add_option("--p1", p1, "catalog name or strategy file");
    simulate->add_option("--p2", p2, "catalog name or strategy file");
    simulate->add_option("--b1", b1, "player 1 budget");
    simulate->add_option("--b2", b2, "player 2 budget");
    simulate->add_option("--steps", steps, "number of rounds");
    simulate->add_option("--seed", seed, "seed for all randomized strategies");
    simulate->add_option("--tie-break", tie, "player1|player2|alternate|random");
    simulate->add_option("--start", start, "start vertex (default: first declared)");
    simulate->add_option("--trace", trace_path, "write the per-round CSV trace here");
    simulate->add_option("--tail-windows", windows, "comma-separated window sizes");
    simulate->add_flag("--exact", exact, "exact budget arithmetic and p/q trace columns");
    simulate->add_flag("--strict", strict, "abort on an over-budget bid instead of clamping");
    simulate->add_flag("--stop-at-target", stop_at_target, "stop once a target is occupied");

    auto* etr = app.add_subcommand("export-etr", "SMT-LIB constraints for Th(v0) >= 1/2");
    etr->add_option("game", game)->required();
    etr->add_option("--tau", tau);
    etr->add_option("--vertex", target, "query vertex")->required();
    etr->add_option("--tol", tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(game);
        if (solve->parsed()) return cmd_solve(game, objective, tau, ratio, tol, max_iters, format);
        if (curve->parsed()) return cmd_curve(game, ratio, grid, grid_points, tol);
        if (synth->parsed())
            return cmd_synth(game, kind, tau, ratio, epsilon, target, tol, out_path);
        if (simulate->parsed())
            return cmd_simulate(game, tau, p1, p2, b1, b2, steps, seed, tie, start, trace_path,
                                exact, strict, stop_at_target, windows);
        if (etr->parsed()) return cmd_export_etr(game, tau, target, tol);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (const auto* pe = dynamic_cast<const ParseError*>(&e); pe && pe->line() > 0)
            std::cerr << "  at line " << pe->line() << ", column " << pe->col() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
