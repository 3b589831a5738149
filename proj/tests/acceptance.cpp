// Acceptance suite: one self-contained check per criterion, each printing a
// single PASS/FAIL line. Exit code = number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "bgg/bidding.hpp"
#include "bgg/errors.hpp"
#include "bgg/etr.hpp"
#include "bgg/game.hpp"
#include "bgg/mpvalue.hpp"
#include "bgg/rtb.hpp"
#include "bgg/sim.hpp"
#include "bgg/strategy.hpp"
#include "bgg/thresholds.hpp"
#include "oracles.hpp"
#include "scheme_checks.hpp"

using namespace bgg;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

// the two fixed strongly connected four-vertex games of the audit campaigns
GameGraph audit_game_one() {
    return build_game({{"a", Rat(1), std::nullopt},
                       {"b", Rat(-1), std::nullopt},
                       {"c", Rat(1, 2), std::nullopt},
                       {"d", Rat(-3, 2), std::nullopt}},
                      {{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"},
                       {"a", "c"}, {"c", "a"}, {"b", "d"}, {"d", "b"}});
}

GameGraph audit_game_two() {
    return build_game({{"w", Rat(2), std::nullopt},
                       {"x", Rat(-1), std::nullopt},
                       {"y", Rat(0), std::nullopt},
                       {"z", Rat(-2), std::nullopt}},
                      {{"w", "x"}, {"x", "y"}, {"y", "z"}, {"z", "w"},
                       {"w", "y"}, {"y", "w"}, {"x", "z"}, {"z", "x"}});
}

const std::vector<std::string> kMpAdversaries = {"allin", "fraction", "random", "mimic"};
const std::vector<std::string> kReachAdversaries = {"allin", "fraction", "random", "reach"};

// ---- criterion bodies -------------------------------------------------------

Check criterion_bias_identities() {
    Check c;
    for (int i = 1; i <= 99; ++i) {
        double r = i / 100.0;
        c.expect(bias(Rat(1), r) == 0.5, "F(1,r) != 1/2 exactly at r=" + std::to_string(r));
        c.expect(bias(Rat(0), r) == r, "F(0,r) != r exactly at r=" + std::to_string(r));
    }
    c.expect(std::fabs(bias(Rat(1, 5), 0.75) - 2.0 / 3.0) <= 1e-15, "F(0.2,0.75) off 2/3");
    return c;
}

Check criterion_richman_connection() {
    Check c;
    std::mt19937_64 rng(20260810);
    int games = 0;
    while (games < 50) {
        GameGraph g = oracles::random_game(rng, 3 + static_cast<int>(rng() % 6), 0.4, 2);
        if (g.targets.empty()) continue;
        ++games;
        ThresholdMap tm = solve_reachability_thresholds(g, Rat(1), 1e-10, 4000000);
        std::vector<double> val = solve_reach_value(g, 0.5, g.targets, 1e-10, 4000000);
        for (int v = 0; v < g.n(); ++v)
            c.expect(std::fabs(tm.th[static_cast<std::size_t>(v)] -
                               (1.0 - val[static_cast<std::size_t>(v)])) <= 1e-6,
                     "threshold mismatch on game " + std::to_string(games) + " vertex " +
                         g.ids[static_cast<std::size_t>(v)]);
    }
    return c;
}

Check criterion_endpoint_reductions() {
    Check c;
    for (int a = 0; a <= 9; ++a)
        for (int b = a; b <= 9; ++b) {
            Rat thm(a, 9), thp(b, 9);
            c.expect(local_taxman_update_exact(thm, thp, Rat(1)) == (thm + thp) / 2,
                     "tau=1 update differs from the Richman average");
            c.expect(local_taxman_update_exact(thm, thp, Rat(0)) == thp / (1 + thp - thm),
                     "tau=0 update differs from the poorman formula");
        }
    return c;
}

Check criterion_two_vertex_oracle() {
    Check c;
    GameGraph g = oracles::two_vertex_game();
    for (int ti = 0; ti <= 4; ++ti) {
        Rat tau(ti, 4);
        for (int ri = 1; ri <= 9; ++ri) {
            double r = ri / 10.0;
            double expect = 2 * bias(tau, r) - 1;
            double got = mp_value_taxman(g, tau, r, 1e-10);
            c.expect(std::fabs(got - expect) <= 1e-6,
                     "mp value off 2F-1 at tau=" + rat_to_fraction(tau) + " r=" + std::to_string(r));
        }
        if (tau < 1) {
            SccThreshold st = threshold_ratio_scc(g, tau, 1e-10);
            c.expect(!st.degenerate && std::fabs(st.r - 0.5) <= 1e-6,
                     "threshold ratio off 1/2 at tau=" + rat_to_fraction(tau));
        }
    }
    return c;
}

Check criterion_k_bound_identity() {
    Check c;
    for (int ti = 0; ti <= 4; ++ti)
        for (int ri = 1; ri <= 9; ++ri) {
            Rat tau(ti, 4);
            double r = ri / 10.0;
            double k = min_K(tau, r);
            double lhs = r / (r + (1 - r) * k);
            c.expect(std::fabs(lhs - bias(tau, r)) <= 1e-12, "bias identity broken");
        }
    for (int ri = 1; ri <= 9; ++ri) c.expect(min_K(Rat(0), ri / 10.0) == 1.0, "min_K(0,r) != 1");
    for (int ti = 0; ti <= 4; ++ti) c.expect(min_K(Rat(ti, 4), 0.5) == 1.0, "min_K(tau,1/2) != 1");
    c.expect(min_K(Rat(1), 0.75) == 3.0, "min_K(1,0.75) != 3");
    return c;
}

std::vector<MaxMpStrategy> synthesized_suite() {
    std::vector<MaxMpStrategy> out;
    GameGraph two = oracles::two_vertex_game();
    for (int ti = 0; ti <= 4; ++ti)
        for (double r : {0.3, 0.5, 0.7})
            out.push_back(synth_max_mp_strategy(two, Rat(ti, 4), r, 0.15, 1e-10));
    out.push_back(synth_max_mp_strategy(audit_game_one(), Rat(1, 2), 0.5, 0.1, 1e-10));
    out.push_back(synth_max_mp_strategy(audit_game_two(), Rat(1, 2), 0.5, 0.1, 1e-10));
    out.push_back(synth_min_mp_strategy(two, Rat(1, 4), 0.5, 0.1, 1e-10));
    return out;
}

Check criterion_scheme_certificates() {
    Check c;
    int idx = 0;
    for (const MaxMpStrategy& strat : synthesized_suite()) {
        ++idx;
        auto cert = scheme_checks::certify_scheme(strat.scheme, 1000);
        c.expect(cert.min_slack() >= -1e-12,
                 "scheme " + std::to_string(idx) + " slack " + std::to_string(cert.min_slack()));
        if (!strat.scheme.trivial)
            c.expect(cert.zone_chain > 0, "protected-zone chain not strict on scheme " + std::to_string(idx));
    }
    return c;
}

Check criterion_ledger_audit() {
    Check c;
    int plays = 0;
    for (const GameGraph& g : {audit_game_one(), audit_game_two()}) {
        MaxMpStrategy strat = synth_max_mp_strategy(g, Rat(1, 2), 0.5, 0.1, 1e-10);
        RtbSolution sol = solve_mp(g, strat.p, 1e-10);
        StrategyContext ctx;
        ctx.game = &g;
        ctx.tau = Rat(1, 2);
        ctx.opposing_mp = &strat;
        ctx.opposing_sol = &sol;
        for (const std::string& adv : kMpAdversaries) {
            for (std::uint64_t seed = 1; seed <= 13; ++seed) {
                ++plays;
                auto p1 = make_mp_runtime(g, strat);
                auto p2 = make_adversary(adv, ctx);
                EngineConfig cfg;
                cfg.steps = 10000;
                cfg.seed = seed;
                PlayTrace trace =
                    run_play(g, Mechanism(Rat(1, 2)), Budgets(Rat(3, 5), Rat(2, 5)), *p1, *p2, cfg);
                LedgerAudit audit = audit_energy_ledger(trace, g, sol, strat.nu, strat.mu);
                c.expect(audit.min_slack >= -1e-9,
                         "ledger slack " + std::to_string(audit.min_slack) + " vs " + adv +
                             " seed " + std::to_string(seed));
                for (const auto& a : trace.audits)
                    c.expect(a.kind != "walk-floor" && a.kind != "ratio-bound",
                             "audit '" + a.kind + "' vs " + adv + " seed " + std::to_string(seed));
                for (double x : trace.walk_positions)
                    c.expect(x >= 1.0 - 1e-12, "recorded walk below 1 vs " + adv);
            }
        }
    }
    c.expect(plays >= 100, "campaign ran fewer than 100 plays");
    return c;
}

Check criterion_payoff_guarantee() {
    Check c;
    GameGraph g = oracles::two_vertex_game();
    MaxMpStrategy strat = synth_max_mp_strategy(g, Rat(1, 2), 0.5, 0.1, 1e-10);
    RtbSolution sol = solve_mp(g, strat.p, 1e-10);
    StrategyContext ctx;
    ctx.game = &g;
    ctx.tau = Rat(1, 2);
    ctx.opposing_mp = &strat;
    ctx.opposing_sol = &sol;
    const double bound = (2 * bias(Rat(1, 2), 0.5) - 1) - 0.1 - 0.02; // value - eps - window slack
    for (const std::string& adv : kMpAdversaries) {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            auto p1 = make_mp_runtime(g, strat);
            auto p2 = make_adversary(adv, ctx);
            EngineConfig cfg;
            cfg.steps = 100000;
            cfg.seed = seed;
            PlayTrace trace =
                run_play(g, Mechanism(Rat(1, 2)), Budgets(Rat(11, 20), Rat(9, 20)), *p1, *p2, cfg);
            double est = estimate_payoff(trace, g, {10000, 25000, 50000});
            c.expect(est >= bound, "estimate " + std::to_string(est) + " below " +
                                       std::to_string(bound) + " vs " + adv + " seed " +
                                       std::to_string(seed));
        }
    }
    return c;
}

Check criterion_qualitative_strategy() {
    Check c;
    GameGraph cyc = build_game({{"a", Rat(0), std::nullopt},
                                {"b", Rat(0), std::nullopt},
                                {"c", Rat(0), std::nullopt},
                                {"t", Rat(0), std::nullopt}},
                               {{"a", "b"}, {"b", "c"}, {"c", "t"}, {"t", "a"}}, {"t"});
    QualReachStrategy strat =
        synth_qual_reach_strategy(cyc, cyc.require_vertex("t"), Rat(1, 2), Rat(1, 100));
    StrategyContext ctx;
    ctx.game = &cyc;
    ctx.tau = Rat(1, 2);
    for (const std::string& adv : kReachAdversaries) {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            auto p1 = make_qual_runtime(cyc, strat);
            auto p2 = make_adversary(adv, ctx);
            EngineConfig cfg;
            cfg.steps = 500000;
            cfg.seed = seed;
            cfg.exact_budgets = true; // exact-rational replay of the gain chain
            cfg.stop_at_target = true;
            PlayTrace trace = run_play(cyc, Mechanism(Rat(1, 2)), Budgets(Rat(1, 100), Rat(99, 100)),
                                       *p1, *p2, cfg);
            c.expect(trace.reached_target_at.has_value(),
                     "target not reached vs " + adv + " seed " + std::to_string(seed));
            for (const auto& a : trace.audits)
                c.expect(a.kind != "qual-gain",
                         "gain bound violated vs " + adv + " seed " + std::to_string(seed));
        }
    }
    return c;
}

Check criterion_etr_export() {
    Check c;
    auto check_game = [&](const GameGraph& g, const std::string& label) {
        Rat tau(1, 3);
        ThresholdMap tm = solve_reachability_thresholds(g, tau, 1e-11, 4000000);
        MoveSelection sel = selection_from_thresholds(g, tm.th);
        int v0 = 0;
        for (int v = 0; v < g.n(); ++v)
            if (tm.th[static_cast<std::size_t>(v)] > tm.th[static_cast<std::size_t>(v0)]) v0 = v;
        EtrDocument doc = parse_etr_document(export_etr_constraints(g, tau, v0, sel));
        std::map<std::string, double> assignment;
        for (int v = 0; v < g.n(); ++v)
            assignment[etr_variable_name(g.ids[static_cast<std::size_t>(v)])] =
                tm.th[static_cast<std::size_t>(v)];
        EtrCheck res = check_etr_assignment(doc, assignment);
        c.expect(res.max_equality_residual < 1e-9,
                 label + ": equality residual " + std::to_string(res.max_equality_residual));
        c.expect(res.min_inequality_slack >= -1e-12,
                 label + ": inequality slack " + std::to_string(res.min_inequality_slack));
    };

    check_game(build_game({{"d", Rat(0), std::nullopt},
                           {"u", Rat(0), std::nullopt},
                           {"t", Rat(0), std::nullopt}},
                          {{"d", "d"}, {"u", "d"}, {"u", "t"}, {"t", "t"}}, {"t"}),
               "three-chain");

    std::mt19937_64 rng(171717);
    int done = 0;
    while (done < 2) {
        GameGraph g = oracles::random_game(rng, 6, 0.35, 1);
        if (g.targets.empty()) continue;
        ThresholdMap tm = solve_reachability_thresholds(g, Rat(1, 3), 1e-11, 4000000);
        double top = 0;
        for (double x : tm.th) top = std::max(top, x);
        if (top < 0.5) continue; // the exported query asserts Th(v0) >= 1/2
        ++done;
        check_game(g, "random-" + std::to_string(done));
    }
    return c;
}

Check criterion_monotonicity_suite() {
    Check c;
    std::mt19937_64 rng(424242);
    std::vector<GameGraph> games;
    for (int i = 0; i < 20; ++i)
        games.push_back(oracles::random_scc_game(rng, 3 + static_cast<int>(rng() % 6)));
    for (std::size_t gi = 0; gi < games.size(); ++gi) {
        double prev = -1e300;
        for (int k = 0; k <= 10; ++k) {
            double v = solve_mp(games[gi], k / 10.0, 1e-10).mp_value;
            c.expect(v >= prev - 1e-8,
                     "mp value dropped in p on game " + std::to_string(gi) + " at p=" +
                         std::to_string(k / 10.0));
            prev = v;
        }
    }
    std::vector<Rat> grid;
    for (int i = 0; i <= 10; ++i) grid.emplace_back(i, 10);
    for (std::size_t gi = 0; gi < 5; ++gi) {
        auto hi = value_curve(games[gi], 0.75, grid, 1e-10);
        for (std::size_t i = 1; i < hi.size(); ++i)
            c.expect(hi[i].value <= hi[i - 1].value + 1e-8,
                     "curve not nonincreasing at r=0.75 on game " + std::to_string(gi));
        auto flat = value_curve(games[gi], 0.5, grid, 1e-10);
        for (const auto& pt : flat)
            c.expect(std::fabs(pt.value - flat[0].value) <= 1e-8,
                     "curve not constant at r=0.5 on game " + std::to_string(gi));
    }
    return c;
}

} // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<Check()> body;
    };
    const std::vector<Criterion> criteria = {
        {"1. bias identities F(1,r)=1/2, F(0,r)=r (exact), F(0.2,0.75)=2/3 (1e-15)",
         criterion_bias_identities},
        {"2. Richman connection: tau=1 thresholds equal 1 - RTB^{1/2} values (1e-6, 50 games)",
         criterion_richman_connection},
        {"3. endpoint reductions of the local taxman update (exact, 10x10 grid)",
         criterion_endpoint_reductions},
        {"4. two-vertex oracle: value 2F-1 (1e-6) and threshold ratio 1/2 (1e-6)",
         criterion_two_vertex_oracle},
        {"5. K-bound identity r/(r+(1-r)K_min)=F (1e-12) and exact anchors",
         criterion_k_bound_identity},
        {"6. scheme certificate: bid/zone/shape/ratio guarantees (slack >= -1e-12)",
         criterion_scheme_certificates},
        {"7. ledger audit: 104 plays x 10^4 steps, slack >= -1e-9, walk floor >= 1",
         criterion_ledger_audit},
        {"8. payoff guarantee: tail estimate >= value - 0.1 - 0.02 over 10^5 steps",
         criterion_payoff_guarantee},
        {"9. qualitative strategy: exact gain bound and finite reach, 4 adversaries x 10 seeds",
         criterion_qualitative_strategy},
        {"10. ETR export: substitute-and-check residual < 1e-9, all inequalities hold",
         criterion_etr_export},
        {"11. monotonicity: mp value in p (1e-8); curve shape at r=0.75 and r=0.5 (1e-8)",
         criterion_monotonicity_suite},
    };

    int failures = 0;
    for (const auto& crit : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = crit.body();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %s (%.2fs)%s%s\n", c.ok ? "PASS" : "FAIL", crit.label, secs,
                    c.ok ? "" : " -- ", c.ok ? "" : c.detail.c_str());
        std::fflush(stdout);
        if (!c.ok) ++failures;
    }
    if (failures == 0)
        std::printf("all %zu acceptance criteria passed\n", criteria.size());
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
