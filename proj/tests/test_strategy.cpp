#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bgg/errors.hpp"
#include "bgg/mpvalue.hpp"
#include "bgg/rtb.hpp"
#include "bgg/strategy.hpp"
#include "oracles.hpp"
#include "scheme_checks.hpp"

using namespace bgg;

TEST_CASE("min_K closed-form anchors") {
    for (double r : {0.1, 0.25, 0.5, 0.75, 0.9}) CHECK(min_K(Rat(0), r) == 1.0);
    for (Rat tau : {Rat(0), Rat(1, 3), Rat(1)}) CHECK(min_K(tau, 0.5) == 1.0);
    CHECK(min_K(Rat(1), 0.75) == 3.0);
    CHECK(min_K_exact(Rat(1), Rat(3, 4)) == Rat(3));
    CHECK_THROWS_AS(min_K(Rat(1, 2), 0.0), ContractError);
    CHECK_THROWS_AS(min_K(Rat(1, 2), 1.0), ContractError);
}

TEST_CASE("min_K matches the bias map identity") {
    // r / (r + (1-r) K_min) = F(tau, r): the bound and the bias map agree
    for (int ti = 0; ti <= 4; ++ti)
        for (int ri = 1; ri <= 9; ++ri) {
            Rat tau(ti, 4), r(ri, 10);
            Rat k = min_K_exact(tau, r);
            CHECK(r / (r + (Rat(1) - r) * k) == bias_exact(tau, r));
        }
}

TEST_CASE("fit_beta_gamma produces certified constants") {
    FitResult fit = fit_beta_gamma({1.0}, Rat(1), 0.5, 1.1);
    REQUIRE_FALSE(fit.trivial);
    CHECK(fit.beta > 0);
    CHECK(fit.beta < 1);
    CHECK(fit.gamma > 0);
    CHECK(fit.gamma < 1);
    // substitute into both closed-form bounds
    double r = 0.5, s = 1.0, K = 1.1;
    double a = 1.0; // tau + (1-tau) r at tau = 1
    double b = 1.0 - 0.0 * r;
    double lo = std::pow(1 + fit.beta * r * s * a, -1.0 / (r * s));
    double hi = std::pow(1 - fit.beta * r * s * b, 1.0 / (K * (1 - r) * s));
    CHECK(fit.gamma >= lo);
    CHECK(fit.gamma <= hi);
}

TEST_CASE("fit handles the zero-strength scheme and rejects bad K") {
    CHECK(fit_beta_gamma({0.0}, Rat(1, 2), 0.6, 5.0).trivial);
    CHECK(fit_beta_gamma({}, Rat(1, 2), 0.6, 5.0).trivial);
    CHECK_THROWS_AS(fit_beta_gamma({1.0}, Rat(1), 0.75, 2.9), ContractError); // min_K = 3
}

TEST_CASE("halving beta restores feasibility of the gamma interval") {
    // Both closed-form bounds rise toward 1 as beta shrinks; the upper bound
    // rises faster (the Taylor coefficients differ exactly when K exceeds the
    // normalization bound), so from an infeasible beta repeated halving reaches a
    // beta whose interval is nonempty. That is the property the fitting loop
    // relies on.
    Rat tau(1, 4);
    double r = 0.6, K = 2.5, s = 0.8;
    double a = rat_to_double(tau) + (1 - rat_to_double(tau)) * r;
    double b = 1 - (1 - rat_to_double(tau)) * r;
    auto lower = [&](double beta) { return std::pow(1 + beta * r * s * a, -1.0 / (r * s)); };
    auto upper = [&](double beta) {
        double base = 1 - beta * r * s * b;
        return base > 0 ? std::pow(base, 1.0 / (K * (1 - r) * s)) : -1.0;
    };
    double beta = 3.7; // upper bound's base 1 - beta r s b is nearly zero here
    CHECK(upper(beta) < lower(beta)); // infeasible start
    int halvings = 0;
    while (beta >= 1.0 || upper(beta) < lower(beta)) {
        double lo1 = lower(beta), hi1 = upper(beta);
        beta /= 2;
        ++halvings;
        CHECK(lower(beta) >= lo1); // both bounds move up toward 1
        if (hi1 > 0) CHECK(upper(beta) >= hi1);
        REQUIRE(halvings < 200);
    }
    CHECK(upper(beta) >= lower(beta));
    CHECK(beta > 0);
    CHECK(beta < 1);
}

TEST_CASE("initial position solves r_x = actual exactly") {
    NormalizationScheme sch;
    sch.gamma = 0.5;
    sch.ratio = 0.5;
    sch.beta = 0.1;
    sch.K = 2;
    sch.tau = Rat(1, 2);
    sch.strengths = {1.0};
    CHECK(initial_position(sch, 1.0) == 1.0);
    CHECK(initial_position(sch, 0.75) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sch.r_at(initial_position(sch, 0.6)) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK_THROWS_AS(initial_position(sch, 0.5), InfeasibleError);
    CHECK_THROWS_AS(initial_position(sch, 0.3), InfeasibleError);

    NormalizationScheme trivial;
    trivial.trivial = true;
    CHECK(initial_position(trivial, 0.4) == 1.0);
}

TEST_CASE("initial position diverges as the ratio approaches the target") {
    NormalizationScheme sch;
    sch.gamma = 0.8;
    sch.ratio = 0.5;
    double prev = 0;
    for (double d : {1e-1, 1e-3, 1e-6, 1e-9}) {
        double x0 = initial_position(sch, 0.5 + d);
        CHECK(x0 > prev);
        prev = x0;
    }
    CHECK(prev > 50);
}

TEST_CASE("synth_max_mp_strategy on the two-vertex game") {
    GameGraph g = oracles::two_vertex_game();
    MaxMpStrategy strat = synth_max_mp_strategy(g, Rat(0), 0.6, 0.1, 1e-10);
    CHECK(strat.kind == MaxMpStrategy::Kind::max_mp);
    // both vertices move to A (the +1 vertex)
    CHECK(strat.move_max[0] == 0);
    CHECK(strat.move_max[1] == 0);
    CHECK(strat.nu == 0.6);
    CHECK(strat.mu == doctest::Approx(strat.scheme.K * 0.4).epsilon(1e-12));
    // K sits above the bound and the induced bias below F
    double kmin = min_K(Rat(0), 0.6);
    CHECK(strat.scheme.K > kmin);
    double f = bias(Rat(0), 0.6);
    CHECK(strat.p < f);
    CHECK(strat.p == doctest::Approx(0.6 / (0.6 + 0.4 * strat.scheme.K)).epsilon(1e-12));
    // the value at the chosen bias stays within epsilon of the value at F
    double c = solve_mp(g, f, 1e-10).mp_value;
    double shifted = solve_mp(g, strat.p, 1e-10).mp_value - c;
    CHECK(shifted > -0.1);
    // scheme certificate
    auto cert = scheme_checks::certify_scheme(strat.scheme);
    CHECK(cert.min_slack() >= -1e-12);
    CHECK(cert.p1 > 0);
    CHECK(cert.p2 > 0);
}

TEST_CASE("synth on a single self-loop is the trivial scheme") {
    GameGraph g = build_game({{"s", Rat(2), std::nullopt}}, {{"s", "s"}});
    MaxMpStrategy strat = synth_max_mp_strategy(g, Rat(1, 2), 0.5, 0.05, 1e-10);
    CHECK(strat.scheme.trivial);
    CHECK(strat.strength[0] == 0.0);
    CHECK(strat.scheme.bid_fraction(1.0, strat.strength[0]) == 0.0);
}

TEST_CASE("bids stay strictly below the entitled ratio across the walk") {
    GameGraph g = oracles::two_vertex_game();
    for (Rat tau : {Rat(0), Rat(1, 2), Rat(1)}) {
        MaxMpStrategy strat = synth_max_mp_strategy(g, tau, 0.55, 0.1, 1e-10);
        for (double x = 1.0; x < 60.0; x += 0.37)
            for (double s : strat.scheme.strengths)
                CHECK(strat.scheme.bid_fraction(x, s) < strat.scheme.r_at(x));
    }
}

TEST_CASE("synth_min_mp_strategy mirrors the game") {
    GameGraph g = oracles::two_vertex_game();
    MaxMpStrategy minstrat = synth_min_mp_strategy(g, Rat(1, 2), 0.5, 0.1, 1e-10);
    CHECK(minstrat.kind == MaxMpStrategy::Kind::min_mp);
    // in the negated game the favorite vertex is B
    CHECK(minstrat.move_max[0] == 1);
    CHECK(minstrat.move_max[1] == 1);
    // negation is an involution on the weights
    GameGraph twice = negate_weights(negate_weights(g));
    for (int v = 0; v < g.n(); ++v) CHECK(twice.weight[v] == g.weight[v]);
    // Min's guarantee equals the negated Max guarantee
    double vneg = solve_mp(negate_weights(g), minstrat.p, 1e-10).mp_value;
    double vorig = solve_mp(g, 1 - minstrat.p, 1e-10).mp_value;
    CHECK(vneg == doctest::Approx(-vorig).epsilon(1e-9));
}

TEST_CASE("mp strategy serialization round-trips") {
    GameGraph g = oracles::two_vertex_game();
    MaxMpStrategy strat = synth_max_mp_strategy(g, Rat(1, 2), 0.55, 0.1, 1e-10);
    auto j = strat.to_json(g);
    CHECK(j["kind"] == "max-mp");
    CHECK(j["x0"].is_null());
    MaxMpStrategy back = MaxMpStrategy::from_json(g, j);
    CHECK(back.scheme.K == strat.scheme.K);
    CHECK(back.scheme.beta == strat.scheme.beta);
    CHECK(back.scheme.gamma == strat.scheme.gamma);
    CHECK(back.scheme.tau == strat.scheme.tau);
    CHECK(back.p == strat.p);
    CHECK(back.move_max == strat.move_max);
    CHECK(back.strength == strat.strength);
    CHECK(back.nu == strat.nu);
    CHECK(back.mu == strat.mu);
    CHECK(back.to_json(g) == j);

    auto broken = j;
    broken["move_map"]["A"] = "missing";
    CHECK_THROWS_AS(MaxMpStrategy::from_json(g, broken), ValidationError);
}

TEST_CASE("qualitative synthesis picks the documented geometric base") {
    GameGraph g = oracles::line_game();
    // line_game's d has no path to t
    CHECK_THROWS_AS(synth_qual_reach_strategy(g, g.require_vertex("t"), Rat(1, 2), Rat(1, 10)),
                    ContractError);

    GameGraph cyc = build_game({{"a", Rat(0), std::nullopt},
                                {"b", Rat(0), std::nullopt},
                                {"t", Rat(0), std::nullopt}},
                               {{"a", "b"}, {"b", "t"}, {"t", "a"}}, {"t"});
    QualReachStrategy strat = synth_qual_reach_strategy(cyc, cyc.require_vertex("t"), Rat(1, 2), Rat(1, 10));
    CHECK(strat.r_geo == 6); // floor(2 / (1/2)) + 2, and 1/2 > 2/5
    CHECK(strat.n == 2);
    CHECK(strat.m == Rat(1, 10) / Rat(72)); // epsilon / (2 r^n)
    // n consecutive bids stay affordable
    Rat sum = strat.m * (Rat(6 * 6) - 1) / Rat(5);
    CHECK(sum < strat.epsilon);
    // moves follow shortest paths
    CHECK(strat.move_toward[cyc.require_vertex("a")] == cyc.require_vertex("b"));
    CHECK(strat.move_toward[cyc.require_vertex("b")] == cyc.require_vertex("t"));

    CHECK_THROWS_AS(synth_qual_reach_strategy(cyc, 0, Rat(0), Rat(1, 10)), UnsupportedError);
    CHECK_THROWS_AS(synth_qual_reach_strategy(cyc, 0, Rat(1, 2), Rat(2)), ContractError);

    // tau = 1: smallest base >= 3 with 1 > 2/(r-1) is 4
    QualReachStrategy richman = synth_qual_reach_strategy(cyc, 2, Rat(1), Rat(1, 100));
    CHECK(richman.r_geo == 4);

    // gain bound is positive and increasing in the cycle-start ratio
    Rat b1 = strat.gain_bound(Rat(1, 10));
    Rat b2 = strat.gain_bound(Rat(1, 2));
    CHECK(b1 > 0);
    CHECK(b2 > b1);
    CHECK(b1 == Rat(1, 2) * strat.m * Rat(6) / (Rat(9, 10) * Rat(5)));
}

TEST_CASE("qualitative strategy serialization round-trips") {
    GameGraph cyc = build_game({{"a", Rat(0), std::nullopt},
                                {"b", Rat(0), std::nullopt},
                                {"t", Rat(0), std::nullopt}},
                               {{"a", "b"}, {"b", "t"}, {"t", "a"}}, {"t"});
    QualReachStrategy strat = synth_qual_reach_strategy(cyc, 2, Rat(2, 3), Rat(1, 20));
    auto j = strat.to_json(cyc);
    QualReachStrategy back = QualReachStrategy::from_json(cyc, j);
    CHECK(back.tau == strat.tau);
    CHECK(back.epsilon == strat.epsilon);
    CHECK(back.m == strat.m);
    CHECK(back.r_geo == strat.r_geo);
    CHECK(back.move_toward == strat.move_toward);
    CHECK(back.to_json(cyc) == j);
}

TEST_CASE("scheme certificates hold across parameters") {
    GameGraph g = oracles::two_vertex_game();
    for (Rat tau : {Rat(0), Rat(1, 4), Rat(3, 4), Rat(1)})
        for (double r : {0.3, 0.5, 0.7}) {
            MaxMpStrategy strat = synth_max_mp_strategy(g, tau, r, 0.15, 1e-10);
            auto cert = scheme_checks::certify_scheme(strat.scheme);
            INFO("tau=", rat_to_fraction(tau), " r=", r);
            CHECK(cert.min_slack() >= -1e-12);
        }
}
