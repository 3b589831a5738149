#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bgg/errors.hpp"
#include "bgg/mpvalue.hpp"
#include "bgg/rtb.hpp"
#include "oracles.hpp"

using namespace bgg;

TEST_CASE("bias map endpoint identities are exact") {
    for (int i = 1; i <= 99; ++i) {
        double r = i / 100.0;
        CHECK(bias(Rat(1), r) == 0.5);
        CHECK(bias(Rat(0), r) == r);
    }
    CHECK(bias_exact(Rat(1, 5), Rat(3, 4)) == Rat(2, 3));
    CHECK(std::fabs(bias(Rat(1, 5), 0.75) - 2.0 / 3.0) <= 1e-15);
    CHECK_THROWS_AS(bias(Rat(1, 2), 0.0), ContractError);
    CHECK_THROWS_AS(bias(Rat(1, 2), 1.0), ContractError);
    CHECK_THROWS_AS(bias(Rat(3, 2), 0.5), ContractError);
}

TEST_CASE("bias is monotone in r and antitone in tau above one half") {
    for (int ti = 0; ti < 4; ++ti)
        for (int ri = 1; ri < 9; ++ri) {
            Rat tau(ti, 4), tau2(ti + 1, 4), r(ri, 10), r2(ri + 1, 10);
            CHECK(bias_exact(tau, r) <= bias_exact(tau, r2));
            if (r > Rat(1, 2)) CHECK(bias_exact(tau2, r) <= bias_exact(tau, r));
            if (r < Rat(1, 2)) CHECK(bias_exact(tau2, r) >= bias_exact(tau, r));
        }
    // F(tau, 1/2) = 1/2 for every tau
    for (int ti = 0; ti <= 8; ++ti) CHECK(bias_exact(Rat(ti, 8), Rat(1, 2)) == Rat(1, 2));
}

TEST_CASE("two-vertex taxman value follows 2F - 1") {
    GameGraph g = oracles::two_vertex_game();
    for (int ti = 0; ti <= 4; ++ti)
        for (int ri = 1; ri <= 9; ++ri) {
            Rat tau(ti, 4);
            double r = ri / 10.0;
            double expect = 2 * bias(tau, r) - 1;
            CHECK(mp_value_taxman(g, tau, r, 1e-10) == doctest::Approx(expect).epsilon(1e-8));
        }
}

TEST_CASE("richman value is ratio independent, weight shifts are affine") {
    GameGraph g = oracles::two_vertex_game();
    double v1 = mp_value_taxman(g, Rat(1), 0.15, 1e-10);
    double v2 = mp_value_taxman(g, Rat(1), 0.85, 1e-10);
    CHECK(v1 == doctest::Approx(v2).epsilon(1e-10));

    GameGraph shifted = g;
    for (auto& w : shifted.weight) w += Rat(5, 2);
    CHECK(mp_value_taxman(shifted, Rat(1, 3), 0.6, 1e-10) ==
          doctest::Approx(mp_value_taxman(g, Rat(1, 3), 0.6, 1e-10) + 2.5).epsilon(1e-9));
}

TEST_CASE("value curve endpoints, shape, and CSV") {
    GameGraph g = oracles::two_vertex_game();
    std::vector<Rat> grid;
    for (int i = 0; i <= 10; ++i) grid.emplace_back(i, 10);

    auto curve_75 = value_curve(g, 0.75, grid, 1e-10);
    CHECK(curve_75.front().value ==
          doctest::Approx(mp_value_taxman(g, Rat(0), 0.75, 1e-10)).epsilon(1e-12));
    CHECK(curve_75.back().value ==
          doctest::Approx(mp_value_taxman(g, Rat(1), 0.75, 1e-10)).epsilon(1e-12));
    for (std::size_t i = 1; i < curve_75.size(); ++i)
        CHECK(curve_75[i].value <= curve_75[i - 1].value + 1e-8); // nonincreasing for r > 1/2

    auto curve_half = value_curve(g, 0.5, grid, 1e-10);
    for (const auto& pt : curve_half) CHECK(std::fabs(pt.value - curve_half[0].value) <= 1e-8);

    std::string csv = curve_csv(curve_75);
    CHECK(csv.rfind("tau,value\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 12); // header + 11 rows

    CHECK_THROWS_AS(value_curve(g, 0.75, {}, 1e-10), ContractError);
    CHECK_THROWS_AS(value_curve(g, 0.75, {Rat(1), Rat(0)}, 1e-10), ContractError);
}

TEST_CASE("threshold_ratio_scc on the oracle game is one half") {
    GameGraph g = oracles::two_vertex_game();
    for (Rat tau : {Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(9, 10)}) {
        SccThreshold st = threshold_ratio_scc(g, tau, 1e-10);
        REQUIRE_FALSE(st.degenerate);
        CHECK(st.r == doctest::Approx(0.5).epsilon(1e-8));
        // the returned root zeroes the value
        CHECK(std::fabs(mp_value_taxman(g, tau, st.r, 1e-10)) <= 1e-6);
    }
}

TEST_CASE("threshold_ratio_scc saturates on one-sided games") {
    GameGraph pos = build_game({{"a", Rat(2), std::nullopt}, {"b", Rat(1), std::nullopt}},
                               {{"a", "b"}, {"b", "a"}});
    CHECK(threshold_ratio_scc(pos, Rat(1, 2), 1e-10).r == 0.0);
    GameGraph neg = negate_weights(pos);
    CHECK(threshold_ratio_scc(neg, Rat(1, 2), 1e-10).r == 1.0);
}

TEST_CASE("threshold_ratio_scc degenerates at Richman") {
    GameGraph g = oracles::two_vertex_game();
    SccThreshold st = threshold_ratio_scc(g, Rat(1), 1e-10);
    CHECK(st.degenerate);
    CHECK(st.sign == 0); // the two-vertex game has Richman value 0

    GameGraph pos = build_game({{"a", Rat(1), std::nullopt}}, {{"a", "a"}});
    SccThreshold stp = threshold_ratio_scc(pos, Rat(1), 1e-10);
    CHECK(stp.degenerate);
    CHECK(stp.sign == 1);
}

TEST_CASE("general mp thresholds collapse to the scc solve on strongly connected input") {
    GameGraph g = oracles::two_vertex_game();
    MpThresholdResult res = solve_general_mp_thresholds(g, Rat(1, 2), 1e-10);
    REQUIRE(res.bscc_thresholds.size() == 1);
    for (int v = 0; v < g.n(); ++v) CHECK(res.map.th[v] == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("general mp thresholds on a transient fork") {
    // u forks into an all-positive and an all-negative BSCC: r1 = 0, r2 = 1,
    // so at the Richman-substituted update Th(u) = 1/2
    GameGraph g = build_game({{"u", Rat(0), std::nullopt},
                              {"pos", Rat(1), std::nullopt},
                              {"neg", Rat(-1), std::nullopt}},
                             {{"u", "pos"}, {"u", "neg"}, {"pos", "pos"}, {"neg", "neg"}});
    MpThresholdResult res = solve_general_mp_thresholds(g, Rat(1), 1e-12);
    CHECK(res.degenerate);
    CHECK(res.map.th[g.require_vertex("pos")] == 0.0);
    CHECK(res.map.th[g.require_vertex("neg")] == 1.0);
    CHECK(res.map.th[g.require_vertex("u")] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(res.map.objective == Objective::general_mp);

    // forced path: a transient vertex with a single route inherits the BSCC threshold
    GameGraph chain = build_game({{"w", Rat(0), std::nullopt},
                                  {"x", Rat(1), std::nullopt},
                                  {"y", Rat(-2), std::nullopt}},
                                 {{"w", "x"}, {"x", "y"}, {"y", "x"}});
    MpThresholdResult res2 = solve_general_mp_thresholds(chain, Rat(1, 3), 1e-10);
    REQUIRE(res2.bscc_thresholds.size() == 1);
    CHECK(res2.map.th[chain.require_vertex("w")] ==
          doctest::Approx(res2.bscc_thresholds[0].r).epsilon(1e-8));

    auto j = res2.to_json(chain);
    CHECK(j["objective"] == "general-mp");
    CHECK(j["bsccs"].size() == 1);
}

TEST_CASE("bisection root zeroes the value on random strongly connected games") {
    std::mt19937_64 rng(8080);
    for (int trial = 0; trial < 8; ++trial) {
        GameGraph g = oracles::random_scc_game(rng, 4 + static_cast<int>(rng() % 3));
        Rat tau(static_cast<long>(rng() % 4), 4);
        if (tau == 1) tau = Rat(1, 2);
        SccThreshold st = threshold_ratio_scc(g, tau, 1e-10);
        if (st.r > 0 && st.r < 1 && !st.degenerate)
            CHECK(std::fabs(mp_value_taxman(g, tau, st.r, 1e-10)) <= 1e-7);
    }
}
