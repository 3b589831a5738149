#include "bgg/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bgg/errors.hpp"
#include "bgg/mpvalue.hpp"
#include "bgg/rtb.hpp"
#include "bgg/scc.hpp"

namespace bgg {

using nlohmann::json;

Rat min_K_exact(const Rat& tau, const Rat& ratio) {
    if (tau < 0 || tau > 1) throw ContractError("taxman parameter must lie in [0,1]");
    if (!(ratio > 0 && ratio < 1)) throw ContractError("ratio must lie in (0,1)");
    Rat rr = ratio * ratio;
    Rat cross = ratio * (Rat(1) - ratio);
    Rat one_minus_sq = (Rat(1) - ratio) * (Rat(1) - ratio);
    return (tau * rr + cross) / (tau * one_minus_sq + cross);
}

double min_K(const Rat& tau, double ratio) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw ContractError("ratio must lie in (0,1)");
    return rat_to_double(min_K_exact(tau, rat_of_double(ratio)));
}

FitResult fit_beta_gamma(const std::vector<double>& strengths, const Rat& tau, double ratio,
                         double K) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw ContractError("ratio must lie in (0,1)");
    std::vector<double> pos;
    for (double s : strengths) {
        if (s < 0) throw ContractError("strengths must be non-negative");
        if (s > 0) pos.push_back(s);
    }
    if (pos.empty()) return {0.5, 0.5, true};
    if (!(K > min_K(tau, ratio))) throw ContractError("K must exceed the normalization bound min_K");

    const double r = ratio;
    const double a = rat_to_double(tau + (Rat(1) - tau) * rat_of_double(r)); // tau + (1-tau) r
    const double b = 1.0 - rat_to_double((Rat(1) - tau) * rat_of_double(r)); // 1 - (1-tau) r
    std::sort(pos.begin(), pos.end());
    const double sn = pos.back();

    auto lower = [&](double beta, double s) { return std::pow(1.0 + beta * r * s * a, -1.0 / (r * s)); };
    auto upper = [&](double beta, double s) {
        double base = 1.0 - beta * r * s * b;
        if (!(base > 0)) return -1.0; // infeasible at this beta
        return std::pow(base, 1.0 / (K * (1.0 - r) * s));
    };
    auto feasible = [&](double beta) {
        double lo = 0, hi = 2;
        for (double s : pos) { // binding pair is (sn, s1); checking all keeps it honest
            lo = std::max(lo, lower(beta, s));
            double u = upper(beta, s);
            if (u < 0) return std::pair<double, double>{1.0, 0.0};
            hi = std::min(hi, u);
        }
        return std::pair<double, double>{lo, hi};
    };

    double beta = 1.0 / (2.0 * r * sn * b);
    std::pair<double, double> interval;
    while (true) {
        interval = feasible(beta);
        if (beta < 1.0 && interval.first <= interval.second) break;
        beta /= 2;
        if (beta < 1e-300)
            throw NumericalError("no feasible beta found for the normalization scheme");
    }
    double gamma = std::sqrt(interval.first * interval.second);
    if (!(beta > 0 && beta < 1 && gamma > 0 && gamma < 1))
        throw NumericalError("normalization constants left (0,1)");
    return {beta, gamma, false};
}

double NormalizationScheme::r_at(double x) const {
    double gx = std::pow(gamma, x - 1.0);
    return gx + (1.0 - gx) * ratio;
}

double NormalizationScheme::beta_at(double x) const { return beta * std::pow(gamma, x - 1.0); }

double NormalizationScheme::bid_fraction(double x, double s) const {
    return ratio * (1.0 - ratio) * beta_at(x) * s;
}

double initial_position(const NormalizationScheme& scheme, double actual_ratio) {
    if (scheme.trivial) return 1.0;
    if (!(actual_ratio <= 1.0)) throw ContractError("ratio cannot exceed 1");
    if (!(actual_ratio > scheme.ratio))
        throw InfeasibleError("initial ratio " + double_to_string(actual_ratio, 6) +
                              " does not exceed the strategy's target ratio " +
                              double_to_string(scheme.ratio, 6));
    double x0 = 1.0 + std::log((actual_ratio - scheme.ratio) / (1.0 - scheme.ratio)) /
                          std::log(scheme.gamma);
    return std::max(1.0, x0);
}

namespace {

std::vector<double> rounded_strengths(const std::vector<double>& raw) {
    std::vector<double> out;
    out.reserve(raw.size());
    for (double s : raw) out.push_back(rat_to_double(snap_decimal(rat_of_double(s), 12)));
    return out;
}

std::vector<double> distinct_sorted(const std::vector<double>& values) {
    std::set<double> set(values.begin(), values.end());
    return {set.begin(), set.end()};
}

NormalizationScheme make_scheme(const Rat& tau, double ratio, double K,
                                const std::vector<double>& strength_set) {
    NormalizationScheme scheme;
    scheme.tau = tau;
    scheme.ratio = ratio;
    scheme.K = K;
    scheme.strengths = strength_set;
    FitResult fit = fit_beta_gamma(strength_set, tau, ratio, K);
    scheme.beta = fit.beta;
    scheme.gamma = fit.gamma;
    scheme.trivial = fit.trivial;
    return scheme;
}

} // namespace

MaxMpStrategy synth_max_mp_strategy(const GameGraph& g, const Rat& tau, double ratio, double epsilon,
                                    double tol) {
    if (!(epsilon > 0)) throw ContractError("epsilon must be positive");
    if (!(ratio > 0.0 && ratio < 1.0)) throw ContractError("ratio must lie in (0,1)");
    if (!strongly_connected(g))
        throw ContractError("mean-payoff synthesis needs a strongly connected game");

    const double value_bias = bias(tau, ratio);
    const double c = solve_mp(g, value_bias, tol).mp_value;

    // Pick K above the normalization bound, close enough that the value drop at the
    // induced bias p = r/(r+(1-r)K) stays within epsilon of c.
    const double k_min = min_K(tau, ratio);
    double delta = 1.0;
    double K = 0, p = 0;
    RtbSolution sol;
    while (true) {
        K = k_min * (1.0 + delta);
        p = ratio / (ratio + (1.0 - ratio) * K);
        sol = solve_mp(g, p, tol);
        if (sol.mp_value - c > -epsilon) break;
        delta /= 2;
        if (delta < 1e-14)
            throw NumericalError("value search exhausted: no K above the bound keeps the value "
                                 "within epsilon (continuity probe failure)");
    }

    MaxMpStrategy strat;
    strat.kind = MaxMpStrategy::Kind::max_mp;
    strat.move_max = sol.move_max;
    strat.strength = rounded_strengths(sol.strength);
    strat.scheme = make_scheme(tau, ratio, K, distinct_sorted(strat.strength));
    strat.p = p;
    strat.nu = ratio;
    strat.mu = K * (1.0 - ratio);
    return strat;
}

MaxMpStrategy synth_min_mp_strategy(const GameGraph& g, const Rat& tau, double ratio_min,
                                    double epsilon, double tol) {
    MaxMpStrategy strat = synth_max_mp_strategy(negate_weights(g), tau, ratio_min, epsilon, tol);
    strat.kind = MaxMpStrategy::Kind::min_mp;
    return strat;
}

json MaxMpStrategy::to_json(const GameGraph& g) const {
    json moves = json::object(), strengths = json::object();
    for (int v = 0; v < g.n(); ++v) {
        moves[g.ids[static_cast<std::size_t>(v)]] =
            g.ids[static_cast<std::size_t>(move_max[static_cast<std::size_t>(v)])];
        strengths[g.ids[static_cast<std::size_t>(v)]] = strength[static_cast<std::size_t>(v)];
    }
    json j = {{"kind", kind == Kind::max_mp ? "max-mp" : "min-mp"},
              {"tau", rat_to_fraction(scheme.tau)},
              {"ratio", scheme.ratio},
              {"K", scheme.K},
              {"beta", scheme.beta},
              {"gamma", scheme.gamma},
              {"p", p},
              {"move_map", moves},
              {"strengths", strengths}};
    if (x0)
        j["x0"] = *x0;
    else
        j["x0"] = nullptr;
    return j;
}

MaxMpStrategy MaxMpStrategy::from_json(const GameGraph& g, const json& j) {
    MaxMpStrategy strat;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "max-mp")
        strat.kind = Kind::max_mp;
    else if (kind == "min-mp")
        strat.kind = Kind::min_mp;
    else
        throw ValidationError("unknown mean-payoff strategy kind '" + kind + "'");

    NormalizationScheme scheme;
    scheme.tau = parse_rational(j.at("tau").get<std::string>());
    scheme.ratio = j.at("ratio").get<double>();
    scheme.K = j.at("K").get<double>();
    scheme.beta = j.at("beta").get<double>();
    scheme.gamma = j.at("gamma").get<double>();
    if (!(scheme.beta > 0 && scheme.beta < 1) || !(scheme.gamma > 0 && scheme.gamma < 1))
        throw ValidationError("strategy file: beta and gamma must lie in (0,1)");

    strat.p = j.at("p").get<double>();
    strat.move_max.resize(static_cast<std::size_t>(g.n()));
    strat.strength.resize(static_cast<std::size_t>(g.n()));
    const json& moves = j.at("move_map");
    const json& strengths = j.at("strengths");
    bool all_zero = true;
    for (int v = 0; v < g.n(); ++v) {
        const std::string& id = g.ids[static_cast<std::size_t>(v)];
        if (!moves.contains(id))
            throw ValidationError("strategy file: move_map is missing vertex '" + id + "'");
        int to = g.require_vertex(moves[id].get<std::string>());
        if (!g.has_edge(v, to))
            throw ValidationError("strategy file: move from '" + id + "' is not along an edge");
        strat.move_max[static_cast<std::size_t>(v)] = to;
        if (!strengths.contains(id))
            throw ValidationError("strategy file: strengths are missing vertex '" + id + "'");
        double s = strengths[id].get<double>();
        if (s < 0) throw ValidationError("strategy file: negative strength at '" + id + "'");
        strat.strength[static_cast<std::size_t>(v)] = s;
        all_zero = all_zero && s == 0;
    }
    scheme.strengths = distinct_sorted(strat.strength);
    scheme.trivial = all_zero;
    strat.scheme = scheme;
    strat.nu = scheme.ratio;
    strat.mu = scheme.K * (1.0 - scheme.ratio);
    if (j.contains("x0") && !j["x0"].is_null()) strat.x0 = j["x0"].get<double>();
    return strat;
}

Rat QualReachStrategy::gain_bound(const Rat& cycle_start_ratio) const {
    return tau * m * Rat(r_geo) /
           ((Rat(1) - cycle_start_ratio) * Rat(r_geo - 1));
}

QualReachStrategy synth_qual_reach_strategy(const GameGraph& g, int target, const Rat& tau,
                                            const Rat& epsilon) {
    if (target < 0 || target >= g.n()) throw ContractError("target vertex out of range");
    if (tau < 0 || tau > 1) throw ContractError("taxman parameter must lie in [0,1]");
    if (tau == 0)
        throw UnsupportedError(
            "qualitative reach synthesis needs tau > 0: at tau = 0 (poorman) a lost bidding "
            "returns nothing to the loser and the geometric-schedule argument does not apply");
    if (!(epsilon > 0 && epsilon < 1)) throw ContractError("epsilon must lie in (0,1)");

    std::vector<int> dist = bfs_dist_to(g, {target});
    for (int v = 0; v < g.n(); ++v)
        if (dist[static_cast<std::size_t>(v)] < 0)
            throw ContractError("vertex '" + g.ids[static_cast<std::size_t>(v)] +
                                "' has no path to the target");

    QualReachStrategy strat;
    strat.tau = tau;
    strat.epsilon = epsilon;
    strat.target = target;
    strat.n = g.n() - 1;

    // smallest integer >= 3 with tau > 2/(r_geo - 1)
    Int floor_two_over_tau = numerator(Rat(2) / tau) / denominator(Rat(2) / tau);
    long r_geo = std::max<long>(3, floor_two_over_tau.convert_to<long>() + 2);
    if (!(tau > Rat(2, r_geo - 1))) throw InternalError("geometric base selection is off");
    strat.r_geo = r_geo;

    Rat power(1);
    for (int i = 0; i < strat.n; ++i) power *= r_geo;
    strat.m = epsilon / (Rat(2) * power);

    strat.move_toward.resize(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) {
        if (v == target) {
            strat.move_toward[static_cast<std::size_t>(v)] = g.out(v).front();
            continue;
        }
        int best = -1;
        for (int u : g.out(v))
            if (dist[static_cast<std::size_t>(u)] == dist[static_cast<std::size_t>(v)] - 1) {
                best = u;
                break; // neighbors sorted: smallest index wins
            }
        if (best < 0) throw InternalError("BFS distances are inconsistent");
        strat.move_toward[static_cast<std::size_t>(v)] = best;
    }
    return strat;
}

json QualReachStrategy::to_json(const GameGraph& g) const {
    json moves = json::object();
    for (int v = 0; v < g.n(); ++v)
        moves[g.ids[static_cast<std::size_t>(v)]] =
            g.ids[static_cast<std::size_t>(move_toward[static_cast<std::size_t>(v)])];
    return {{"kind", "reach"},
            {"tau", rat_to_fraction(tau)},
            {"epsilon", rat_to_fraction(epsilon)},
            {"r_geo", r_geo},
            {"m", rat_to_fraction(m)},
            {"move_map", moves},
            {"target", g.ids[static_cast<std::size_t>(target)]}};
}

QualReachStrategy QualReachStrategy::from_json(const GameGraph& g, const json& j) {
    QualReachStrategy strat;
    if (j.at("kind").get<std::string>() != "reach")
        throw ValidationError("not a qualitative reach strategy file");
    strat.tau = parse_rational(j.at("tau").get<std::string>());
    strat.epsilon = parse_rational(j.at("epsilon").get<std::string>());
    strat.m = parse_rational(j.at("m").get<std::string>());
    strat.r_geo = j.at("r_geo").get<long>();
    strat.n = g.n() - 1;
    strat.target = g.require_vertex(j.at("target").get<std::string>());
    if (strat.r_geo < 3 || !(strat.tau > Rat(2, strat.r_geo - 1)))
        throw ValidationError("strategy file: geometric base violates tau > 2/(r_geo - 1)");
    if (!(strat.m > 0) || !(strat.epsilon > 0 && strat.epsilon < 1))
        throw ValidationError("strategy file: m and epsilon must be positive (epsilon < 1)");
    const json& moves = j.at("move_map");
    strat.move_toward.resize(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) {
        const std::string& id = g.ids[static_cast<std::size_t>(v)];
        if (!moves.contains(id))
            throw ValidationError("strategy file: move_map is missing vertex '" + id + "'");
        int to = g.require_vertex(moves[id].get<std::string>());
        if (!g.has_edge(v, to))
            throw ValidationError("strategy file: move from '" + id + "' is not along an edge");
        strat.move_toward[static_cast<std::size_t>(v)] = to;
    }
    return strat;
}

} // namespace bgg
