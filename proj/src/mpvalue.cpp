#include "bgg/mpvalue.hpp"

#include <cmath>
#include <sstream>

#include "bgg/errors.hpp"
#include "bgg/rtb.hpp"
#include "bgg/scc.hpp"

namespace bgg {

using nlohmann::json;

Rat bias_exact(const Rat& tau, const Rat& ratio) {
    if (tau < 0 || tau > 1) throw ContractError("taxman parameter must lie in [0,1]");
    if (ratio < 0 || ratio > 1) throw ContractError("ratio must lie in [0,1]");
    return (ratio + tau * (Rat(1) - ratio)) / (Rat(1) + tau);
}

double bias(const Rat& tau, double ratio) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw ContractError("ratio must lie in (0,1)");
    return rat_to_double(bias_exact(tau, rat_of_double(ratio)));
}

double mp_value_taxman(const GameGraph& g, const Rat& tau, double ratio, double tol) {
    return solve_mp(g, bias(tau, ratio), tol).mp_value;
}

std::vector<CurvePoint> value_curve(const GameGraph& g, double ratio, const std::vector<Rat>& tau_grid,
                                    double tol) {
    if (tau_grid.empty()) throw ContractError("tau grid must be nonempty");
    for (std::size_t i = 1; i < tau_grid.size(); ++i)
        if (tau_grid[i] < tau_grid[i - 1]) throw ContractError("tau grid must be sorted");
    std::vector<CurvePoint> out;
    out.reserve(tau_grid.size());
    for (const Rat& tau : tau_grid) out.push_back({tau, mp_value_taxman(g, tau, ratio, tol)});
    return out;
}

std::string curve_csv(const std::vector<CurvePoint>& curve) {
    std::ostringstream os;
    os << "tau,value\n";
    for (const auto& pt : curve)
        os << rat_to_decimal(pt.tau, 12) << "," << double_to_string(pt.value, 12) << "\n";
    return os.str();
}

SccThreshold threshold_ratio_scc(const GameGraph& g, const Rat& tau, double tol) {
    if (tau < 0 || tau > 1) throw ContractError("taxman parameter must lie in [0,1]");
    if (!(tol > 0)) throw ContractError("tolerance must be positive");
    if (!strongly_connected(g)) throw ContractError("threshold_ratio_scc needs a strongly connected game");

    auto value_at = [&](const Rat& r) {
        return solve_mp(g, rat_to_double(bias_exact(tau, r)), tol).mp_value;
    };

    if (tau == 1) {
        SccThreshold out;
        out.degenerate = true;
        double v = value_at(Rat(1, 2)); // ratio-independent
        out.sign = v > tol ? 1 : v < -tol ? -1 : 0;
        out.r = v > 0 ? 0.0 : 1.0;
        return out;
    }

    // endpoint probes at the closed-interval limits F(tau,0), F(tau,1)
    double at_zero = value_at(Rat(0));
    if (at_zero > 0) return {false, 0.0, 0};
    double at_one = value_at(Rat(1));
    if (at_one < 0) return {false, 1.0, 0};

    Rat lo(0), hi(1);
    for (int it = 0; it < 80 && hi - lo > Rat(1, Int("1000000000000")); ++it) {
        Rat mid = (lo + hi) / 2;
        if (value_at(mid) > 0)
            hi = mid;
        else
            lo = mid;
    }
    return {false, rat_to_double((lo + hi) / 2), 0};
}

MpThresholdResult solve_general_mp_thresholds(const GameGraph& g, const Rat& tau, double tol) {
    SccDecomposition d = scc_decompose(g);
    MpThresholdResult out;
    out.tau = tau;
    out.degenerate = (tau == 1);

    std::vector<std::optional<double>> pinned(static_cast<std::size_t>(g.n()));
    for (std::size_t c = 0; c < d.size(); ++c) {
        if (!d.is_bottom[c]) continue;
        GameGraph sub = induced_subgame(g, d.components[c]);
        SccThreshold st = threshold_ratio_scc(sub, tau, tol);
        double ri = st.degenerate ? (st.sign > 0 ? 0.0 : st.sign < 0 ? 1.0 : 0.5) : st.r;
        for (int v : d.components[c]) pinned[static_cast<std::size_t>(v)] = ri;
        out.bscc_vertices.push_back(d.components[c]);
        out.bscc_thresholds.push_back(st);
    }

    out.map.objective = Objective::general_mp;
    out.map.tau = tau;
    std::tie(out.map.th, out.map.residual) =
        solve_threshold_fixed_point(g, tau, pinned, tol, 1000000);
    return out;
}

json MpThresholdResult::to_json(const GameGraph& g) const {
    json bsccs = json::array();
    for (std::size_t i = 0; i < bscc_vertices.size(); ++i) {
        json names = json::array();
        for (int v : bscc_vertices[i]) names.push_back(g.ids[static_cast<std::size_t>(v)]);
        json entry = {{"vertices", names}};
        if (bscc_thresholds[i].degenerate) {
            entry["degenerate"] = true;
            entry["value_sign"] = bscc_thresholds[i].sign;
        }
        entry["r"] = round_sig(bscc_thresholds[i].r, 12);
        bsccs.push_back(entry);
    }
    json j = map.to_json(g);
    j["degenerate"] = degenerate;
    j["bsccs"] = bsccs;
    return j;
}

} // namespace bgg
