#include "bgg/thresholds.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "bgg/errors.hpp"
#include "bgg/scc.hpp"

namespace bgg {

using nlohmann::json;

std::string objective_name(Objective o) {
    switch (o) {
        case Objective::reachability: return "reachability";
        case Objective::parity: return "parity";
        case Objective::general_mp: return "general-mp";
    }
    return "?";
}

json ThresholdMap::to_json(const GameGraph& g) const {
    json th_j = json::object();
    for (int v = 0; v < g.n(); ++v)
        th_j[g.ids[static_cast<std::size_t>(v)]] =
            double_to_string(th[static_cast<std::size_t>(v)], 12);
    return {{"tau", rat_to_fraction(tau)},
            {"objective", objective_name(objective)},
            {"th", th_j},
            {"residual", residual}};
}

Rat taxman_update_flipped(const Rat& th_minus, const Rat& th_plus, const Rat& tau_flipped) {
    Rat num = th_minus + th_plus - tau_flipped * th_minus;
    Rat den = Rat(2) - tau_flipped * (Rat(1) + th_minus - th_plus);
    return num / den;
}

Rat local_taxman_update_exact(const Rat& th_minus, const Rat& th_plus, const Rat& tau) {
    if (th_minus < 0 || th_minus > th_plus || th_plus > 1)
        throw ContractError("local update needs 0 <= th- <= th+ <= 1");
    if (tau < 0 || tau > 1) throw ContractError("taxman parameter must lie in [0,1]");
    return taxman_update_flipped(th_minus, th_plus, Rat(1) - tau);
}

double local_taxman_update(double th_minus, double th_plus, const Rat& tau) {
    return rat_to_double(
        local_taxman_update_exact(rat_of_double(th_minus), rat_of_double(th_plus), tau));
}

std::pair<std::vector<double>, double> solve_threshold_fixed_point(
    const GameGraph& g, const Rat& tau, const std::vector<std::optional<double>>& pinned, double tol,
    long max_iters) {
    if (tau < 0 || tau > 1) throw ContractError("taxman parameter must lie in [0,1]");
    if (!(tol > 0)) throw ContractError("tolerance must be positive");
    const std::size_t n = static_cast<std::size_t>(g.n());
    const double tf = rat_to_double(Rat(1) - tau); // flipped parameter, as a solver constant

    auto update = [tf](double lo, double hi) {
        return (lo + hi - tf * lo) / (2.0 - tf * (1.0 + lo - hi));
    };

    std::vector<double> th(n, 1.0), next(n, 1.0);
    for (std::size_t v = 0; v < n; ++v)
        if (pinned[v]) th[v] = *pinned[v];

    auto sweep = [&](const std::vector<double>& cur, std::vector<double>& out) {
        double diff = 0;
        for (std::size_t v = 0; v < n; ++v) {
            if (pinned[v]) {
                out[v] = cur[v];
                continue;
            }
            double lo = 1.0, hi = 0.0;
            for (int u : g.adj[v]) {
                lo = std::min(lo, cur[static_cast<std::size_t>(u)]);
                hi = std::max(hi, cur[static_cast<std::size_t>(u)]);
            }
            out[v] = update(lo, hi);
            diff = std::max(diff, std::fabs(out[v] - cur[v]));
        }
        return diff;
    };

    double diff = 0;
    bool converged = false;
    for (long it = 0; it < max_iters; ++it) {
        diff = sweep(th, next);
        th.swap(next);
        if (diff < tol) {
            converged = true;
            break;
        }
    }
    double residual = sweep(th, next);
    if (!converged)
        throw ConvergenceError("threshold fixed point did not converge within " +
                                   std::to_string(max_iters) + " sweeps",
                               residual);
    return {th, residual};
}

ThresholdMap solve_reachability_thresholds(const GameGraph& g, const Rat& tau, double tol,
                                           long max_iters) {
    if (g.targets.empty()) throw ContractError("reachability thresholds need a nonempty target set");
    std::vector<std::optional<double>> pinned(static_cast<std::size_t>(g.n()));
    for (int t : g.targets) pinned[static_cast<std::size_t>(t)] = 0.0;
    std::vector<int> dist = bfs_dist_to(g, g.targets);
    for (int v = 0; v < g.n(); ++v)
        if (dist[static_cast<std::size_t>(v)] < 0) pinned[static_cast<std::size_t>(v)] = 1.0;

    ThresholdMap out;
    out.objective = Objective::reachability;
    out.tau = tau;
    std::tie(out.th, out.residual) = solve_threshold_fixed_point(g, tau, pinned, tol, max_iters);
    return out;
}

ThresholdMap solve_parity_thresholds(const GameGraph& g, const Rat& tau, double tol,
                                     long max_iters) {
    if (!g.parity_complete())
        throw ContractError("parity thresholds need a parity index on every vertex");
    SccDecomposition d = scc_decompose(g);
    std::vector<std::optional<double>> pinned(static_cast<std::size_t>(g.n()));
    for (std::size_t c = 0; c < d.size(); ++c) {
        if (!d.is_bottom[c]) continue;
        int top = 0;
        for (int v : d.components[c]) top = std::max(top, g.parity[static_cast<std::size_t>(v)]);
        double boundary = (top % 2 == 1) ? 0.0 : 1.0; // odd max index wins for player 1
        for (int v : d.components[c]) pinned[static_cast<std::size_t>(v)] = boundary;
    }

    ThresholdMap out;
    out.objective = Objective::parity;
    out.tau = tau;
    std::tie(out.th, out.residual) = solve_threshold_fixed_point(g, tau, pinned, tol, max_iters);
    return out;
}

MoveSelection selection_from_thresholds(const GameGraph& g, const std::vector<double>& th) {
    MoveSelection sel;
    sel.plus.resize(static_cast<std::size_t>(g.n()));
    sel.minus.resize(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) {
        int lo = g.out(v).front(), hi = lo;
        for (int u : g.out(v)) {
            if (th[static_cast<std::size_t>(u)] < th[static_cast<std::size_t>(lo)]) lo = u;
            if (th[static_cast<std::size_t>(u)] > th[static_cast<std::size_t>(hi)]) hi = u;
        }
        sel.minus[static_cast<std::size_t>(v)] = lo;
        sel.plus[static_cast<std::size_t>(v)] = hi;
    }
    return sel;
}

namespace {

bool plain_symbol(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

std::string smt_rational(const Rat& q) {
    if (q < 0) return "(- " + smt_rational(Rat(-q)) + ")";
    Int num = numerator(q), den = denominator(q);
    if (den == 1) return num.str();
    return "(/ " + num.str() + " " + den.str() + ")";
}

} // namespace

std::string etr_variable_name(const std::string& vertex_id) {
    std::string name = "x_" + vertex_id;
    if (plain_symbol(name)) return name;
    if (name.find('|') != std::string::npos || name.find('\\') != std::string::npos)
        throw ValidationError("vertex id '" + vertex_id + "' cannot be quoted as an SMT symbol");
    return "|" + name + "|";
}

std::string export_etr_constraints(const GameGraph& g, const Rat& tau, int v0,
                                   const MoveSelection& selection) {
    if (tau < 0 || tau > 1) throw ContractError("taxman parameter must lie in [0,1]");
    if (v0 < 0 || v0 >= g.n()) throw ContractError("query vertex out of range");
    if (g.targets.empty()) throw ContractError("constraint export needs a reachability target set");
    if (selection.plus.size() != static_cast<std::size_t>(g.n()) ||
        selection.minus.size() != static_cast<std::size_t>(g.n()))
        throw ContractError("move selection must cover every vertex");

    std::vector<int> dist = bfs_dist_to(g, g.targets);
    const Rat tf = Rat(1) - tau; // flipped parameter appearing in the equation
    std::ostringstream out;
    out << "(set-logic QF_NRA)\n";
    out << "; threshold-ratio constraint system, taxman parameter tau = " << rat_to_fraction(tau)
        << " (canonical convention)\n";
    for (int v = 0; v < g.n(); ++v)
        out << "(declare-const " << etr_variable_name(g.ids[static_cast<std::size_t>(v)])
            << " Real)\n";
    for (int v = 0; v < g.n(); ++v) {
        const std::string xv = etr_variable_name(g.ids[static_cast<std::size_t>(v)]);
        if (g.is_target(v)) {
            out << "(assert (= " << xv << " 0))\n";
            continue;
        }
        if (dist[static_cast<std::size_t>(v)] < 0) {
            out << "(assert (= " << xv << " 1))\n";
            continue;
        }
        int vm = selection.minus[static_cast<std::size_t>(v)];
        int vp = selection.plus[static_cast<std::size_t>(v)];
        if (!g.has_edge(v, vm) || !g.has_edge(v, vp))
            throw ContractError("selected extreme move is not a neighbor of vertex '" +
                                g.ids[static_cast<std::size_t>(v)] + "'");
        const std::string xm = etr_variable_name(g.ids[static_cast<std::size_t>(vm)]);
        const std::string xp = etr_variable_name(g.ids[static_cast<std::size_t>(vp)]);
        for (int u : g.out(v)) {
            const std::string xu = etr_variable_name(g.ids[static_cast<std::size_t>(u)]);
            out << "(assert (<= " << xm << " " << xu << "))\n";
            out << "(assert (<= " << xu << " " << xp << "))\n";
        }
        // x_v (2 - tf (1 + x_m - x_p)) = x_m + x_p - tf x_m, cleared of division
        out << "(assert (= (* " << xv << " (- 2 (* " << smt_rational(tf) << " (+ 1 (- " << xm << " "
            << xp << "))))) (- (+ " << xm << " " << xp << ") (* " << smt_rational(tf) << " " << xm
            << "))))\n";
    }
    out << "(assert (>= " << etr_variable_name(g.ids[static_cast<std::size_t>(v0)])
        << " (/ 1 2)))\n";
    out << "(check-sat)\n";
    return out.str();
}

} // namespace bgg
