#include "bgg/rtb.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "bgg/errors.hpp"
#include "bgg/scc.hpp"
#include "linalg.hpp"

namespace bgg {

using nlohmann::json;

std::vector<int> RtbGame::successors(int v) const {
    Owner o = owner(v);
    if (o == Owner::nature) throw ContractError("nature vertex has probabilistic moves, not successors");
    std::vector<int> out;
    for (int u : base.out(base_vertex(v))) out.push_back(vertex_of(u, Owner::nature));
    return out;
}

std::vector<std::pair<int, double>> RtbGame::nature_moves(int v) const {
    if (owner(v) != Owner::nature) throw ContractError("not a nature vertex");
    int b = base_vertex(v);
    return {{vertex_of(b, Owner::max_player), p}, {vertex_of(b, Owner::min_player), 1.0 - p}};
}

json RtbGame::to_json() const {
    static const char* suffix[3] = {".1", ".2", ".N"};
    json vertices = json::array();
    for (int v = 0; v < n_vertices(); ++v) {
        int b = base_vertex(v);
        vertices.push_back({{"id", base.ids[static_cast<std::size_t>(b)] + suffix[v % 3]},
                            {"owner", v % 3 == 0 ? "max" : v % 3 == 1 ? "min" : "nature"},
                            {"weight", rat_to_fraction(base.weight[static_cast<std::size_t>(b)])}});
    }
    json edges = json::array();
    for (int v = 0; v < n_vertices(); ++v) {
        if (owner(v) == Owner::nature) continue;
        int b = base_vertex(v);
        for (int u : base.out(b))
            edges.push_back({base.ids[static_cast<std::size_t>(b)] + suffix[v % 3],
                             base.ids[static_cast<std::size_t>(u)] + ".N"});
    }
    json nature = json::array();
    for (int b = 0; b < base.n(); ++b) {
        const std::string& id = base.ids[static_cast<std::size_t>(b)];
        nature.push_back({{"from", id + ".N"}, {"to", id + ".1"}, {"prob", p}});
        nature.push_back({{"from", id + ".N"}, {"to", id + ".2"}, {"prob", 1.0 - p}});
    }
    return {{"p", p}, {"vertices", vertices}, {"edges", edges}, {"nature", nature}};
}

RtbGame build_rtb(const GameGraph& g, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw ContractError("bias p must lie in [0,1]");
    return RtbGame{g, p};
}

std::vector<double> solve_reach_value(const GameGraph& g, double p, const std::vector<int>& targets,
                                      double tol, long max_iters) {
    if (!(p >= 0.0 && p <= 1.0)) throw ContractError("bias p must lie in [0,1]");
    if (targets.empty()) throw ContractError("reachability solve needs a nonempty target set");
    if (!(tol > 0)) throw ContractError("tolerance must be positive");
    const std::size_t n = static_cast<std::size_t>(g.n());
    std::vector<bool> is_target(n, false);
    for (int t : targets) {
        if (t < 0 || t >= g.n()) throw ContractError("target index out of range");
        is_target[static_cast<std::size_t>(t)] = true;
    }
    std::vector<double> v(n, 0.0), next(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i] = is_target[i] ? 1.0 : 0.0;
    double diff = 0;
    for (long it = 0; it < max_iters; ++it) {
        diff = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (is_target[i]) {
                next[i] = 1.0;
                continue;
            }
            double hi = 0.0, lo = 1.0;
            for (int u : g.adj[i]) {
                double val = v[static_cast<std::size_t>(u)];
                hi = std::max(hi, val);
                lo = std::min(lo, val);
            }
            next[i] = p * hi + (1.0 - p) * lo;
            diff = std::max(diff, std::fabs(next[i] - v[i]));
        }
        v.swap(next);
        if (diff < tol) return v;
    }
    throw ConvergenceError("reachability value iteration did not converge within " +
                               std::to_string(max_iters) + " iterations",
                           diff);
}

namespace {

// ---- joint-policy evaluation -------------------------------------------
//
// For a fixed pair of positional strategies the induced chain may have
// several recurrent classes, so the evaluation solves the gain/bias
// (multichain Poisson) equations per strongly connected block instead of
// assuming a unichain. Components are processed against the condensation
// order so downstream values are always available.

template <class T>
struct Eval {
    std::vector<T> gain, bias;
};

template <class T>
struct Succ {
    int u1;
    T p1;
    int u2; // -1 when the whole mass sits on u1
    T p2;
};

template <class T>
std::vector<Succ<T>> policy_successors(const std::vector<int>& up, const std::vector<int>& dn,
                                       const T& p) {
    const std::size_t n = up.size();
    std::vector<Succ<T>> s(n);
    for (std::size_t v = 0; v < n; ++v) {
        if (p == T(1) || up[v] == dn[v])
            s[v] = {up[v], T(1), -1, T(0)};
        else if (p == T(0))
            s[v] = {dn[v], T(1), -1, T(0)};
        else
            s[v] = {up[v], p, dn[v], T(1) - p};
    }
    return s;
}

template <class T>
Eval<T> evaluate_policy(const GameGraph& g, const std::vector<int>& up, const std::vector<int>& dn,
                        const T& p) {
    const int n = g.n();
    auto succ = policy_successors(up, dn, p);
    std::vector<std::vector<int>> padj(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        auto& sv = succ[static_cast<std::size_t>(v)];
        padj[static_cast<std::size_t>(v)].push_back(sv.u1);
        if (sv.u2 >= 0 && sv.u2 != sv.u1) padj[static_cast<std::size_t>(v)].push_back(sv.u2);
    }
    SccDecomposition comps = scc_of_adjacency(padj);

    std::vector<T> gain(static_cast<std::size_t>(n), T(0)), bias(static_cast<std::size_t>(n), T(0));
    std::vector<T> w(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) w[static_cast<std::size_t>(v)] = T(g.weight[static_cast<std::size_t>(v)]);

    for (int c = static_cast<int>(comps.size()) - 1; c >= 0; --c) {
        const auto& comp = comps.components[static_cast<std::size_t>(c)];
        const std::size_t k = comp.size();
        std::vector<int> loc(static_cast<std::size_t>(n), -1);
        for (std::size_t i = 0; i < k; ++i) loc[static_cast<std::size_t>(comp[i])] = static_cast<int>(i);

        auto each_move = [&](int v, auto&& f) {
            const auto& sv = succ[static_cast<std::size_t>(v)];
            f(sv.u1, sv.p1);
            if (sv.u2 >= 0) f(sv.u2, sv.p2);
        };

        if (comps.is_bottom[static_cast<std::size_t>(c)]) {
            // recurrent block. The bias must be the true (Cesaro) bias, i.e.
            // normalized by stationary-weighted mean zero, not by pinning an
            // arbitrary reference vertex: with per-vertex pinning, policy
            // improvement across recurrent classes compares incommensurable
            // offsets and can stall at a suboptimal multichain policy.
            std::vector<T> rho;
            {
                std::vector<std::vector<T>> a(k, std::vector<T>(k, T(0)));
                std::vector<T> b(k, T(0));
                for (std::size_t i = 0; i < k; ++i) { // rho(u) = sum_v P(v,u) rho(v)
                    a[i][i] += T(1);
                    int u = comp[i];
                    for (std::size_t j = 0; j < k; ++j) {
                        each_move(comp[j], [&](int succ, const T& pr) {
                            if (succ == u) a[i][j] -= pr;
                        });
                    }
                }
                for (std::size_t j = 0; j < k; ++j) a[k - 1][j] = T(1); // replaces one redundant row
                b[k - 1] = T(1);
                auto sol = detail::gaussian_solve(std::move(a), std::move(b));
                if (!sol) throw NumericalError("singular stationary-distribution system");
                rho = std::move(*sol);
            }
            std::vector<std::vector<T>> a(k + 1, std::vector<T>(k + 1, T(0)));
            std::vector<T> b(k + 1, T(0));
            for (std::size_t i = 0; i < k; ++i) {
                int v = comp[i];
                a[i][0] = T(1);
                a[i][1 + i] += T(1);
                each_move(v, [&](int u, const T& pr) { a[i][1 + static_cast<std::size_t>(loc[static_cast<std::size_t>(u)])] -= pr; });
                b[i] = w[static_cast<std::size_t>(v)];
            }
            for (std::size_t i = 0; i < k; ++i) a[k][1 + i] = rho[i]; // sum rho(v) h(v) = 0
            auto sol = detail::gaussian_solve(std::move(a), std::move(b));
            if (!sol) throw NumericalError("singular policy evaluation system (recurrent block)");
            for (std::size_t i = 0; i < k; ++i) {
                gain[static_cast<std::size_t>(comp[i])] = (*sol)[0];
                bias[static_cast<std::size_t>(comp[i])] = (*sol)[1 + i];
            }
        } else {
            // transient block: (I - P) g = P_out g_out, then the bias rows
            std::vector<std::vector<T>> a(k, std::vector<T>(k, T(0)));
            std::vector<T> bg(k, T(0)), bh(k, T(0));
            for (std::size_t i = 0; i < k; ++i) {
                int v = comp[i];
                a[i][i] += T(1);
                each_move(v, [&](int u, const T& pr) {
                    int j = loc[static_cast<std::size_t>(u)];
                    if (j >= 0)
                        a[i][static_cast<std::size_t>(j)] -= pr;
                    else
                        bg[i] += pr * gain[static_cast<std::size_t>(u)];
                });
            }
            auto asave = a;
            auto gsol = detail::gaussian_solve(std::move(a), std::move(bg));
            if (!gsol) throw NumericalError("singular policy evaluation system (transient gain)");
            for (std::size_t i = 0; i < k; ++i) gain[static_cast<std::size_t>(comp[i])] = (*gsol)[i];
            for (std::size_t i = 0; i < k; ++i) {
                int v = comp[i];
                bh[i] = w[static_cast<std::size_t>(v)] - gain[static_cast<std::size_t>(v)];
                each_move(v, [&](int u, const T& pr) {
                    if (loc[static_cast<std::size_t>(u)] < 0) bh[i] += pr * bias[static_cast<std::size_t>(u)];
                });
            }
            auto hsol = detail::gaussian_solve(std::move(asave), std::move(bh));
            if (!hsol) throw NumericalError("singular policy evaluation system (transient bias)");
            for (std::size_t i = 0; i < k; ++i) bias[static_cast<std::size_t>(comp[i])] = (*hsol)[i];
        }
    }
    return {std::move(gain), std::move(bias)};
}

// lexicographic (gain, bias) comparison with slack; eps = 0 gives exact order
template <class T>
bool lex_less(const T& ga, const T& ha, const T& gb, const T& hb, const T& eps) {
    if (ga < gb - eps) return true;
    if (ga > gb + eps) return false;
    return ha < hb - eps;
}

// Smallest-index neighbor attaining the lexicographic extreme of (gain, bias).
template <class T>
int arg_lex(const GameGraph& g, const Eval<T>& ev, int v, bool maximize) {
    auto key = [&](int u) -> std::pair<const T&, const T&> {
        return {ev.gain[static_cast<std::size_t>(u)], ev.bias[static_cast<std::size_t>(u)]};
    };
    int best = g.out(v).front();
    for (int u : g.out(v)) {
        auto [gu, hu] = key(u);
        auto [gb, hb] = key(best);
        bool strictly = maximize ? lex_less(gb, hb, gu, hu, T(0)) : lex_less(gu, hu, gb, hb, T(0));
        if (strictly) best = u;
    }
    return best;
}

// One improvement sweep for the given player; switches only on a strict
// eps-improvement over the incumbent, so ties never flap.
template <class T>
bool improve(const GameGraph& g, const Eval<T>& ev, std::vector<int>& policy, bool maximize,
             const T& eps) {
    bool switched = false;
    for (int v = 0; v < g.n(); ++v) {
        int cur = policy[static_cast<std::size_t>(v)];
        int best = arg_lex(g, ev, v, maximize);
        if (best == cur) continue;
        const T &gc = ev.gain[static_cast<std::size_t>(cur)], &hc = ev.bias[static_cast<std::size_t>(cur)];
        const T &gb = ev.gain[static_cast<std::size_t>(best)], &hb = ev.bias[static_cast<std::size_t>(best)];
        bool strictly = maximize ? lex_less(gc, hc, gb, hb, eps) : lex_less(gb, hb, gc, hc, eps);
        if (strictly) {
            policy[static_cast<std::size_t>(v)] = best;
            switched = true;
        }
    }
    return switched;
}

template <class T>
struct PiResult {
    std::vector<int> up, dn;
    Eval<T> eval;
};

// Best response of the minimizer against a fixed maximizer policy: policy
// iteration on the induced MDP with gain-then-bias improvement.
template <class T>
Eval<T> min_best_response(const GameGraph& g, const std::vector<int>& up, std::vector<int>& dn,
                          const T& p, const T& eps, long cap) {
    for (long round = 0; round < cap; ++round) {
        Eval<T> ev = evaluate_policy(g, up, dn, p);
        if (!improve(g, ev, dn, /*maximize=*/false, eps)) return ev;
    }
    throw InternalError("minimizer policy iteration exceeded its round cap");
}

template <class T>
PiResult<T> hoffman_karp(const GameGraph& g, const T& p, const T& eps, std::vector<int> up,
                         std::vector<int> dn, long cap) {
    std::set<std::vector<int>> seen;
    for (long round = 0; round < cap; ++round) {
        Eval<T> ev = min_best_response(g, up, dn, p, eps, cap);
        if (!improve(g, ev, up, /*maximize=*/true, eps))
            return {std::move(up), std::move(dn), std::move(ev)};
        if (!seen.insert(up).second)
            throw InternalError("maximizer policy iteration revisited a policy (cycle)");
    }
    throw InternalError("maximizer policy iteration exceeded its round cap");
}

} // namespace

RtbSolution solve_mp(const GameGraph& g, double p, double tol) {
    if (!(p >= 0.0 && p <= 1.0)) throw ContractError("bias p must lie in [0,1]");
    if (!(tol > 0)) throw ContractError("tolerance must be positive");
    if (!strongly_connected(g)) throw ContractError("mean-payoff solve requires a strongly connected game");

    const int n = g.n();
    double wmax = 0;
    for (const Rat& w : g.weight) wmax = std::max(wmax, std::fabs(rat_to_double(w)));
    const double eps = 1e-12 * (1.0 + wmax);

    std::vector<int> init(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) init[static_cast<std::size_t>(v)] = g.out(v).front();

    PiResult<double> pi;
    try {
        pi = hoffman_karp<double>(g, p, eps, init, init, 256);
    } catch (const InternalError&) {
        // warm restart from a value-iteration sketch before giving up
        std::vector<double> h(static_cast<std::size_t>(n), 0.0);
        for (int it = 0; it < 20000; ++it) {
            std::vector<double> z(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v) {
                double hi = -1e300, lo = 1e300;
                for (int u : g.out(v)) {
                    hi = std::max(hi, h[static_cast<std::size_t>(u)]);
                    lo = std::min(lo, h[static_cast<std::size_t>(u)]);
                }
                z[static_cast<std::size_t>(v)] =
                    rat_to_double(g.weight[static_cast<std::size_t>(v)]) + p * hi + (1.0 - p) * lo;
            }
            double base = z[0];
            for (int v = 0; v < n; ++v)
                h[static_cast<std::size_t>(v)] = 0.5 * h[static_cast<std::size_t>(v)] +
                                                 0.5 * (z[static_cast<std::size_t>(v)] - base);
        }
        std::vector<int> up2(static_cast<std::size_t>(n)), dn2(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            int bu = g.out(v).front(), bd = bu;
            for (int u : g.out(v)) {
                if (h[static_cast<std::size_t>(u)] > h[static_cast<std::size_t>(bu)]) bu = u;
                if (h[static_cast<std::size_t>(u)] < h[static_cast<std::size_t>(bd)]) bd = u;
            }
            up2[static_cast<std::size_t>(v)] = bu;
            dn2[static_cast<std::size_t>(v)] = bd;
        }
        pi = hoffman_karp<double>(g, p, eps, up2, dn2, 256);
    }

    // Deterministic move maps from the converged bias, stabilized: recompute
    // argmax/argmin, re-evaluate, repeat until the maps reproduce themselves.
    RtbSolution sol;
    sol.p = p;
    Eval<double> fin = std::move(pi.eval);
    std::vector<int> up = std::move(pi.up), dn = std::move(pi.dn);
    for (int pass = 0; pass < 64; ++pass) {
        bool stable = true;
        for (int v = 0; v < n; ++v) {
            const auto& h = fin.bias;
            int bu = g.out(v).front(), bd = bu;
            for (int u : g.out(v)) {
                if (h[static_cast<std::size_t>(u)] > h[static_cast<std::size_t>(bu)]) bu = u;
                if (h[static_cast<std::size_t>(u)] < h[static_cast<std::size_t>(bd)]) bd = u;
            }
            if (up[static_cast<std::size_t>(v)] != bu || dn[static_cast<std::size_t>(v)] != bd) stable = false;
            up[static_cast<std::size_t>(v)] = bu;
            dn[static_cast<std::size_t>(v)] = bd;
        }
        if (stable && pass > 0) break;
        fin = evaluate_policy<double>(g, up, dn, p);
    }
    // returned maps are the extrema of the returned potentials even if the
    // stabilization pass cap was hit
    for (int v = 0; v < n; ++v) {
        const auto& h = fin.bias;
        int bu = g.out(v).front(), bd = bu;
        for (int u : g.out(v)) {
            if (h[static_cast<std::size_t>(u)] > h[static_cast<std::size_t>(bu)]) bu = u;
            if (h[static_cast<std::size_t>(u)] < h[static_cast<std::size_t>(bd)]) bd = u;
        }
        up[static_cast<std::size_t>(v)] = bu;
        dn[static_cast<std::size_t>(v)] = bd;
    }
    sol.move_max = up;
    sol.move_min = dn;

    double gmin = fin.gain[0], gmax = fin.gain[0];
    for (double x : fin.gain) {
        gmin = std::min(gmin, x);
        gmax = std::max(gmax, x);
    }
    if (gmax - gmin > std::max(tol, 1e-9 * (1.0 + wmax)))
        throw NumericalError("mean-payoff gain is not uniform across vertices (spread " +
                             double_to_string(gmax - gmin, 6) + ")");
    sol.mp_value = 0.5 * (gmin + gmax);

    // Certificate: with max/min ranging over all neighbors, a small residual
    // of h + g = w + p max h + (1-p) min h pins the game value to g.
    double resid = 0;
    for (int v = 0; v < n; ++v) {
        double hi = -1e300, lo = 1e300;
        for (int u : g.out(v)) {
            hi = std::max(hi, fin.bias[static_cast<std::size_t>(u)]);
            lo = std::min(lo, fin.bias[static_cast<std::size_t>(u)]);
        }
        double rhs = p * hi + (1.0 - p) * lo + rat_to_double(g.weight[static_cast<std::size_t>(v)]) -
                     sol.mp_value;
        resid = std::max(resid, std::fabs(fin.bias[static_cast<std::size_t>(v)] - rhs));
    }
    if (resid > std::max(tol, 1e-9 * (1.0 + wmax)))
        throw NumericalError("optimality-equation residual " + double_to_string(resid, 6) +
                             " exceeds tolerance");

    double hmin = fin.bias[0], hmax = fin.bias[0];
    for (double x : fin.bias) {
        hmin = std::min(hmin, x);
        hmax = std::max(hmax, x);
    }
    sol.pot.resize(static_cast<std::size_t>(n));
    sol.strength.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        sol.pot[static_cast<std::size_t>(v)] = fin.bias[static_cast<std::size_t>(v)] - hmin;
        sol.strength[static_cast<std::size_t>(v)] =
            p * (1.0 - p) *
            (fin.bias[static_cast<std::size_t>(sol.move_max[static_cast<std::size_t>(v)])] -
             fin.bias[static_cast<std::size_t>(sol.move_min[static_cast<std::size_t>(v)])]);
    }
    sol.pot_span = hmin - hmax;
    return sol;
}

RtbSolutionExact solve_mp_exact(const GameGraph& g, const Rat& p) {
    if (p < 0 || p > 1) throw ContractError("bias p must lie in [0,1]");
    if (!strongly_connected(g)) throw ContractError("mean-payoff solve requires a strongly connected game");
    const int n = g.n();
    std::vector<int> init(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) init[static_cast<std::size_t>(v)] = g.out(v).front();
    PiResult<Rat> pi = hoffman_karp<Rat>(g, p, Rat(0), init, init, 4096);

    RtbSolutionExact sol;
    sol.p = p;
    Eval<Rat> fin = std::move(pi.eval);
    std::vector<int> up = std::move(pi.up), dn = std::move(pi.dn);
    for (int pass = 0; pass < 64; ++pass) {
        bool stable = true;
        for (int v = 0; v < n; ++v) {
            const auto& h = fin.bias;
            int bu = g.out(v).front(), bd = bu;
            for (int u : g.out(v)) {
                if (h[static_cast<std::size_t>(u)] > h[static_cast<std::size_t>(bu)]) bu = u;
                if (h[static_cast<std::size_t>(u)] < h[static_cast<std::size_t>(bd)]) bd = u;
            }
            if (up[static_cast<std::size_t>(v)] != bu || dn[static_cast<std::size_t>(v)] != bd) stable = false;
            up[static_cast<std::size_t>(v)] = bu;
            dn[static_cast<std::size_t>(v)] = bd;
        }
        if (stable && pass > 0) break;
        fin = evaluate_policy<Rat>(g, up, dn, p);
    }
    sol.move_max = up;
    sol.move_min = dn;
    for (int v = 1; v < n; ++v)
        if (fin.gain[static_cast<std::size_t>(v)] != fin.gain[0])
            throw NumericalError("exact mean-payoff gain is not uniform across vertices");
    sol.mp_value = fin.gain[0];
    // exact certificate of optimality
    for (int v = 0; v < n; ++v) {
        Rat hi = fin.bias[static_cast<std::size_t>(g.out(v).front())], lo = hi;
        for (int u : g.out(v)) {
            hi = std::max(hi, fin.bias[static_cast<std::size_t>(u)]);
            lo = std::min(lo, fin.bias[static_cast<std::size_t>(u)]);
        }
        Rat rhs = p * hi + (Rat(1) - p) * lo + Rat(g.weight[static_cast<std::size_t>(v)]) - sol.mp_value;
        if (fin.bias[static_cast<std::size_t>(v)] != rhs)
            throw NumericalError("exact optimality equation violated at vertex " +
                                 g.ids[static_cast<std::size_t>(v)]);
    }
    Rat hmin = fin.bias[0];
    for (const Rat& x : fin.bias) hmin = std::min(hmin, x);
    sol.pot.resize(static_cast<std::size_t>(n));
    sol.strength.resize(static_cast<std::size_t>(n));
    Rat coeff = p * (Rat(1) - p);
    for (int v = 0; v < n; ++v) {
        sol.pot[static_cast<std::size_t>(v)] = fin.bias[static_cast<std::size_t>(v)] - hmin;
        sol.strength[static_cast<std::size_t>(v)] =
            coeff * (fin.bias[static_cast<std::size_t>(sol.move_max[static_cast<std::size_t>(v)])] -
                     fin.bias[static_cast<std::size_t>(sol.move_min[static_cast<std::size_t>(v)])]);
    }
    return sol;
}

json RtbSolution::to_json(const GameGraph& g) const {
    json pot_j = json::object(), st_j = json::object(), mm_j = json::object(), mn_j = json::object();
    for (int v = 0; v < g.n(); ++v) {
        const std::string& id = g.ids[static_cast<std::size_t>(v)];
        pot_j[id] = round_sig(pot[static_cast<std::size_t>(v)], 12);
        st_j[id] = round_sig(strength[static_cast<std::size_t>(v)], 12);
        mm_j[id] = g.ids[static_cast<std::size_t>(move_max[static_cast<std::size_t>(v)])];
        mn_j[id] = g.ids[static_cast<std::size_t>(move_min[static_cast<std::size_t>(v)])];
    }
    json out = {{"p", round_sig(p, 12)},  {"mp_value", round_sig(mp_value, 12)},
                {"pot", pot_j},           {"strength", st_j},
                {"move_max", mm_j},       {"move_min", mn_j},
                {"pot_span", round_sig(pot_span, 12)}};
    if (reach_values) {
        json rv = json::object();
        for (int v = 0; v < g.n(); ++v)
            rv[g.ids[static_cast<std::size_t>(v)]] = round_sig((*reach_values)[static_cast<std::size_t>(v)], 12);
        out["reach_values"] = rv;
    }
    return out;
}

} // namespace bgg
