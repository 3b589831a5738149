#include "bgg/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bgg/errors.hpp"

namespace bgg {

using nlohmann::json;

TieBreak tie_break_of(const std::string& name) {
    if (name == "player1") return TieBreak::player1;
    if (name == "player2") return TieBreak::player2;
    if (name == "alternate") return TieBreak::alternate;
    if (name == "random") return TieBreak::seeded_random;
    throw ContractError("unknown tie-break rule '" + name +
                        "' (player1|player2|alternate|random)");
}

std::string tie_break_name(TieBreak t) {
    switch (t) {
        case TieBreak::player1: return "player1";
        case TieBreak::player2: return "player2";
        case TieBreak::alternate: return "alternate";
        case TieBreak::seeded_random: return "random";
    }
    return "?";
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

double derived_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t round) {
    std::uint64_t h = splitmix64(splitmix64(seed ^ (0xA0761D6478BD642Full * stream)) ^
                                 (0xE7037ED1A0B428DBull * round));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// ---- engine ---------------------------------------------------------------

namespace {

// budget rounding for the non-exact mode: 53 fractional bits, so the relative
// error per round stays below 2^-52 while denominators stay one limb
Rat round_dyadic53(const Rat& q) {
    static const Int one_shift = Int(1) << 53;
    Int num = (numerator(q) << 53) + denominator(q) / 2;
    Int scaled = num / denominator(q);
    return Rat(scaled, one_shift);
}

} // namespace

PlayTrace run_play(const GameGraph& g, const Mechanism& mech, const Budgets& initial,
                   Strategy& strat1, Strategy& strat2, const EngineConfig& config) {
    if (config.steps < 0) throw ContractError("steps must be non-negative");
    if (config.start_vertex < 0 || config.start_vertex >= g.n())
        throw ContractError("start vertex out of range");

    PlayTrace trace;
    trace.seed = config.seed;
    trace.tie = config.tie;
    trace.tau = mech.tau;
    trace.start_vertex = config.start_vertex;
    trace.exact_budgets = config.exact_budgets;
    trace.p1_name = strat1.name();
    trace.p2_name = strat2.name();

    Rat total = initial.total();
    Rat b1 = initial.b1 / total;
    Rat b2 = Rat(1) - b1;
    trace.initial_b1 = b1;
    trace.initial_b2 = b2;

    strat1.begin(g, Player::one, b1, config.seed, &trace);
    strat2.begin(g, Player::two, b2, config.seed, &trace);

    int vertex = config.start_vertex;
    if (g.is_target(vertex)) trace.reached_target_at = 0;
    Rat energy(0);
    long tie_count = 0;
    const Rat complement = Rat(1) - mech.tau; // bank share per unit bid

    const std::size_t cap = static_cast<std::size_t>(config.steps);
    trace.rounds.reserve(cap);
    trace.energy_prefix.reserve(cap);
    trace.payoff_running.reserve(cap);
    trace.walk_positions.reserve(cap);
    trace.gains.reserve(cap);
    trace.investments.reserve(cap);

    for (long round = 0; round < config.steps; ++round) {
        if (config.stop_at_target && trace.reached_target_at) break;

        PlayState st1{vertex, round, Player::one, b1, b2, &trace};
        PlayState st2{vertex, round, Player::two, b2, b1, &trace};
        Action a1 = strat1.act(g, st1);
        Action a2 = strat2.act(g, st2);

        auto sanitize = [&](Action& a, const Rat& budget, const char* who, const std::string& nm) {
            if (!g.has_edge(vertex, a.move))
                throw ContractError(std::string("strategy '") + nm + "' (" + who +
                                    ") proposed a non-neighbor move from vertex '" +
                                    g.ids[static_cast<std::size_t>(vertex)] + "'");
            if (a.bid < 0) {
                trace.audits.push_back({round + 1, "bid-clamped",
                                        std::string(who) + " '" + nm + "' bid below zero", 0.0});
                a.bid = Rat(0);
            } else if (a.bid > budget) {
                if (config.strict_bids)
                    throw ContractError(std::string("strategy '") + nm + "' (" + who +
                                        ") bid beyond its budget in strict mode");
                trace.audits.push_back({round + 1, "bid-clamped",
                                        std::string(who) + " '" + nm + "' bid beyond its budget",
                                        rat_to_double(a.bid - budget)});
                a.bid = budget;
            }
        };
        sanitize(a1, b1, "player 1", trace.p1_name);
        sanitize(a2, b2, "player 2", trace.p2_name);

        Player winner = Player::one;
        if (a1.bid > a2.bid)
            winner = Player::one;
        else if (a2.bid > a1.bid)
            winner = Player::two;
        else {
            switch (config.tie) {
                case TieBreak::player1: winner = Player::one; break;
                case TieBreak::player2: winner = Player::two; break;
                case TieBreak::alternate:
                    winner = (tie_count % 2 == 0) ? Player::one : Player::two;
                    ++tie_count;
                    break;
                case TieBreak::seeded_random:
                    winner = derived_uniform(config.seed, 0x7133, static_cast<std::uint64_t>(round)) <
                                     0.5
                                 ? Player::one
                                 : Player::two;
                    break;
            }
        }
        const Rat& winning_bid = winner == Player::one ? a1.bid : a2.bid;
        int move = winner == Player::one ? a1.move : a2.move;

        Rat pre_total = Rat(1) - complement * winning_bid;

        energy += g.weight[static_cast<std::size_t>(vertex)];
        trace.energy_prefix.push_back(energy);
        trace.payoff_running.push_back(rat_to_double(energy) / static_cast<double>(round + 1));

        if (pre_total == 0) {
            // poorman all-in corner: the bank absorbed the entire budget
            trace.rounds.push_back({vertex, a1.bid, a2.bid, winner, move, Rat(0), Rat(0), pre_total});
            trace.audits.push_back(
                {round + 1, "budget-exhausted", "total budget reached zero; play stopped", 0.0});
            trace.budget_exhausted = true;
            trace.walk_positions.push_back(std::numeric_limits<double>::quiet_NaN());
            trace.gains.push_back(round > 0 ? trace.gains.back() : 0.0);
            trace.investments.push_back(round > 0 ? trace.investments.back() : 0.0);
            break;
        }

        Budgets after = apply_bidding_outcome(Budgets(b1, b2), mech, winner, winning_bid);
        b1 = after.b1 / pre_total;
        if (!config.exact_budgets && denominator(b1) > (Int(1) << 53)) {
            b1 = round_dyadic53(b1);
            if (b1 < 0) b1 = Rat(0);
            if (b1 > 1) b1 = Rat(1);
        }
        b2 = Rat(1) - b1;

        trace.rounds.push_back(
            {vertex, std::move(a1.bid), std::move(a2.bid), winner, move, b1, b2, std::move(pre_total)});

        vertex = move;
        if (!trace.reached_target_at && g.is_target(vertex)) trace.reached_target_at = round + 1;

        PlayState post1{vertex, round, Player::one, b1, b2, &trace};
        PlayState post2{vertex, round, Player::two, b2, b1, &trace};
        strat1.observe(g, post1, winner, winning_bid, move);
        strat2.observe(g, post2, winner, winning_bid, move);

        double walk = std::numeric_limits<double>::quiet_NaN();
        if (auto x = strat1.walk_position())
            walk = *x;
        else if (auto x2 = strat2.walk_position())
            walk = *x2;
        trace.walk_positions.push_back(walk);
        // a round with no ledger writer keeps the running ledger aligned
        if (trace.gains.size() == static_cast<std::size_t>(round)) {
            trace.gains.push_back(round > 0 ? trace.gains.back() : 0.0);
            trace.investments.push_back(round > 0 ? trace.investments.back() : 0.0);
        }
    }
    return trace;
}

double estimate_payoff(const PlayTrace& trace, const GameGraph&,
                       const std::vector<long>& tail_windows) {
    const long n = trace.steps();
    if (n == 0) throw ContractError("cannot estimate the payoff of an empty trace");
    if (tail_windows.empty()) throw ContractError("need at least one tail window");
    double best = std::numeric_limits<double>::infinity();
    for (long w : tail_windows) {
        if (w < 1 || w > n)
            throw ContractError("tail window " + std::to_string(w) +
                                " exceeds the trace length " + std::to_string(n));
        Rat tail = trace.energy_prefix[static_cast<std::size_t>(n - 1)];
        if (w < n) tail -= trace.energy_prefix[static_cast<std::size_t>(n - 1 - w)];
        best = std::min(best, rat_to_double(tail) / static_cast<double>(w));
    }
    return best;
}

LedgerAudit audit_energy_ledger(const PlayTrace& trace, const GameGraph& g_pov, const RtbSolution& sol,
                         double nu, double mu) {
    if (!(nu > 0) || !(mu > 0)) throw ContractError("audit needs positive nu and mu");
    LedgerAudit out;
    out.min_slack = std::numeric_limits<double>::infinity();
    const double coef = nu * mu / (nu + mu);
    const double mp = sol.mp_value;
    const double span = sol.pot_span;
    double gsum = 0, isum = 0;
    Rat energy(0);
    for (long k = 0; k < trace.steps(); ++k) {
        const RoundRecord& r = trace.rounds[static_cast<std::size_t>(k)];
        energy += g_pov.weight[static_cast<std::size_t>(r.vertex)];
        double st = sol.strength[static_cast<std::size_t>(r.vertex)];
        if (r.move == sol.move_max[static_cast<std::size_t>(r.vertex)])
            isum += st; // max "won" in the move classification: an investment
        else
            gsum += st;
        double slack = coef * (rat_to_double(energy) - span - static_cast<double>(k + 1) * mp) -
                       (mu * isum - nu * gsum);
        if (slack < out.min_slack) {
            out.min_slack = slack;
            out.argmin_round = k + 1;
        }
    }
    if (trace.steps() == 0) out.min_slack = 0;
    out.final_g = gsum;
    out.final_i = isum;
    return out;
}

// ---- strategy runtimes ------------------------------------------------------

namespace {

class MpRuntime final : public Strategy {
public:
    MpRuntime(const GameGraph& g, MaxMpStrategy strat) : strat_(std::move(strat)) {
        (void)g;
    }

    std::string name() const override {
        return strat_.kind == MaxMpStrategy::Kind::max_mp ? "max-mp" : "min-mp";
    }

    void begin(const GameGraph&, Player me, const Rat& my_ratio, std::uint64_t,
               PlayTrace* sink) override {
        me_ = me;
        sink_ = sink;
        double x0;
        if (strat_.scheme.trivial) {
            x0 = 1.0;
        } else if (strat_.x0) {
            x0 = *strat_.x0;
            if (x0 < 1.0) throw ContractError("stored walk position x0 must be at least 1");
            if (strat_.scheme.r_at(x0) > rat_to_double(my_ratio) + 1e-9)
                throw InfeasibleError("stored x0 entitles a larger ratio than the actual budget");
        } else {
            x0 = initial_position(strat_.scheme, rat_to_double(my_ratio));
        }
        x_ = rat_of_double(x0);
        x_view_ = x0;
        mu_s_.clear();
        nu_s_.clear();
        for (double s : strat_.strength) {
            mu_s_.push_back(rat_of_double(strat_.mu) * rat_of_double(s));
            nu_s_.push_back(rat_of_double(strat_.nu) * rat_of_double(s));
        }
    }

    Action act(const GameGraph&, const PlayState& state) override {
        last_vertex_ = state.vertex;
        double s = strat_.strength[static_cast<std::size_t>(state.vertex)];
        Rat bid(0);
        if (!strat_.scheme.trivial && s > 0) {
            double frac = strat_.scheme.bid_fraction(x_view_, s);
            // bids this small cannot influence any bidding the guarantees
            // depend on; snapping them would drag 10^300-scale denominators
            // through the budget arithmetic
            if (frac >= 1e-40) bid = snap_double(frac, 15);
        }
        return {bid, strat_.move_max[static_cast<std::size_t>(state.vertex)]};
    }

    void observe(const GameGraph&, const PlayState& post, Player bid_winner, const Rat&,
                 int move) override {
        bool won = bid_winner == me_;
        const std::size_t v = static_cast<std::size_t>(last_vertex_);
        if (!strat_.scheme.trivial && strat_.strength[v] > 0) {
            if (won) {
                x_ += mu_s_[v];
                x_view_ += strat_.mu * strat_.strength[v];
            } else {
                x_ -= nu_s_[v];
                x_view_ -= strat_.nu * strat_.strength[v];
            }
        }
        long round = post.round + 1;
        if (x_ < 1) {
            sink_->audits.push_back({round, "walk-floor",
                                     name() + " walk fell below 1", rat_to_double(x_)});
        }
        // post-round entitlement: the actual ratio must cover r_{x_new}
        double rx = strat_.scheme.trivial ? 0.0 : strat_.scheme.r_at(x_view_);
        double ratio = rat_to_double(post.my_budget);
        if (!strat_.scheme.trivial && ratio < rx - 1e-9) {
            sink_->audits.push_back({round, "ratio-bound",
                                     name() + " ratio fell below the walk entitlement r_x",
                                     ratio - rx});
        }
        // running move-classified ledger (first writer per round wins)
        if (sink_->gains.size() == static_cast<std::size_t>(post.round)) {
            double g_prev = post.round > 0 ? sink_->gains.back() : 0.0;
            double i_prev = post.round > 0 ? sink_->investments.back() : 0.0;
            double st = strat_.strength[v];
            bool move_won = move == strat_.move_max[v];
            sink_->gains.push_back(g_prev + (move_won ? 0.0 : st));
            sink_->investments.push_back(i_prev + (move_won ? st : 0.0));
        }
    }

    std::optional<double> walk_position() const override { return x_view_; }

private:
    MaxMpStrategy strat_;
    Player me_ = Player::one;
    PlayTrace* sink_ = nullptr;
    Rat x_;          // exact walk position (floor audits)
    double x_view_ = 1; // double mirror of the walk for bid evaluation
    int last_vertex_ = 0;
    std::vector<Rat> mu_s_, nu_s_; // exact walk steps per vertex
};

class QualRuntime final : public Strategy {
public:
    QualRuntime(const GameGraph& g, QualReachStrategy strat) : strat_(std::move(strat)) { (void)g; }

    std::string name() const override { return "reach"; }

    void begin(const GameGraph&, Player me, const Rat& my_ratio, std::uint64_t,
               PlayTrace* sink) override {
        me_ = me;
        sink_ = sink;
        wins_ = 0;
        reached_ = false;
        cycle_ratio_ = my_ratio;
    }

    Action act(const GameGraph&, const PlayState& state) override {
        if (state.vertex == strat_.target) reached_ = true;
        pre_ratio_ = state.my_budget;
        was_reached_ = reached_;
        if (reached_) return {Rat(0), strat_.move_toward[static_cast<std::size_t>(state.vertex)]};
        Rat bid = strat_.m;
        for (int i = 0; i < wins_; ++i) bid *= strat_.r_geo;
        return {bid, strat_.move_toward[static_cast<std::size_t>(state.vertex)]};
    }

    void observe(const GameGraph&, const PlayState& post, Player bid_winner, const Rat&,
                 int) override {
        if (post.vertex == strat_.target) reached_ = true;
        if (was_reached_) return;
        if (bid_winner == me_) {
            ++wins_;
            return;
        }
        // a lost bidding must raise the budget quotient by the guaranteed bound
        Rat post_ratio = post.my_budget;
        bool ok;
        double magnitude = 0;
        if (Rat(1) - post_ratio == 0) {
            ok = true; // opponent bankrupt: infinite quotient
        } else {
            Rat q_pre = pre_ratio_ / (Rat(1) - pre_ratio_);
            Rat q_post = post_ratio / (Rat(1) - post_ratio);
            Rat bound = strat_.gain_bound(cycle_ratio_);
            if (sink_->exact_budgets)
                ok = q_post - q_pre >= bound;
            else
                ok = rat_to_double(q_post - q_pre) >= rat_to_double(bound) - 1e-9;
            magnitude = rat_to_double(q_post - q_pre - bound);
        }
        if (!ok)
            sink_->audits.push_back({post.round + 1, "qual-gain",
                                     "lost bidding gained less than the guaranteed bound",
                                     magnitude});
        wins_ = 0;
        cycle_ratio_ = post_ratio; // schedule restarts at the new, larger ratio
    }

private:
    QualReachStrategy strat_;
    Player me_ = Player::one;
    PlayTrace* sink_ = nullptr;
    int wins_ = 0;
    bool reached_ = false, was_reached_ = false;
    Rat cycle_ratio_, pre_ratio_;
};

// shared move rule for the uninformed adversaries: flee the targets when the
// game has any, otherwise head for the lightest weight
class GreedyMoves {
public:
    void init(const GameGraph& g) {
        if (!g.targets.empty()) dist_ = bfs_dist_to(g, g.targets);
        move_.resize(static_cast<std::size_t>(g.n()));
        for (int v = 0; v < g.n(); ++v) {
            int best = g.out(v).front();
            for (int u : g.out(v)) {
                if (!g.targets.empty()) {
                    auto score = [&](int w) {
                        int d = dist_[static_cast<std::size_t>(w)];
                        return d < 0 ? std::numeric_limits<int>::max() : d;
                    };
                    if (score(u) > score(best)) best = u;
                } else if (g.weight[static_cast<std::size_t>(u)] <
                           g.weight[static_cast<std::size_t>(best)]) {
                    best = u;
                }
            }
            move_[static_cast<std::size_t>(v)] = best;
        }
    }
    int operator()(int v) const { return move_[static_cast<std::size_t>(v)]; }

private:
    std::vector<int> dist_;
    std::vector<int> move_;
};

class AllInAdversary final : public Strategy {
public:
    std::string name() const override { return "allin"; }
    void begin(const GameGraph& g, Player, const Rat&, std::uint64_t, PlayTrace*) override {
        moves_.init(g);
    }
    Action act(const GameGraph&, const PlayState& state) override {
        return {state.my_budget, moves_(state.vertex)};
    }

private:
    GreedyMoves moves_;
};

class FractionAdversary final : public Strategy {
public:
    explicit FractionAdversary(Rat c) : c_(std::move(c)) {
        if (c_ < 0 || c_ > 1) throw ContractError("fraction adversary needs c in [0,1]");
    }
    std::string name() const override { return "fraction:" + rat_to_fraction(c_); }
    void begin(const GameGraph& g, Player, const Rat&, std::uint64_t, PlayTrace*) override {
        moves_.init(g);
    }
    Action act(const GameGraph&, const PlayState& state) override {
        return {c_ * state.my_budget, moves_(state.vertex)};
    }

private:
    Rat c_;
    GreedyMoves moves_;
};

class RandomAdversary final : public Strategy {
public:
    std::string name() const override { return "random"; }
    void begin(const GameGraph&, Player me, const Rat&, std::uint64_t seed, PlayTrace*) override {
        seed_ = seed;
        stream_ = me == Player::one ? 0xB1D5 : 0xB2D5;
    }
    Action act(const GameGraph& g, const PlayState& state) override {
        double u = derived_uniform(seed_, stream_, 2 * static_cast<std::uint64_t>(state.round));
        double m = derived_uniform(seed_, stream_, 2 * static_cast<std::uint64_t>(state.round) + 1);
        Rat bid = snap_double(u, 15) * state.my_budget;
        const auto& nbrs = g.out(state.vertex);
        auto pick = std::min<std::size_t>(static_cast<std::size_t>(m * static_cast<double>(nbrs.size())),
                                          nbrs.size() - 1);
        return {bid, nbrs[pick]};
    }

private:
    std::uint64_t seed_ = 0, stream_ = 0;
};

// bids the synthesized Max formula with its own ratio and walk, moves to v-
class MimicAdversary final : public Strategy {
public:
    MimicAdversary(const MaxMpStrategy& opposing, const RtbSolution& sol)
        : strat_(opposing), move_min_(sol.move_min) {}

    std::string name() const override { return "mimic"; }

    void begin(const GameGraph&, Player me, const Rat& my_ratio, std::uint64_t,
               PlayTrace*) override {
        me_ = me;
        double r0 = rat_to_double(my_ratio);
        x_ = (strat_.scheme.trivial || r0 <= strat_.scheme.ratio)
                 ? 1.0
                 : initial_position(strat_.scheme, r0);
    }

    Action act(const GameGraph&, const PlayState& state) override {
        last_vertex_ = state.vertex;
        double s = strat_.strength[static_cast<std::size_t>(state.vertex)];
        double own = rat_to_double(state.my_budget);
        Rat bid(0);
        if (!strat_.scheme.trivial && s > 0) {
            double frac = own * (1.0 - own) * strat_.scheme.beta_at(x_) * s;
            if (frac >= 1e-40) bid = snap_double(frac, 15);
            if (bid > state.my_budget) bid = state.my_budget;
        }
        return {bid, move_min_[static_cast<std::size_t>(state.vertex)]};
    }

    void observe(const GameGraph&, const PlayState&, Player bid_winner, const Rat&, int) override {
        double s = strat_.strength[static_cast<std::size_t>(last_vertex_)];
        if (bid_winner == me_)
            x_ += strat_.mu * s;
        else
            x_ = std::max(1.0, x_ - strat_.nu * s);
    }

private:
    MaxMpStrategy strat_;
    std::vector<int> move_min_;
    Player me_ = Player::one;
    double x_ = 1.0;
    int last_vertex_ = 0;
};

// threshold-informed reachability adversary: moves to the worst neighbor for
// player 1 and bids half the local threshold gap
class ReachAdversary final : public Strategy {
public:
    explicit ReachAdversary(ThresholdMap map) : map_(std::move(map)) {}
    std::string name() const override { return "reach"; }

    Action act(const GameGraph& g, const PlayState& state) override {
        int lo = g.out(state.vertex).front(), hi = lo;
        for (int u : g.out(state.vertex)) {
            if (map_.th[static_cast<std::size_t>(u)] < map_.th[static_cast<std::size_t>(lo)]) lo = u;
            if (map_.th[static_cast<std::size_t>(u)] > map_.th[static_cast<std::size_t>(hi)]) hi = u;
        }
        double gap = (map_.th[static_cast<std::size_t>(hi)] - map_.th[static_cast<std::size_t>(lo)]) / 2;
        Rat bid = snap_double(gap, 15);
        if (bid > state.my_budget) bid = state.my_budget;
        return {bid, hi};
    }

private:
    ThresholdMap map_;
};

// ---- trace replay ----------------------------------------------------------

struct CsvRound {
    Rat bid1, bid2;
    int move = 0;
    int winner = 1;
    double walk = std::numeric_limits<double>::quiet_NaN();
};

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::vector<CsvRound> parse_trace_csv(const GameGraph& g, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty trace file");
    auto header = split(line, ',');
    auto col = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<long>(i);
        return -1L;
    };
    long c_bid1 = col("bid1"), c_bid2 = col("bid2"), c_move = col("move"), c_winner = col("winner");
    long c_x = col("x");
    long c_bid1x = col("bid1_exact"), c_bid2x = col("bid2_exact");
    if (c_bid1 < 0 || c_bid2 < 0 || c_move < 0 || c_winner < 0)
        throw ParseError("trace file is missing required columns");

    std::vector<CsvRound> rounds;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = split(line, ',');
        if (f.size() < header.size())
            throw ParseError("trace row has too few fields", lineno, 1);
        CsvRound r;
        try {
            r.bid1 = c_bid1x >= 0 ? parse_rational(f[static_cast<std::size_t>(c_bid1x)])
                                  : parse_rational(f[static_cast<std::size_t>(c_bid1)]);
            r.bid2 = c_bid2x >= 0 ? parse_rational(f[static_cast<std::size_t>(c_bid2x)])
                                  : parse_rational(f[static_cast<std::size_t>(c_bid2)]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string("trace bid: ") + e.what(), lineno, 1);
        }
        r.move = g.require_vertex(f[static_cast<std::size_t>(c_move)]);
        r.winner = std::stoi(f[static_cast<std::size_t>(c_winner)]);
        if (c_x >= 0 && !f[static_cast<std::size_t>(c_x)].empty())
            r.walk = std::stod(f[static_cast<std::size_t>(c_x)]);
        rounds.push_back(std::move(r));
    }
    return rounds;
}

class ReplayStrategy final : public Strategy {
public:
    ReplayStrategy(std::vector<CsvRound> rounds, Player slot)
        : rounds_(std::move(rounds)), slot_(slot) {}

    std::string name() const override { return "replay"; }

    Action act(const GameGraph& g, const PlayState& state) override {
        if (static_cast<std::size_t>(state.round) >= rounds_.size())
            throw ContractError("replay ran past the end of the recorded trace");
        const CsvRound& r = rounds_[static_cast<std::size_t>(state.round)];
        cursor_ = static_cast<std::size_t>(state.round);
        Rat bid = slot_ == Player::one ? r.bid1 : r.bid2;
        // the trace records only the winner's move; replaying the same bids
        // reproduces the same winner, so the loser's move never surfaces
        int move = static_cast<int>(slot_) == r.winner ? r.move : g.out(state.vertex).front();
        return {bid, move};
    }

    std::optional<double> walk_position() const override {
        if (cursor_ < rounds_.size() && !std::isnan(rounds_[cursor_].walk))
            return rounds_[cursor_].walk;
        return std::nullopt;
    }

private:
    std::vector<CsvRound> rounds_;
    Player slot_;
    std::size_t cursor_ = 0;
};

} // namespace

std::vector<std::string> builtin_adversaries() {
    return {"allin", "fraction", "fraction:<c>", "random", "mimic", "reach"};
}

std::unique_ptr<Strategy> make_adversary(const std::string& spec, const StrategyContext& ctx) {
    if (spec == "allin") return std::make_unique<AllInAdversary>();
    if (spec == "fraction") return std::make_unique<FractionAdversary>(Rat(1, 2));
    if (spec.rfind("fraction:", 0) == 0) {
        Rat c;
        try {
            c = parse_rational(spec.substr(9));
        } catch (const std::invalid_argument& e) {
            throw ContractError(std::string("fraction adversary: ") + e.what());
        }
        return std::make_unique<FractionAdversary>(c);
    }
    if (spec == "random") return std::make_unique<RandomAdversary>();
    if (spec == "mimic") {
        if (!ctx.opposing_mp || !ctx.opposing_sol)
            throw ContractError("mimic adversary needs an opposing mean-payoff strategy");
        return std::make_unique<MimicAdversary>(*ctx.opposing_mp, *ctx.opposing_sol);
    }
    if (spec == "reach") {
        if (ctx.thresholds) return std::make_unique<ReachAdversary>(*ctx.thresholds);
        if (!ctx.game) throw ContractError("reach adversary needs a game in its context");
        return std::make_unique<ReachAdversary>(
            solve_reachability_thresholds(*ctx.game, ctx.tau, 1e-10));
    }
    std::string names;
    for (const auto& n : builtin_adversaries()) names += (names.empty() ? "" : ", ") + n;
    throw ContractError("unknown adversary '" + spec + "' (catalog: " + names + ")");
}

std::unique_ptr<Strategy> make_mp_runtime(const GameGraph& g, const MaxMpStrategy& strat) {
    return std::make_unique<MpRuntime>(g, strat);
}

std::unique_ptr<Strategy> make_qual_runtime(const GameGraph& g, const QualReachStrategy& strat) {
    return std::make_unique<QualRuntime>(g, strat);
}

std::unique_ptr<Strategy> make_replay(const GameGraph& g, const std::string& trace_csv,
                                      Player slot) {
    return std::make_unique<ReplayStrategy>(parse_trace_csv(g, trace_csv), slot);
}

// ---- trace serialization ----------------------------------------------------

std::string PlayTrace::to_csv(const GameGraph& g, bool exact) const {
    std::ostringstream out;
    out << "step,vertex,bid1,bid2,winner,move,b1,b2,energy,x";
    if (exact) out << ",bid1_exact,bid2_exact,b1_exact,b2_exact";
    out << "\n";
    for (long k = 0; k < steps(); ++k) {
        const RoundRecord& r = rounds[static_cast<std::size_t>(k)];
        out << (k + 1) << ',' << g.ids[static_cast<std::size_t>(r.vertex)] << ','
            << rat_to_decimal(r.bid1, 15) << ',' << rat_to_decimal(r.bid2, 15) << ','
            << static_cast<int>(r.winner) << ',' << g.ids[static_cast<std::size_t>(r.move)] << ','
            << rat_to_decimal(r.b1_after, 15) << ',' << rat_to_decimal(r.b2_after, 15) << ','
            << rat_to_decimal(energy_prefix[static_cast<std::size_t>(k)], 15) << ',';
        double walk = walk_positions.size() > static_cast<std::size_t>(k)
                          ? walk_positions[static_cast<std::size_t>(k)]
                          : std::numeric_limits<double>::quiet_NaN();
        if (!std::isnan(walk)) out << double_to_string(walk, 15);
        if (exact)
            out << ',' << rat_to_fraction(r.bid1) << ',' << rat_to_fraction(r.bid2) << ','
                << rat_to_fraction(r.b1_after) << ',' << rat_to_fraction(r.b2_after);
        out << "\n";
    }
    return out.str();
}

json SimReport::to_json() const {
    json windows_j = json::array();
    for (long w : windows) windows_j.push_back(w);
    json audits_j = json::object();
    long total = 0;
    for (const auto& [kind, count] : audit_counts) {
        audits_j[kind] = count;
        total += count;
    }
    json j = {{"steps", steps},
              {"payoff_running", round_sig(payoff_running, 12)},
              {"tail_estimate", round_sig(tail_estimate, 12)},
              {"window_min", round_sig(window_min, 12)},
              {"window_max", round_sig(window_max, 12)},
              {"tail_windows", windows_j},
              {"audit_summary", audits_j},
              {"audit_total", total},
              {"seed", seed},
              {"final_b1", rat_to_decimal(final_b1, 15)},
              {"final_b2", rat_to_decimal(final_b2, 15)}};
    if (reached_target_at)
        j["reached_target_at"] = *reached_target_at;
    else
        j["reached_target_at"] = nullptr;
    return j;
}

SimReport make_report(const PlayTrace& trace, const GameGraph& g, const std::vector<long>& windows,
                      double wall_time_s) {
    SimReport rep;
    rep.steps = trace.steps();
    rep.seed = trace.seed;
    rep.wall_time_s = wall_time_s;
    rep.reached_target_at = trace.reached_target_at;
    if (rep.steps > 0) {
        rep.payoff_running = trace.payoff_running.back();
        rep.final_b1 = trace.rounds.back().b1_after;
        rep.final_b2 = trace.rounds.back().b2_after;
        rep.window_min = std::numeric_limits<double>::infinity();
        rep.window_max = -std::numeric_limits<double>::infinity();
        for (long w : windows) {
            if (w < 1 || w > rep.steps) continue;
            double avg = estimate_payoff(trace, g, {w});
            rep.window_min = std::min(rep.window_min, avg);
            rep.window_max = std::max(rep.window_max, avg);
            rep.windows.push_back(w);
        }
        if (rep.windows.empty()) {
            rep.windows.push_back(rep.steps);
            rep.window_min = rep.window_max = rep.payoff_running;
        }
        rep.tail_estimate = rep.window_min;
    } else {
        rep.final_b1 = trace.initial_b1;
        rep.final_b2 = trace.initial_b2;
    }
    for (const auto& a : trace.audits) ++rep.audit_counts[a.kind];
    return rep;
}

} // namespace bgg
