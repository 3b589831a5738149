#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bgg/bidding.hpp"
#include "bgg/game.hpp"
#include "bgg/rtb.hpp"
#include "bgg/strategy.hpp"
#include "bgg/thresholds.hpp"

namespace bgg {

enum class TieBreak { player1, player2, alternate, seeded_random };

TieBreak tie_break_of(const std::string& name);
std::string tie_break_name(TieBreak t);

// Deterministic per-round randomness: every draw is a pure function of
// (seed, stream, round), so campaigns replay identically on any platform.
std::uint64_t splitmix64(std::uint64_t x);
double derived_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t round);

struct AuditRecord {
    long round = 0;
    std::string kind;
    std::string detail;
    double magnitude = 0;
};

struct RoundRecord {
    int vertex = 0;
    Rat bid1, bid2;
    Player winner = Player::one;
    int move = 0;
    Rat b1_after, b2_after; // normalized to total 1 (both zero if the bank ate everything)
    Rat pre_norm_total;     // total before renormalization, for audits
};

struct PlayTrace {
    // configuration echo
    std::uint64_t seed = 0;
    TieBreak tie = TieBreak::player1;
    Rat tau;
    Rat initial_b1, initial_b2; // normalized
    int start_vertex = 0;
    bool exact_budgets = false;
    std::string p1_name, p2_name;

    std::vector<RoundRecord> rounds;
    std::vector<Rat> energy_prefix;      // E after k+1 rounds, exact
    std::vector<double> payoff_running;  // E/(k+1)
    std::vector<double> walk_positions;  // active mean-payoff walk after each round (NaN if none)
    std::vector<double> gains;           // running G, move-classified against the audited strategy
    std::vector<double> investments;     // running I
    std::vector<AuditRecord> audits;
    std::optional<long> reached_target_at; // 1-based round after which a target was first occupied
    bool budget_exhausted = false;         // poorman all-in corner: the bank absorbed everything

    long steps() const { return static_cast<long>(rounds.size()); }
    std::string to_csv(const GameGraph& g, bool exact) const;
};

struct PlayState {
    int vertex;
    long round; // 0-based
    Player me;
    const Rat& my_budget; // normalized
    const Rat& opp_budget;
    const PlayTrace* history;
};

struct Action {
    Rat bid;
    int move = 0;
};

// A playable strategy. Budgets are always normalized to total 1, so bids are
// fractions of the total. Strategy-specific audits are pushed into the trace
// through the sink installed at begin().
class Strategy {
public:
    virtual ~Strategy() = default;
    virtual std::string name() const = 0;
    virtual void begin(const GameGraph&, Player, const Rat& /*my_ratio*/, std::uint64_t /*seed*/,
                       PlayTrace* /*audit_sink*/) {}
    virtual Action act(const GameGraph& g, const PlayState& state) = 0;
    virtual void observe(const GameGraph&, const PlayState& /*post_state*/, Player /*bid_winner*/,
                         const Rat& /*winning_bid*/, int /*move*/) {}
    // active normalization-walk position, when the strategy keeps one
    virtual std::optional<double> walk_position() const { return std::nullopt; }
};

struct EngineConfig {
    long steps = 100000;
    std::uint64_t seed = 0;
    TieBreak tie = TieBreak::player1;
    int start_vertex = 0;
    bool strict_bids = false;   // abort instead of clamping an over-budget bid
    bool exact_budgets = false; // skip the 15-digit budget snap after renormalization
    bool stop_at_target = false;
};

PlayTrace run_play(const GameGraph& g, const Mechanism& mech, const Budgets& initial,
                   Strategy& strat1, Strategy& strat2, const EngineConfig& config);

// Conservative finite-horizon liminf proxy: the minimum windowed average
// over the given tail windows. Estimates, not computes, the liminf.
double estimate_payoff(const PlayTrace& trace, const GameGraph& g,
                       const std::vector<long>& tail_windows);

// Replays the ledger inequality at every prefix (rounds classified by the
// move against sol.move_max) and reports the minimum slack of
//   (nu mu/(nu+mu)) (E - P - k MP)  >=  mu I - nu G.
// g_pov must be the game the audited strategy was synthesized on (negated
// weights for a min-side strategy).
struct LedgerAudit {
    double min_slack = 0;
    long argmin_round = 0;
    double final_g = 0, final_i = 0;
};

LedgerAudit audit_energy_ledger(const PlayTrace& trace, const GameGraph& g_pov, const RtbSolution& sol,
                         double nu, double mu);

// ---- strategy construction ----------------------------------------------

// Everything an adversary may consult. mimic needs the opposing synthesized
// strategy; reach needs thresholds (computed lazily from g and tau if absent).
struct StrategyContext {
    const GameGraph* game = nullptr;
    Rat tau;
    const MaxMpStrategy* opposing_mp = nullptr;
    const RtbSolution* opposing_sol = nullptr;
    const ThresholdMap* thresholds = nullptr;
};

// Catalog names: "allin", "fraction" (= fraction:1/2), "fraction:<c>",
// "random", "mimic", "reach". Lookup is total over these names.
std::vector<std::string> builtin_adversaries();
std::unique_ptr<Strategy> make_adversary(const std::string& spec, const StrategyContext& ctx);

// Runtime players for synthesized strategies.
std::unique_ptr<Strategy> make_mp_runtime(const GameGraph& g, const MaxMpStrategy& strat);
std::unique_ptr<Strategy> make_qual_runtime(const GameGraph& g, const QualReachStrategy& strat);

// Replays the bids, moves and walk column of a recorded trace (one slot).
std::unique_ptr<Strategy> make_replay(const GameGraph& g, const std::string& trace_csv, Player slot);

struct SimReport {
    long steps = 0;
    double payoff_running = 0;
    double tail_estimate = 0;
    double window_min = 0, window_max = 0;
    std::vector<long> windows;
    std::map<std::string, long> audit_counts;
    std::uint64_t seed = 0;
    double wall_time_s = 0;
    std::optional<long> reached_target_at;
    Rat final_b1, final_b2;

    nlohmann::json to_json() const;
};

SimReport make_report(const PlayTrace& trace, const GameGraph& g, const std::vector<long>& windows,
                      double wall_time_s);

} // namespace bgg
