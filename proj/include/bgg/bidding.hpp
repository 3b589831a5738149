#pragma once

#include "bgg/errors.hpp"
#include "bgg/rational.hpp"

namespace bgg {

enum class Player : int { one = 1, two = 2 };

inline Player opponent(Player p) { return p == Player::one ? Player::two : Player::one; }

// Taxman parameter, canonical convention: the winner pays fraction tau of the
// bid to the loser and 1-tau to the bank. tau = 1 is Richman, tau = 0 poorman.
struct Mechanism {
    Rat tau;

    explicit Mechanism(Rat t) : tau(std::move(t)) {
        if (tau < 0 || tau > 1) throw ContractError("taxman parameter must lie in [0,1]");
    }
    static Mechanism richman() { return Mechanism(Rat(1)); }
    static Mechanism poorman() { return Mechanism(Rat(0)); }
};

struct Budgets {
    Rat b1, b2;

    Budgets(Rat a, Rat b) : b1(std::move(a)), b2(std::move(b)) {
        if (b1 < 0 || b2 < 0) throw ContractError("budgets must be non-negative");
        if (b1 + b2 == 0) throw ContractError("total budget must be positive");
    }
    Rat total() const { return b1 + b2; }
    Rat ratio1() const { return b1 / total(); }
    Rat ratio2() const { return b2 / total(); }
    Rat of(Player p) const { return p == Player::one ? b1 : b2; }
};

// Winner pays the full bid, loser receives tau*bid; the bank absorbs the
// rest, so the total shrinks by (1-tau)*bid. Exact.
Budgets apply_bidding_outcome(const Budgets& budgets, const Mechanism& mech, Player winner,
                              const Rat& bid);

} // namespace bgg
