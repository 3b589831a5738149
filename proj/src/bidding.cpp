#include "bgg/bidding.hpp"

namespace bgg {

Budgets apply_bidding_outcome(const Budgets& budgets, const Mechanism& mech, Player winner,
                              const Rat& bid) {
    if (bid < 0) throw ContractError("bid must be non-negative");
    if (bid > budgets.of(winner))
        throw ContractError("illegal bid by player " +
                            std::to_string(static_cast<int>(winner)) + ": bid " +
                            rat_to_fraction(bid) + " exceeds budget " +
                            rat_to_fraction(budgets.of(winner)));
    Rat gain = mech.tau * bid;
    if (winner == Player::one) return Budgets(budgets.b1 - bid, budgets.b2 + gain);
    return Budgets(budgets.b1 + gain, budgets.b2 - bid);
}

} // namespace bgg
