#pragma once

#include <string_view>

namespace cmccp {

enum class Policy { coc, eoc };

std::string_view to_string(Policy p);
/// Accepts "coc" or "eoc"; throws std::invalid_argument otherwise.
Policy parse_policy(std::string_view text);

enum class CostBasis { exact, simulated };

/// Per-game protocol costs, in coupons (requests count coupon-player pairs).
struct CostReport {
    double offers = 0;
    double requests = 0;
    double transfers = 0;
    Policy policy = Policy::coc;
    CostBasis basis = CostBasis::exact;
};

/// M(P-1)/2, whatever the lot statistics.
double expected_transfers(int labels, int players);
/// M(P^2-1)/6, whatever the lot statistics.
double expected_requests(int labels, int players);
/// b_goal L - M(P+1)/2, for b_goal of the same continue-on-completion game.
double expected_offers(int labels, int players, int lot, double b_goal);

/// Exact continue-on-completion report. For exit-on-completion these are upper bounds.
CostReport coc_costs(int players, int labels, int lot, double b_goal);

}  // namespace cmccp
