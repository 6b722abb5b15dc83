#include "cmccp/cost_model.hpp"

#include <stdexcept>
#include <string>

namespace cmccp {

std::string_view to_string(Policy p) { return p == Policy::coc ? "coc" : "eoc"; }

Policy parse_policy(std::string_view text) {
    if (text == "coc") return Policy::coc;
    if (text == "eoc") return Policy::eoc;
    throw std::invalid_argument("unknown policy '" + std::string(text) + "' (expected coc or eoc)");
}

namespace {

void check(int labels, int players) {
    if (labels < 1) throw std::invalid_argument("M must be >= 1");
    if (players < 1) throw std::invalid_argument("P must be >= 1");
}

}  // namespace

double expected_transfers(int labels, int players) {
    check(labels, players);
    return labels * (players - 1) / 2.0;
}

double expected_requests(int labels, int players) {
    check(labels, players);
    return labels * (static_cast<double>(players) * players - 1) / 6.0;
}

double expected_offers(int labels, int players, int lot, double b_goal) {
    check(labels, players);
    return b_goal * lot - labels * (players + 1) / 2.0;
}

CostReport coc_costs(int players, int labels, int lot, double b_goal) {
    return {expected_offers(labels, players, lot, b_goal), expected_requests(labels, players),
            expected_transfers(labels, players), Policy::coc, CostBasis::exact};
}

}  // namespace cmccp
