#pragma once

#include "superrep/scenario.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace superrep {

/// Discounted financial market: asset 0 is the bond (price identically 1),
/// prices are adapted to the full filtration F, the seller observes the
/// coarser filtration G, and holdings of assets in short_restricted must stay
/// nonnegative (including the bond bans borrowing).
struct Market {
    ScenarioSpace space;
    std::size_t horizon = 1;
    std::vector<std::string> asset_names;  // index 0 = bond
    std::vector<Process> prices;           // one per asset
    Filtration full_filtration;
    Filtration seller_filtration;
    std::set<std::size_t> short_restricted;
};

struct ValidationIssue {
    std::string check;
    std::string witness;
};

struct ValidationReport {
    std::vector<std::string> passed;
    std::vector<ValidationIssue> failed;
    bool ok() const { return failed.empty(); }
};

ValidationReport validate_market(const Market& m);

/// Throws input_error carrying the first validation failure.
void require_valid(const Market& m);

/// Nonnegative terminal payoff, one value per scenario.
class Claim {
public:
    explicit Claim(std::vector<Rational> payoff);
    const std::vector<Rational>& payoff() const { return payoff_; }
    const Rational& operator[](std::size_t scenario) const { return payoff_[scenario]; }
    std::size_t size() const { return payoff_.size(); }

private:
    std::vector<Rational> payoff_;
};

/// Holdings indexed by (time, block of the seller partition at that time,
/// asset); adaptedness to G is structural.
struct TradingStrategy {
    // holdings[t][block][asset]
    std::vector<std::vector<std::vector<Rational>>> holdings;

    const Rational& at(std::size_t t, std::size_t block, std::size_t asset) const {
        return holdings[t][block][asset];
    }
};

TradingStrategy zero_strategy(const Market& m);

/// S(t,w) . H(t', block_of(w)) for the seller-filtration block at time t'.
Rational portfolio_value(const Market& m, const TradingStrategy& h, std::size_t price_time,
                         std::size_t holding_time, std::size_t scenario);

Rational initial_cost(const Market& m, const TradingStrategy& h);
std::vector<Rational> terminal_values(const Market& m, const TradingStrategy& h);

struct AuditItem {
    std::string constraint;  // superreplication | self_financing | no_short | budget
    std::string location;
    Rational lhs, rhs;
    bool passed = false;
};

struct AuditReport {
    std::vector<AuditItem> items;
    bool all_passed() const;
    bool constraint_passed(const std::string& name) const;
};

/// Checks, exactly: (i) S(T).H(T-1) >= B per scenario; (ii) S(t).dH(t) = 0
/// for t = 1..T-1 per scenario; (iii) H_j(t) >= 0 on every seller atom for
/// j in short_restricted; (iv) S(0).H(0) <= v.
AuditReport strategy_audit(const Market& m, const TradingStrategy& h, const Claim& b,
                           const Rational& v);

struct ArbitrageWitness {
    TradingStrategy strategy;
    Rational initial_cost;
    std::vector<Rational> terminal_gains;
    Rational expected_gain;
};

struct ArbitrageResult {
    bool found = false;
    std::optional<ArbitrageWitness> witness;
};

/// Searches for a self-financing G-adapted strategy with nonpositive initial
/// cost, nonnegative terminal value and positive expected terminal value,
/// within box bounds |H| <= 1. With respect_constraints the short-sale set is
/// honored.
ArbitrageResult arbitrage_search(const Market& m, bool respect_constraints);

struct HoldingKey {
    std::size_t t, block, asset;
};

/// Flat ordering (t, seller atom, asset) of the holding variables of a
/// G-adapted strategy; shared by the arbitrage and pricing LPs.
class HoldingIndex {
public:
    explicit HoldingIndex(const Market& m);
    std::size_t count() const { return keys_.size(); }
    const std::vector<HoldingKey>& keys() const { return keys_; }
    std::size_t at(std::size_t t, std::size_t block, std::size_t asset) const {
        return index_[t][block][asset];
    }

private:
    std::vector<HoldingKey> keys_;
    std::vector<std::vector<std::vector<std::size_t>>> index_;
};

std::string holding_variable_name(const Market& m, const HoldingKey& k);

TradingStrategy strategy_from_values(const Market& m, const HoldingIndex& idx,
                                     const std::vector<Rational>& values, std::size_t offset);

}  // namespace superrep
