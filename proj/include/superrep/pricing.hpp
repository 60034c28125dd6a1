#pragma once

#include "superrep/market.hpp"
#include "superrep/polytope.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace superrep {

/// Feasible point of the conjugate-dual program: y1 >= 0 per scenario and a
/// free y2^t per scenario for each interior time t = 1..T-1.
struct DualSolution {
    std::vector<Rational> y1;
    std::vector<std::vector<Rational>> y2;  // y2[t-1][scenario]
};

struct PrimalBuild {
    LinearProgram lp;                  // variable 0 is the price v
    std::vector<HoldingKey> holdings;  // keys for variables 1..n
};

/// The seller's superreplication LP: minimize v over G-adapted holdings with
/// per-scenario superreplication rows, per-F-atom self-financing rows
/// (syntactic duplicates removed), nonnegativity flags on short-restricted
/// holdings, the budget row S(0).H(0) <= v, and the reduction row
/// S(0).H(0) >= 0.
PrimalBuild build_primal_lp(const Market& m, const Claim& b);

struct DualVarKey {
    bool is_y1;
    std::size_t t;  // meaningful for y2 only
    std::size_t scenario;
};

struct DualBuild {
    LinearProgram lp;
    std::vector<DualVarKey> keys;  // one per variable
};

/// The conjugate-dual LP: maximize E[y1 B] subject to, for every asset and
/// every seller atom A at t = 0..T-1, the P-weighted one-step row linking the
/// y-weights at t and t+1; the relation is an equality for unrestricted
/// assets and >= (current side) for short-restricted ones.
DualBuild build_dual_lp(const Market& m, const Claim& b);

/// Flattens d in the variable order used by build_dual_lp.
std::vector<Rational> dual_vector(const Market& m, const DualSolution& d);
DualSolution dual_solution_from_vector(const Market& m, const std::vector<Rational>& x);

enum class MeasureRowKind { normalization, nonnegativity, price };

struct MeasureRowTag {
    MeasureRowKind kind = MeasureRowKind::price;
    std::size_t scenario = 0;              // nonnegativity rows
    std::size_t asset = 0, t = 0, block = 0;  // price rows
    PolyRelation relation = PolyRelation::less_equal;
};

/// H-representation of the mixed martingale / super-martingale measure set
/// over variables q1..qN (scenario order): normalization, nonnegativity, and
/// one-step rows sum_{w in A} q(w) (S_i(t+1,w) - S_i(t,w)) {= | <=} 0 per
/// asset, time and seller atom. Rows that reduce to 0 {=|<=} 0 are dropped.
/// Multi-step conditions are implied through the tower property and are
/// checked independently by check_membership.
struct MeasurePolytope {
    HPolytope description;
    std::vector<MeasureRowTag> tags;  // parallel to description.rows
};

MeasurePolytope build_measure_polytope(const Market& m);

enum class PriceMethod { primal, dual_lp, measures };

std::string to_string(PriceMethod m);

struct PriceResult {
    PriceMethod method = PriceMethod::primal;
    LpOutcome outcome;
    bool arbitrage_detected = false;          // unbounded superreplication problem
    std::optional<TradingStrategy> strategy;  // primal, when optimal
    std::optional<DualSolution> dual;         // dual_lp, when optimal
    std::optional<Measure> measure;           // measures, when optimal
};

/// Builds and solves the designated problem. Meaningful as a price only when
/// arbitrage_search(m, true) reports none; callers gate on that.
PriceResult price(const Market& m, const Claim& b, PriceMethod method);

/// Q(w) = P(w) y1(w) / sum P y1. Throws input_error when the mass is zero.
/// With the bond unrestricted the dual rows force sum P y1 = 1, so no
/// rescaling occurs.
Measure measure_from_dual(const Market& m, const DualSolution& d);

/// y1 = dQ/dP scenario-wise, y2^t the P-conditional expectation of y1 on F_t.
DualSolution dual_from_measure(const Market& m, const Measure& q);

struct MembershipViolation {
    std::size_t asset, t, k, block;
    Rational lhs, rhs;  // E_q[S(t+k)|G_t] vs E_q[S(t)|G_t] on the atom
    bool equality_required;
};

struct MembershipReport {
    std::vector<MembershipViolation> violations;
    bool member() const { return violations.empty(); }
};

/// Full-definition membership check: every (asset, t, k >= 1) with t+k <= T
/// on every seller atom, via conditional expectations under q with the
/// zero-mass convention.
MembershipReport check_membership(const Market& m, const Measure& q);

struct PricingReport {
    std::string claim_id;
    bool arbitrage_detected = false;
    std::optional<PriceResult> primal, dual_lp, measure_lp;
    std::optional<Rational> gap_primal_dual, gap_dual_measure, gap_primal_measure;
    std::optional<bool> primal_equals_dual;
    std::optional<bool> dual_equals_measure;
    std::optional<bool> strategy_audit_ok;
    std::optional<bool> primal_certificate_ok, dual_certificate_ok, measure_certificate_ok;
    std::optional<bool> measure_from_dual_in_set;
    std::optional<bool> measure_from_dual_objective_preserved;
    std::optional<bool> dual_from_measure_feasible;
    std::optional<bool> dual_from_measure_objective_preserved;
};

/// Runs all three methods per claim, cross-validates every certificate, and
/// records exact gaps. When the constrained arbitrage search finds a
/// strategy, reports carry arbitrage_detected instead of prices.
std::vector<PricingReport> full_report(const Market& m,
                                       const std::vector<std::pair<std::string, Claim>>& claims);

}  // namespace superrep
