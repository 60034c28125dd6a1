#pragma once

#include "superrep/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace superrep {

enum class Sense { minimize, maximize };
enum class Relation { less_equal, equal, greater_equal };

struct Variable {
    std::string name;
    bool nonnegative = false;  // false means free
};

struct LpRow {
    std::vector<Rational> coefficients;  // exactly one per declared variable
    Relation relation = Relation::less_equal;
    Rational rhs;
};

/// Exact-coefficient linear program over named variables.
struct LinearProgram {
    Sense sense = Sense::minimize;
    std::vector<Variable> variables;
    std::vector<Rational> objective;  // one per variable
    std::vector<LpRow> rows;
};

/// Throws input_error on dimension mismatches.
void validate_lp(const LinearProgram& lp);

enum class LpStatus { optimal, infeasible, unbounded };

std::string to_string(LpStatus s);

/// Solve result. Exactly the fields implied by the status are populated:
///   optimal    -> value, primal_solution, dual_multipliers
///   infeasible -> infeasibility_certificate (Farkas multipliers, one per row)
///   unbounded  -> ray (direction, one entry per variable)
struct LpOutcome {
    LpStatus status = LpStatus::optimal;
    std::optional<Rational> value;
    std::optional<std::vector<Rational>> primal_solution;
    std::optional<std::vector<Rational>> dual_multipliers;
    std::optional<std::vector<Rational>> infeasibility_certificate;
    std::optional<std::vector<Rational>> ray;
};

/// Exact simplex with Bland's pivot rule. Terminates on every well-formed
/// input and returns a certificate that verify_certificate accepts.
LpOutcome solve_lp(const LinearProgram& lp);

/// a_i . x for row i of lp, evaluated exactly.
Rational row_activity(const LinearProgram& lp, std::size_t row, const std::vector<Rational>& x);

/// True iff x satisfies every row of lp and every nonnegativity flag.
bool point_feasible(const LinearProgram& lp, const std::vector<Rational>& x);

Rational objective_value(const LinearProgram& lp, const std::vector<Rational>& x);

}  // namespace superrep
