#pragma once

#include "superrep/lp.hpp"

#include <string>
#include <vector>

namespace superrep {

enum class PolyRelation { less_equal, equal };

struct PolyRow {
    std::vector<Rational> coefficients;
    PolyRelation relation = PolyRelation::less_equal;
    Rational rhs;
};

/// Inequality description of a polyhedron over named variables.
struct HPolytope {
    std::vector<std::string> variables;
    std::vector<PolyRow> rows;
};

/// Scales a row to integer coefficients with gcd 1 (rhs included in the
/// scaling); equality rows get a positive leading coefficient.
void canonicalize_row(PolyRow& row);

/// Scales to integer coefficients without dividing out common factors, so
/// constructed rows keep their natural magnitudes.
void clear_denominators(PolyRow& row);

/// Exact projection onto the complement of `eliminate`, one variable at a
/// time: equalities containing the variable are used as substitutions,
/// otherwise opposing inequality pairs are combined. Tautologies, syntactic
/// duplicates and pairwise-dominated rows are removed; an inconsistency
/// collapses the output to the single marker row 0 <= -1. When
/// deep_redundancy is set, rows proved redundant by an exact LP are removed
/// as well.
HPolytope fourier_motzkin_project(const HPolytope& p,
                                  const std::vector<std::string>& eliminate,
                                  bool deep_redundancy = false);

/// True iff the system contains a constant row that cannot hold.
bool has_contradiction_row(const HPolytope& p);

bool point_in_polytope(const HPolytope& p, const std::vector<Rational>& x);

/// Feasibility / optimization over the polytope as an LP with free variables
/// (any sign restriction must be present as an explicit row).
LinearProgram polytope_lp(const HPolytope& p, Sense sense, const std::vector<Rational>& objective);
bool polytope_feasible(const HPolytope& p);

/// Exhaustive vertex enumeration (intended for small systems): every vertex
/// is the unique solution of some n tight rows and satisfies all rows.
std::vector<std::vector<Rational>> enumerate_vertices(const HPolytope& p);

}  // namespace superrep
