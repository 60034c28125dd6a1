#include "superrep/polytope.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>

namespace superrep {

namespace {

bool all_zero(const std::vector<Rational>& v) {
    for (const auto& c : v) {
        if (c != 0) return false;
    }
    return true;
}

// tautology if trivially true constant row, contradiction if trivially false
enum class RowTriviality { none, tautology, contradiction };

RowTriviality classify_constant(const PolyRow& row) {
    if (!all_zero(row.coefficients)) return RowTriviality::none;
    if (row.relation == PolyRelation::less_equal) {
        return row.rhs >= 0 ? RowTriviality::tautology : RowTriviality::contradiction;
    }
    return row.rhs == 0 ? RowTriviality::tautology : RowTriviality::contradiction;
}

HPolytope empty_marker(std::vector<std::string> variables) {
    HPolytope p;
    p.variables = std::move(variables);
    PolyRow r;
    r.coefficients.assign(p.variables.size(), Rational(0));
    r.relation = PolyRelation::less_equal;
    r.rhs = -1;
    p.rows.push_back(std::move(r));
    return p;
}

// Removes exact duplicates and rows dominated by another row with the same
// left-hand side. Returns false if a same-LHS pair is outright inconsistent.
bool dominance_prune(std::vector<PolyRow>& rows) {
    std::map<std::vector<Rational>, std::optional<Rational>> best_le;  // LHS -> min rhs
    std::map<std::vector<Rational>, std::optional<Rational>> eq_rhs;
    for (const auto& r : rows) {
        if (r.relation == PolyRelation::equal) {
            auto& slot = eq_rhs[r.coefficients];
            if (slot && *slot != r.rhs) return false;
            slot = r.rhs;
        } else {
            auto& slot = best_le[r.coefficients];
            if (!slot || r.rhs < *slot) slot = r.rhs;
        }
    }
    for (const auto& [lhs, rhs] : eq_rhs) {
        auto it = best_le.find(lhs);
        if (it == best_le.end() || !it->second) continue;
        if (*rhs > *it->second) return false;  // a = r and a <= d < r
        best_le.erase(it);                     // the equality implies the <=
    }
    std::vector<PolyRow> out;
    std::set<std::vector<Rational>> emitted_eq, emitted_le;
    for (const auto& r : rows) {
        if (r.relation == PolyRelation::equal) {
            if (emitted_eq.insert(r.coefficients).second) out.push_back(r);
        } else {
            auto it = best_le.find(r.coefficients);
            if (it == best_le.end() || r.rhs != *it->second) continue;
            if (emitted_le.insert(r.coefficients).second) out.push_back(r);
        }
    }
    rows = std::move(out);
    return true;
}

// Eliminates column k (index into p.variables) and returns the rows over the
// remaining columns, or nullopt if a contradiction surfaced.
std::optional<std::vector<PolyRow>> eliminate_column(const std::vector<PolyRow>& rows,
                                                     std::size_t k) {
    std::vector<PolyRow> work;

    int subst = -1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].relation == PolyRelation::equal && rows[i].coefficients[k] != 0) {
            subst = static_cast<int>(i);
            break;
        }
    }
    if (subst >= 0) {
        const PolyRow& eq = rows[subst];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == static_cast<std::size_t>(subst)) continue;
            PolyRow r = rows[i];
            const Rational f = r.coefficients[k] / eq.coefficients[k];
            if (f != 0) {
                for (std::size_t j = 0; j < r.coefficients.size(); ++j) {
                    r.coefficients[j] -= f * eq.coefficients[j];
                }
                r.rhs -= f * eq.rhs;
            }
            work.push_back(std::move(r));
        }
    } else {
        std::vector<const PolyRow*> pos, neg;
        for (const auto& r : rows) {
            if (r.coefficients[k] == 0) {
                work.push_back(r);
            } else if (r.coefficients[k] > 0) {
                pos.push_back(&r);
            } else {
                neg.push_back(&r);
            }
        }
        for (const PolyRow* p_row : pos) {
            for (const PolyRow* n_row : neg) {
                PolyRow r;
                r.relation = PolyRelation::less_equal;
                r.coefficients.resize(p_row->coefficients.size());
                const Rational fp = p_row->coefficients[k];
                const Rational fn = -n_row->coefficients[k];
                for (std::size_t j = 0; j < r.coefficients.size(); ++j) {
                    r.coefficients[j] =
                        p_row->coefficients[j] / fp + n_row->coefficients[j] / fn;
                }
                r.rhs = p_row->rhs / fp + n_row->rhs / fn;
                work.push_back(std::move(r));
            }
        }
    }

    std::vector<PolyRow> out;
    for (auto& r : work) {
        r.coefficients.erase(r.coefficients.begin() + static_cast<std::ptrdiff_t>(k));
        canonicalize_row(r);
        switch (classify_constant(r)) {
            case RowTriviality::contradiction: return std::nullopt;
            case RowTriviality::tautology: continue;
            case RowTriviality::none: out.push_back(std::move(r)); break;
        }
    }
    if (!dominance_prune(out)) return std::nullopt;
    return out;
}

void deep_redundancy_prune(HPolytope& p) {
    if (!polytope_feasible(p)) {
        p = empty_marker(p.variables);
        return;
    }
    for (std::size_t i = 0; i < p.rows.size();) {
        HPolytope rest = p;
        rest.rows.erase(rest.rows.begin() + static_cast<std::ptrdiff_t>(i));
        const PolyRow& r = p.rows[i];
        const LpOutcome hi = solve_lp(polytope_lp(rest, Sense::maximize, r.coefficients));
        bool redundant =
            hi.status == LpStatus::optimal && *hi.value <= r.rhs;
        if (redundant && r.relation == PolyRelation::equal) {
            const LpOutcome lo = solve_lp(polytope_lp(rest, Sense::minimize, r.coefficients));
            redundant = lo.status == LpStatus::optimal && *lo.value >= r.rhs;
        }
        if (redundant) {
            p.rows.erase(p.rows.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
}

// Unique solution of the square system rows(tight) restricted to p's columns,
// or nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        const Rational d = a[col][col];
        for (auto& v : a[col]) v /= d;
        b[col] /= d;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) a[r][j] -= f * a[col][j];
            b[r] -= f * b[col];
        }
    }
    return b;
}

}  // namespace

void clear_denominators(PolyRow& row) {
    Integer l = 1;
    for (const auto& c : row.coefficients) l = lcm(l, denominator(c));
    l = lcm(l, denominator(row.rhs));
    if (l != 1) {
        for (auto& c : row.coefficients) c *= l;
        row.rhs *= l;
    }
    if (row.relation == PolyRelation::equal) {
        for (const auto& c : row.coefficients) {
            if (c == 0) continue;
            if (c < 0) {
                for (auto& v : row.coefficients) v = -v;
                row.rhs = -row.rhs;
            }
            break;
        }
    }
}

void canonicalize_row(PolyRow& row) {
    Integer l = 1;
    for (const auto& c : row.coefficients) l = lcm(l, denominator(c));
    if (l != 1) {
        for (auto& c : row.coefficients) c *= l;
        row.rhs *= l;
    }
    // normalize by the coefficient gcd only, so proportional rows coincide
    // and dominance pruning can act on them; the rhs may turn fractional
    Integer g = 0;
    for (const auto& c : row.coefficients) g = gcd(g, numerator(c));
    if (g < 0) g = -g;
    if (g > 1) {
        for (auto& c : row.coefficients) c /= g;
        row.rhs /= g;
    }
    if (row.relation == PolyRelation::equal) {
        for (const auto& c : row.coefficients) {
            if (c == 0) continue;
            if (c < 0) {
                for (auto& v : row.coefficients) v = -v;
                row.rhs = -row.rhs;
            }
            break;
        }
    }
}

bool has_contradiction_row(const HPolytope& p) {
    for (const auto& r : p.rows) {
        if (classify_constant(r) == RowTriviality::contradiction) return true;
    }
    return false;
}

HPolytope fourier_motzkin_project(const HPolytope& p,
                                  const std::vector<std::string>& eliminate,
                                  bool deep_redundancy) {
    std::set<std::size_t> drop;
    for (const auto& name : eliminate) {
        const auto it = std::find(p.variables.begin(), p.variables.end(), name);
        if (it == p.variables.end()) {
            throw input_error("unknown variable to eliminate: '" + name + "'");
        }
        drop.insert(static_cast<std::size_t>(it - p.variables.begin()));
    }

    std::vector<std::string> kept;
    for (std::size_t j = 0; j < p.variables.size(); ++j) {
        if (!drop.count(j)) kept.push_back(p.variables[j]);
    }

    std::vector<std::string> current_vars = p.variables;
    std::vector<PolyRow> rows = p.rows;
    for (auto& r : rows) canonicalize_row(r);
    {
        std::vector<PolyRow> cleaned;
        for (auto& r : rows) {
            switch (classify_constant(r)) {
                case RowTriviality::contradiction: return empty_marker(kept);
                case RowTriviality::tautology: continue;
                case RowTriviality::none: cleaned.push_back(std::move(r)); break;
            }
        }
        rows = std::move(cleaned);
        if (!dominance_prune(rows)) return empty_marker(kept);
    }

    for (const auto& name : eliminate) {
        const auto it = std::find(current_vars.begin(), current_vars.end(), name);
        if (it == current_vars.end()) continue;  // duplicate in the eliminate list
        const std::size_t k = static_cast<std::size_t>(it - current_vars.begin());
        auto next = eliminate_column(rows, k);
        current_vars.erase(it);
        if (!next) return empty_marker(kept);
        rows = std::move(*next);
    }

    HPolytope out;
    out.variables = std::move(current_vars);
    out.rows = std::move(rows);
    if (deep_redundancy) deep_redundancy_prune(out);
    return out;
}

bool point_in_polytope(const HPolytope& p, const std::vector<Rational>& x) {
    if (x.size() != p.variables.size()) {
        throw input_error("point dimension does not match polytope");
    }
    for (const auto& r : p.rows) {
        Rational acc = 0;
        for (std::size_t j = 0; j < x.size(); ++j) acc += r.coefficients[j] * x[j];
        if (r.relation == PolyRelation::equal ? acc != r.rhs : acc > r.rhs) return false;
    }
    return true;
}

LinearProgram polytope_lp(const HPolytope& p, Sense sense, const std::vector<Rational>& objective) {
    if (objective.size() != p.variables.size()) {
        throw input_error("objective dimension does not match polytope");
    }
    LinearProgram lp;
    lp.sense = sense;
    for (const auto& name : p.variables) lp.variables.push_back({name, false});
    lp.objective = objective;
    for (const auto& r : p.rows) {
        LpRow row;
        row.coefficients = r.coefficients;
        row.relation = r.relation == PolyRelation::equal ? Relation::equal : Relation::less_equal;
        row.rhs = r.rhs;
        lp.rows.push_back(std::move(row));
    }
    return lp;
}

bool polytope_feasible(const HPolytope& p) {
    const std::vector<Rational> zero(p.variables.size(), Rational(0));
    return solve_lp(polytope_lp(p, Sense::minimize, zero)).status == LpStatus::optimal;
}

std::vector<std::vector<Rational>> enumerate_vertices(const HPolytope& p) {
    const std::size_t n = p.variables.size();
    const std::size_t m = p.rows.size();
    std::vector<std::vector<Rational>> vertices;
    if (n == 0 || m < n) return vertices;
    std::vector<std::size_t> pick(n);
    for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    for (;;) {
        std::vector<std::vector<Rational>> a;
        std::vector<Rational> b;
        for (std::size_t i : pick) {
            a.push_back(p.rows[i].coefficients);
            b.push_back(p.rows[i].rhs);
        }
        if (auto x = solve_square(std::move(a), std::move(b))) {
            if (point_in_polytope(p, *x) &&
                std::find(vertices.begin(), vertices.end(), *x) == vertices.end()) {
                vertices.push_back(std::move(*x));
            }
        }
        // next combination
        std::size_t i = n;
        while (i > 0) {
            --i;
            if (pick[i] != i + m - n) {
                ++pick[i];
                for (std::size_t j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
                break;
            }
            if (i == 0) return vertices;
        }
    }
}

}  // namespace superrep
