#pragma once

// Exhaustive basic-feasible-solution enumeration used as the ground-truth
// check for solve_lp. Kept independent of the simplex implementation: the LP
// is brought to standard form (free variables split, slack/surplus columns
// added), every basis of the row-reduced system is solved by a local
// Gaussian elimination, and unboundedness is decided by enumerating the
// vertices of the normalized recession cone.

#include "superrep/lp.hpp"

#include <optional>
#include <vector>

namespace oracle {

using superrep::LinearProgram;
using superrep::LpStatus;
using superrep::Rational;
using superrep::Relation;
using superrep::Sense;

struct Result {
    LpStatus status = LpStatus::optimal;
    std::optional<Rational> value;
};

struct StandardForm {
    std::vector<std::vector<Rational>> columns;  // column-major
    std::vector<Rational> cost;                  // per column, minimization
    std::vector<Rational> rhs;
    std::size_t rows = 0;
};

namespace detail {

// Row-reduces [A|b]; returns false on an inconsistent row. Zero rows are
// removed.
inline bool row_reduce(std::vector<std::vector<Rational>>& a, std::vector<Rational>& b) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t piv = rank;
        while (piv < m && a[piv][col] == 0) ++piv;
        if (piv == m) continue;
        std::swap(a[piv], a[rank]);
        std::swap(b[piv], b[rank]);
        const Rational d = a[rank][col];
        for (auto& v : a[rank]) v /= d;
        b[rank] /= d;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            const Rational f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) a[r][j] -= f * a[rank][j];
            b[r] -= f * b[rank];
        }
        ++rank;
    }
    for (std::size_t r = rank; r < m; ++r) {
        if (b[r] != 0) return false;
    }
    a.resize(rank);
    b.resize(rank);
    return true;
}

inline std::optional<std::vector<Rational>> solve_basis(
    const std::vector<std::vector<Rational>>& columns, const std::vector<std::size_t>& basis,
    const std::vector<Rational>& rhs) {
    const std::size_t m = rhs.size();
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < m; ++i) a[i][j] = columns[basis[j]][i];
    }
    std::vector<Rational> x = rhs;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        while (piv < m && a[piv][col] == 0) ++piv;
        if (piv == m) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(x[piv], x[col]);
        const Rational d = a[col][col];
        for (auto& v : a[col]) v /= d;
        x[col] /= d;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational f = a[r][col];
            for (std::size_t j = 0; j < m; ++j) a[r][j] -= f * a[col][j];
            x[r] -= f * x[col];
        }
    }
    return x;
}

// Minimum of cost over the basic feasible solutions of {columns.x = rhs,
// x >= 0}, after row reduction. nullopt when there is no BFS.
inline std::optional<Rational> best_bfs(StandardForm sf) {
    std::vector<std::vector<Rational>> rows(sf.rows,
                                            std::vector<Rational>(sf.columns.size()));
    for (std::size_t j = 0; j < sf.columns.size(); ++j) {
        for (std::size_t i = 0; i < sf.rows; ++i) rows[i][j] = sf.columns[j][i];
    }
    std::vector<Rational> b = sf.rhs;
    if (!row_reduce(rows, b)) return std::nullopt;
    const std::size_t m = rows.size();
    const std::size_t n = sf.columns.size();
    std::vector<std::vector<Rational>> cols(n, std::vector<Rational>(m));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < m; ++i) cols[j][i] = rows[i][j];
    }

    std::optional<Rational> best;
    if (m == 0) {
        return Rational(0);  // x = 0 is the only BFS of an empty system
    }
    if (n < m) return std::nullopt;
    std::vector<std::size_t> pick(m);
    for (std::size_t i = 0; i < m; ++i) pick[i] = i;
    for (;;) {
        if (auto x = solve_basis(cols, pick, b)) {
            bool nonneg = true;
            for (const auto& v : *x) {
                if (v < 0) { nonneg = false; break; }
            }
            if (nonneg) {
                Rational val = 0;
                for (std::size_t j = 0; j < m; ++j) val += sf.cost[pick[j]] * (*x)[j];
                if (!best || val < *best) best = val;
            }
        }
        std::size_t i = m;
        bool done = false;
        while (i > 0) {
            --i;
            if (pick[i] != i + n - m) {
                ++pick[i];
                for (std::size_t j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
                break;
            }
            if (i == 0) done = true;
        }
        if (done) break;
    }
    return best;
}

inline StandardForm standardize(const LinearProgram& lp) {
    StandardForm sf;
    sf.rows = lp.rows.size();
    const bool min = lp.sense == Sense::minimize;
    for (std::size_t j = 0; j < lp.variables.size(); ++j) {
        std::vector<Rational> col(sf.rows);
        for (std::size_t i = 0; i < sf.rows; ++i) col[i] = lp.rows[i].coefficients[j];
        sf.columns.push_back(col);
        sf.cost.push_back(min ? lp.objective[j] : -lp.objective[j]);
        if (!lp.variables[j].nonnegative) {
            for (auto& v : col) v = -v;
            sf.columns.push_back(std::move(col));
            sf.cost.push_back(min ? -lp.objective[j] : lp.objective[j]);
        }
    }
    for (std::size_t i = 0; i < sf.rows; ++i) {
        if (lp.rows[i].relation == Relation::equal) continue;
        std::vector<Rational> col(sf.rows, Rational(0));
        col[i] = lp.rows[i].relation == Relation::less_equal ? 1 : -1;
        sf.columns.push_back(std::move(col));
        sf.cost.push_back(Rational(0));
    }
    for (const auto& row : lp.rows) sf.rhs.push_back(row.rhs);
    return sf;
}

}  // namespace detail

inline Result solve(const LinearProgram& lp) {
    const StandardForm sf = detail::standardize(lp);

    const std::optional<Rational> best = detail::best_bfs(sf);
    if (!best) return {LpStatus::infeasible, std::nullopt};

    // Normalized recession cone: { A d = 0, sum d = 1, d >= 0 }. Any vertex
    // with negative cost certifies unboundedness.
    StandardForm cone = sf;
    for (auto& col : cone.columns) col.push_back(Rational(1));
    cone.rhs.assign(sf.rows, Rational(0));
    cone.rhs.push_back(Rational(1));
    ++cone.rows;
    const std::optional<Rational> ray = detail::best_bfs(cone);
    if (ray && *ray < 0) return {LpStatus::unbounded, std::nullopt};

    const bool min = lp.sense == Sense::minimize;
    return {LpStatus::optimal, min ? *best : -*best};
}

}  // namespace oracle
