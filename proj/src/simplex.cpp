#include "superrep/lp.hpp"

#include <algorithm>
#include <cstddef>
#include <limits>

namespace superrep {

void validate_lp(const LinearProgram& lp) {
    const std::size_t n = lp.variables.size();
    if (lp.objective.size() != n) {
        throw input_error("objective has " + std::to_string(lp.objective.size()) +
                          " coefficients for " + std::to_string(n) + " variables");
    }
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        if (lp.rows[i].coefficients.size() != n) {
            throw input_error("row " + std::to_string(i) + " has " +
                              std::to_string(lp.rows[i].coefficients.size()) +
                              " coefficients for " + std::to_string(n) + " variables");
        }
    }
}

Rational row_activity(const LinearProgram& lp, std::size_t row, const std::vector<Rational>& x) {
    Rational acc = 0;
    const auto& r = lp.rows[row];
    for (std::size_t j = 0; j < r.coefficients.size(); ++j) acc += r.coefficients[j] * x[j];
    return acc;
}

bool point_feasible(const LinearProgram& lp, const std::vector<Rational>& x) {
    if (x.size() != lp.variables.size()) return false;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (lp.variables[j].nonnegative && x[j] < 0) return false;
    }
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        const Rational a = row_activity(lp, i, x);
        switch (lp.rows[i].relation) {
            case Relation::less_equal:    if (a > lp.rows[i].rhs) return false; break;
            case Relation::equal:         if (a != lp.rows[i].rhs) return false; break;
            case Relation::greater_equal: if (a < lp.rows[i].rhs) return false; break;
        }
    }
    return true;
}

Rational objective_value(const LinearProgram& lp, const std::vector<Rational>& x) {
    Rational acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += lp.objective[j] * x[j];
    return acc;
}

std::string to_string(LpStatus s) {
    switch (s) {
        case LpStatus::optimal:    return "optimal";
        case LpStatus::infeasible: return "infeasible";
        case LpStatus::unbounded:  return "unbounded";
    }
    return "?";
}

namespace {

// Internal standardization: user rows become <= / = rows (>= is negated),
// each <= row gets a slack, each row without a feasible initial slack gets a
// signed artificial column. Free structural variables stay free; the tableau
// lets them enter in either direction and, once basic, they never block a
// ratio test, so they never leave.
class SimplexTableau {
public:
    explicit SimplexTableau(const LinearProgram& lp) : lp_(lp) {
        n_ = lp.variables.size();
        m_ = lp.rows.size();
        minimize_ = lp.sense == Sense::minimize;

        cost_.assign(n_, Rational(0));
        for (std::size_t j = 0; j < n_; ++j) {
            cost_[j] = minimize_ ? lp.objective[j] : -lp.objective[j];
        }

        // rho_[i]: +1 if internal row i equals user row i, -1 if negated.
        rho_.assign(m_, 1);
        std::vector<std::vector<Rational>> a(m_);
        std::vector<Rational> b(m_);
        std::vector<bool> is_eq(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            a[i] = lp.rows[i].coefficients;
            b[i] = lp.rows[i].rhs;
            is_eq[i] = lp.rows[i].relation == Relation::equal;
            if (lp.rows[i].relation == Relation::greater_equal) {
                rho_[i] = -1;
                for (auto& c : a[i]) c = -c;
                b[i] = -b[i];
            }
        }

        // Column layout: structural | slacks | artificials.
        slack_col_.assign(m_, -1);
        art_col_.assign(m_, -1);
        art_sign_.assign(m_, Rational(1));
        std::size_t cols = n_;
        for (std::size_t i = 0; i < m_; ++i) {
            if (!is_eq[i]) slack_col_[i] = static_cast<int>(cols++);
        }
        first_art_ = cols;
        for (std::size_t i = 0; i < m_; ++i) {
            const bool slack_start = !is_eq[i] && b[i] >= 0;
            if (!slack_start) {
                art_col_[i] = static_cast<int>(cols++);
                art_sign_[i] = b[i] >= 0 ? Rational(1) : Rational(-1);
            }
        }
        ncols_ = cols;

        nonneg_.assign(ncols_, true);
        for (std::size_t j = 0; j < n_; ++j) nonneg_[j] = lp.variables[j].nonnegative;

        tab_.assign(m_, std::vector<Rational>(ncols_ + 1, Rational(0)));
        basis_.assign(m_, -1);
        row_alive_.assign(m_, true);
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) tab_[i][j] = a[i][j];
            if (slack_col_[i] >= 0) tab_[i][slack_col_[i]] = 1;
            if (art_col_[i] >= 0) tab_[i][art_col_[i]] = art_sign_[i];
            tab_[i][ncols_] = b[i];
            if (art_col_[i] >= 0) {
                basis_[i] = art_col_[i];
                if (art_sign_[i] < 0) {
                    for (auto& v : tab_[i]) v = -v;
                }
            } else {
                basis_[i] = slack_col_[i];
            }
        }
    }

    LpOutcome run() {
        if (first_art_ < ncols_ && !phase_one()) {
            return infeasible_outcome();
        }
        drop_remaining_artificials();
        build_z_row(phase2_cost());
        bar_artificials_ = true;
        const PivotResult r = optimize();
        if (r.unbounded) return unbounded_outcome(r.entering, r.direction);
        return optimal_outcome();
    }

private:
    struct PivotResult {
        bool unbounded = false;
        std::size_t entering = 0;
        int direction = 1;
    };

    std::vector<Rational> phase1_cost() const {
        std::vector<Rational> c(ncols_, Rational(0));
        for (std::size_t j = first_art_; j < ncols_; ++j) c[j] = 1;
        return c;
    }

    std::vector<Rational> phase2_cost() const {
        std::vector<Rational> c(ncols_, Rational(0));
        for (std::size_t j = 0; j < n_; ++j) c[j] = cost_[j];
        return c;
    }

    void build_z_row(const std::vector<Rational>& c) {
        col_cost_ = c;
        z_.assign(ncols_ + 1, Rational(0));
        for (std::size_t j = 0; j <= ncols_; ++j) z_[j] = j < ncols_ ? c[j] : Rational(0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (!row_alive_[i]) continue;
            const Rational cb = c[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= ncols_; ++j) z_[j] -= cb * tab_[i][j];
        }
    }

    bool phase_one() {
        build_z_row(phase1_cost());
        bar_artificials_ = false;
        const PivotResult r = optimize();
        if (r.unbounded) {
            // The phase-1 objective is bounded below by zero.
            throw std::logic_error("phase 1 reported unbounded");
        }
        // Phase-1 objective value is -z_[rhs].
        return -z_[ncols_] == 0;
    }

    // After a successful phase 1, pivot zero-valued artificials out of the
    // basis; rows whose real part vanished are linearly dependent and are
    // dropped (their dual multiplier is zero).
    void drop_remaining_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (!row_alive_[i]) continue;
            if (static_cast<std::size_t>(basis_[i]) < first_art_) continue;
            int col = -1;
            for (std::size_t j = 0; j < first_art_; ++j) {
                if (tab_[i][j] != 0) { col = static_cast<int>(j); break; }
            }
            if (col >= 0) {
                pivot(i, static_cast<std::size_t>(col));
            } else {
                row_alive_[i] = false;
            }
        }
    }

    PivotResult optimize() {
        for (;;) {
            // Bland: first improving column by index.
            std::size_t enter = ncols_;
            int dir = 1;
            for (std::size_t j = 0; j < ncols_; ++j) {
                if (is_basic(j)) continue;
                if (bar_artificials_ && j >= first_art_) continue;
                const Rational& rj = z_[j];
                if (nonneg_[j]) {
                    if (rj < 0) { enter = j; dir = 1; break; }
                } else if (rj != 0) {
                    enter = j;
                    dir = rj > 0 ? -1 : 1;
                    break;
                }
            }
            if (enter == ncols_) return {};

            // Ratio test: only nonnegative basic variables block.
            bool have = false;
            Rational best;
            std::size_t leave = 0;
            for (std::size_t i = 0; i < m_; ++i) {
                if (!row_alive_[i]) continue;
                if (!nonneg_[basis_[i]]) continue;
                const Rational step = Rational(dir) * tab_[i][enter];
                if (step <= 0) continue;
                const Rational theta = tab_[i][ncols_] / step;
                if (!have || theta < best ||
                    (theta == best && basis_[i] < basis_[leave])) {
                    have = true;
                    best = theta;
                    leave = i;
                }
            }
            if (!have) {
                PivotResult r;
                r.unbounded = true;
                r.entering = enter;
                r.direction = dir;
                return r;
            }
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t row, std::size_t col) {
        const Rational p = tab_[row][col];
        for (auto& v : tab_[row]) v /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row || !row_alive_[i]) continue;
            const Rational f = tab_[i][col];
            if (f == 0) continue;
            for (std::size_t j = 0; j <= ncols_; ++j) tab_[i][j] -= f * tab_[row][j];
        }
        const Rational fz = z_[col];
        if (fz != 0) {
            for (std::size_t j = 0; j <= ncols_; ++j) z_[j] -= fz * tab_[row][j];
        }
        basis_[row] = static_cast<int>(col);
    }

    bool is_basic(std::size_t col) const {
        for (std::size_t i = 0; i < m_; ++i) {
            if (row_alive_[i] && static_cast<std::size_t>(basis_[i]) == col) return true;
        }
        return false;
    }

    // y_i = c_B' A_B^-1 e_i, recovered from reduced costs of the initial
    // identity-ish columns (artificial if present, else the slack).
    std::vector<Rational> internal_duals() const {
        std::vector<Rational> y(m_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i) {
            if (!row_alive_[i]) continue;
            if (art_col_[i] >= 0) {
                y[i] = (col_cost_[art_col_[i]] - z_[art_col_[i]]) / art_sign_[i];
            } else {
                y[i] = col_cost_[slack_col_[i]] - z_[slack_col_[i]];
            }
        }
        return y;
    }

    LpOutcome optimal_outcome() const {
        LpOutcome out;
        out.status = LpStatus::optimal;
        std::vector<Rational> x(n_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i) {
            if (!row_alive_[i]) continue;
            if (static_cast<std::size_t>(basis_[i]) < n_) x[basis_[i]] = tab_[i][ncols_];
        }
        const std::vector<Rational> y = internal_duals();
        std::vector<Rational> duals(m_);
        const Rational flip = minimize_ ? Rational(1) : Rational(-1);
        for (std::size_t i = 0; i < m_; ++i) duals[i] = flip * Rational(rho_[i]) * y[i];
        out.value = objective_value(lp_, x);
        out.primal_solution = std::move(x);
        out.dual_multipliers = std::move(duals);
        return out;
    }

    LpOutcome infeasible_outcome() const {
        LpOutcome out;
        out.status = LpStatus::infeasible;
        const std::vector<Rational> y = internal_duals();
        std::vector<Rational> farkas(m_);
        for (std::size_t i = 0; i < m_; ++i) farkas[i] = Rational(rho_[i]) * y[i];
        out.infeasibility_certificate = std::move(farkas);
        return out;
    }

    LpOutcome unbounded_outcome(std::size_t enter, int dir) const {
        LpOutcome out;
        out.status = LpStatus::unbounded;
        std::vector<Rational> ray(n_, Rational(0));
        if (enter < n_) ray[enter] = dir;
        for (std::size_t i = 0; i < m_; ++i) {
            if (!row_alive_[i]) continue;
            if (static_cast<std::size_t>(basis_[i]) < n_) {
                ray[basis_[i]] = -Rational(dir) * tab_[i][enter];
            }
        }
        out.ray = std::move(ray);
        return out;
    }

    const LinearProgram& lp_;
    std::size_t n_ = 0, m_ = 0, ncols_ = 0, first_art_ = 0;
    bool minimize_ = true;
    bool bar_artificials_ = false;
    std::vector<Rational> cost_;      // internal (minimization) structural costs
    std::vector<Rational> col_cost_;  // cost vector the current z-row was built from
    std::vector<int> rho_;
    std::vector<int> slack_col_, art_col_;
    std::vector<Rational> art_sign_;
    std::vector<bool> nonneg_;
    std::vector<std::vector<Rational>> tab_;
    std::vector<Rational> z_;
    std::vector<int> basis_;
    std::vector<bool> row_alive_;
};

}  // namespace

LpOutcome solve_lp(const LinearProgram& lp) {
    validate_lp(lp);
    SimplexTableau t(lp);
    return t.run();
}

}  // namespace superrep
