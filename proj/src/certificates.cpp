#include "superrep/certificates.hpp"

namespace superrep {

namespace {

void add(CertificateReport& rep, std::string name, bool ok, std::string detail = "") {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
}

std::vector<Rational> transpose_times(const LinearProgram& lp, const std::vector<Rational>& y) {
    std::vector<Rational> g(lp.variables.size(), Rational(0));
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        if (y[i] == 0) continue;
        for (std::size_t j = 0; j < g.size(); ++j) g[j] += y[i] * lp.rows[i].coefficients[j];
    }
    return g;
}

void check_optimal(const LinearProgram& lp, const LpOutcome& out, CertificateReport& rep) {
    const bool fields = out.value && out.primal_solution && out.dual_multipliers &&
                        !out.infeasibility_certificate && !out.ray;
    add(rep, "fields_match_status", fields);
    if (!out.value || !out.primal_solution || !out.dual_multipliers) return;
    const auto& x = *out.primal_solution;
    const auto& y = *out.dual_multipliers;
    if (x.size() != lp.variables.size() || y.size() != lp.rows.size()) {
        add(rep, "certificate_dimensions", false);
        return;
    }

    bool feas = true;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (lp.variables[j].nonnegative && x[j] < 0) feas = false;
    }
    std::vector<Rational> activity(lp.rows.size());
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        activity[i] = row_activity(lp, i, x);
        switch (lp.rows[i].relation) {
            case Relation::less_equal:    if (activity[i] > lp.rows[i].rhs) feas = false; break;
            case Relation::equal:         if (activity[i] != lp.rows[i].rhs) feas = false; break;
            case Relation::greater_equal: if (activity[i] < lp.rows[i].rhs) feas = false; break;
        }
    }
    add(rep, "primal_feasibility", feas);

    // Multiplier sign convention: for minimize, y >= 0 on >= rows and y <= 0
    // on <= rows; mirrored for maximize. Equality rows are free.
    const bool min = lp.sense == Sense::minimize;
    bool signs = true;
    for (std::size_t i = 0; i < y.size(); ++i) {
        switch (lp.rows[i].relation) {
            case Relation::greater_equal: if (min ? y[i] < 0 : y[i] > 0) signs = false; break;
            case Relation::less_equal:    if (min ? y[i] > 0 : y[i] < 0) signs = false; break;
            case Relation::equal: break;
        }
    }
    add(rep, "dual_sign", signs);

    // Reduced costs z = c - A'y: >= 0 (min) / <= 0 (max) on nonnegative
    // variables, exactly 0 on free variables.
    const std::vector<Rational> aty = transpose_times(lp, y);
    bool red = true;
    std::vector<Rational> z(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        z[j] = lp.objective[j] - aty[j];
        if (lp.variables[j].nonnegative) {
            if (min ? z[j] < 0 : z[j] > 0) red = false;
        } else if (z[j] != 0) {
            red = false;
        }
    }
    add(rep, "dual_feasibility", red);

    bool cs = true;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] * (activity[i] - lp.rows[i].rhs) != 0) cs = false;
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (z[j] * x[j] != 0) cs = false;
    }
    add(rep, "complementary_slackness", cs);

    Rational dual_obj = 0;
    for (std::size_t i = 0; i < y.size(); ++i) dual_obj += y[i] * lp.rows[i].rhs;
    const Rational primal_obj = objective_value(lp, x);
    add(rep, "objective_equality", primal_obj == *out.value && dual_obj == *out.value,
        to_string(primal_obj) + " vs dual " + to_string(dual_obj) + " vs reported " +
            to_string(*out.value));
}

void check_infeasible(const LinearProgram& lp, const LpOutcome& out, CertificateReport& rep) {
    const bool fields = !out.value && !out.primal_solution && !out.dual_multipliers &&
                        out.infeasibility_certificate && !out.ray;
    add(rep, "fields_match_status", fields);
    if (!out.infeasibility_certificate) return;
    const auto& lam = *out.infeasibility_certificate;
    if (lam.size() != lp.rows.size()) {
        add(rep, "certificate_dimensions", false);
        return;
    }
    bool signs = true;
    for (std::size_t i = 0; i < lam.size(); ++i) {
        switch (lp.rows[i].relation) {
            case Relation::greater_equal: if (lam[i] < 0) signs = false; break;
            case Relation::less_equal:    if (lam[i] > 0) signs = false; break;
            case Relation::equal: break;
        }
    }
    add(rep, "farkas_sign", signs);

    // The combination g = A'lam must satisfy g <= 0 on nonnegative variables
    // and g = 0 on free ones while lam.b > 0, so g.x >= lam.b is impossible.
    const std::vector<Rational> g = transpose_times(lp, lam);
    bool combo = true;
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (lp.variables[j].nonnegative ? g[j] > 0 : g[j] != 0) combo = false;
    }
    add(rep, "farkas_combination", combo);

    Rational lb = 0;
    for (std::size_t i = 0; i < lam.size(); ++i) lb += lam[i] * lp.rows[i].rhs;
    add(rep, "farkas_contradiction", lb > 0, "lambda.b = " + to_string(lb));
}

void check_unbounded(const LinearProgram& lp, const LpOutcome& out, CertificateReport& rep) {
    const bool fields = !out.value && !out.primal_solution && !out.dual_multipliers &&
                        !out.infeasibility_certificate && out.ray;
    add(rep, "fields_match_status", fields);
    if (!out.ray) return;
    const auto& r = *out.ray;
    if (r.size() != lp.variables.size()) {
        add(rep, "certificate_dimensions", false);
        return;
    }
    bool recession = true;
    for (std::size_t j = 0; j < r.size(); ++j) {
        if (lp.variables[j].nonnegative && r[j] < 0) recession = false;
    }
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
        const Rational a = row_activity(lp, i, r);
        switch (lp.rows[i].relation) {
            case Relation::less_equal:    if (a > 0) recession = false; break;
            case Relation::equal:         if (a != 0) recession = false; break;
            case Relation::greater_equal: if (a < 0) recession = false; break;
        }
    }
    add(rep, "ray_recession", recession);

    const Rational gain = objective_value(lp, r);
    const bool improves = lp.sense == Sense::minimize ? gain < 0 : gain > 0;
    add(rep, "ray_improvement", improves, "c.ray = " + to_string(gain));
}

}  // namespace

CertificateReport verify_certificate(const LinearProgram& lp, const LpOutcome& outcome) {
    validate_lp(lp);
    CertificateReport rep;
    switch (outcome.status) {
        case LpStatus::optimal:    check_optimal(lp, outcome, rep); break;
        case LpStatus::infeasible: check_infeasible(lp, outcome, rep); break;
        case LpStatus::unbounded:  check_unbounded(lp, outcome, rep); break;
    }
    return rep;
}

}  // namespace superrep
