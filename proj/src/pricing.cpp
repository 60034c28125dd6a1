#include "superrep/pricing.hpp"

#include "superrep/certificates.hpp"

#include <algorithm>

namespace superrep {

std::string to_string(PriceMethod m) {
    switch (m) {
        case PriceMethod::primal:   return "primal";
        case PriceMethod::dual_lp:  return "dual_lp";
        case PriceMethod::measures: return "measures";
    }
    return "?";
}

PrimalBuild build_primal_lp(const Market& m, const Claim& b) {
    require_valid(m);
    if (b.size() != m.space.size()) throw input_error("claim scenario count mismatch");
    const HoldingIndex idx(m);
    const std::size_t assets = m.asset_names.size();

    PrimalBuild out;
    LinearProgram& lp = out.lp;
    lp.sense = Sense::minimize;
    lp.variables.push_back({"v", false});
    for (const auto& key : idx.keys()) {
        lp.variables.push_back(
            {holding_variable_name(m, key), m.short_restricted.count(key.asset) > 0});
    }
    out.holdings = idx.keys();
    lp.objective.assign(lp.variables.size(), Rational(0));
    lp.objective[0] = 1;

    const auto hvar = [&](std::size_t t, std::size_t block, std::size_t asset) {
        return 1 + idx.at(t, block, asset);
    };

    // (i) superreplication, one row per scenario
    for (std::size_t w = 0; w < m.space.size(); ++w) {
        LpRow row;
        row.coefficients.assign(lp.variables.size(), Rational(0));
        const std::size_t block = m.seller_filtration.at(m.horizon - 1).block_of(w);
        for (std::size_t a = 0; a < assets; ++a) {
            row.coefficients[hvar(m.horizon - 1, block, a)] = m.prices[a].values[m.horizon][w];
        }
        row.relation = Relation::greater_equal;
        row.rhs = b[w];
        lp.rows.push_back(std::move(row));
    }

    // (ii) self-financing, one row per atom of F_t; within an atom the
    // coefficients coincide, and identical rows across atoms collapse
    for (std::size_t t = 1; t + 1 <= m.horizon; ++t) {
        const Partition& ft = m.full_filtration.at(t);
        std::vector<std::vector<Rational>> seen;
        for (std::size_t k = 0; k < ft.block_count(); ++k) {
            const std::size_t w = ft.block(k).front();
            std::vector<Rational> coeffs(lp.variables.size(), Rational(0));
            const std::size_t cur = m.seller_filtration.at(t).block_of(w);
            const std::size_t prev = m.seller_filtration.at(t - 1).block_of(w);
            for (std::size_t a = 0; a < assets; ++a) {
                coeffs[hvar(t, cur, a)] += m.prices[a].values[t][w];
                coeffs[hvar(t - 1, prev, a)] -= m.prices[a].values[t][w];
            }
            if (std::find(seen.begin(), seen.end(), coeffs) != seen.end()) continue;
            seen.push_back(coeffs);
            lp.rows.push_back({std::move(coeffs), Relation::equal, Rational(0)});
        }
    }

    // (iv) budget S(0).H(0) <= v
    {
        LpRow row;
        row.coefficients.assign(lp.variables.size(), Rational(0));
        row.coefficients[0] = -1;
        for (std::size_t a = 0; a < assets; ++a) {
            row.coefficients[hvar(0, 0, a)] = m.prices[a].values[0][0];
        }
        row.relation = Relation::less_equal;
        row.rhs = 0;
        lp.rows.push_back(std::move(row));
    }

    // reduction row S(0).H(0) >= 0
    {
        LpRow row;
        row.coefficients.assign(lp.variables.size(), Rational(0));
        for (std::size_t a = 0; a < assets; ++a) {
            row.coefficients[hvar(0, 0, a)] = m.prices[a].values[0][0];
        }
        row.relation = Relation::greater_equal;
        row.rhs = 0;
        lp.rows.push_back(std::move(row));
    }

    return out;
}

namespace {

std::size_t dual_var_index(const Market& m, bool is_y1, std::size_t t, std::size_t scenario) {
    const std::size_t n = m.space.size();
    if (is_y1) return scenario;
    return n + (t - 1) * n + scenario;
}

}  // namespace

DualBuild build_dual_lp(const Market& m, const Claim& b) {
    require_valid(m);
    if (b.size() != m.space.size()) throw input_error("claim scenario count mismatch");
    const std::size_t n = m.space.size();
    const std::size_t T = m.horizon;

    DualBuild out;
    LinearProgram& lp = out.lp;
    lp.sense = Sense::maximize;
    for (std::size_t w = 0; w < n; ++w) {
        lp.variables.push_back({"y1(" + m.space.names()[w] + ")", true});
        out.keys.push_back({true, T, w});
    }
    for (std::size_t t = 1; t + 1 <= T; ++t) {
        for (std::size_t w = 0; w < n; ++w) {
            lp.variables.push_back(
                {"y2_" + std::to_string(t) + "(" + m.space.names()[w] + ")", false});
            out.keys.push_back({false, t, w});
        }
    }

    lp.objective.assign(lp.variables.size(), Rational(0));
    for (std::size_t w = 0; w < n; ++w) {
        lp.objective[w] = m.space.probability(w) * b[w];
    }

    // One-step rows per (t, asset, seller atom). The t-side weight is y2^t
    // (a constant for t = 0), the (t+1)-side weight is y2^{t+1}, or y1 at
    // t+1 = T. Short-restricted assets get current >= next.
    for (std::size_t t = 0; t < T; ++t) {
        const Partition& gt = m.seller_filtration.at(t);
        for (std::size_t a = 0; a < m.asset_names.size(); ++a) {
            const bool restricted = m.short_restricted.count(a) > 0;
            for (std::size_t k = 0; k < gt.block_count(); ++k) {
                LpRow row;
                row.coefficients.assign(lp.variables.size(), Rational(0));
                Rational rhs = 0;
                for (std::size_t w : gt.block(k)) {
                    const Rational next_coeff =
                        m.space.probability(w) * m.prices[a].values[t + 1][w];
                    const std::size_t next_var = t + 1 == T ? dual_var_index(m, true, T, w)
                                                            : dual_var_index(m, false, t + 1, w);
                    row.coefficients[next_var] += next_coeff;
                    if (t == 0) {
                        rhs += m.space.probability(w) * m.prices[a].values[0][w];
                    } else {
                        row.coefficients[dual_var_index(m, false, t, w)] -=
                            m.space.probability(w) * m.prices[a].values[t][w];
                    }
                }
                row.relation = restricted ? Relation::less_equal : Relation::equal;
                row.rhs = rhs;
                lp.rows.push_back(std::move(row));
            }
        }
    }
    return out;
}

std::vector<Rational> dual_vector(const Market& m, const DualSolution& d) {
    const std::size_t n = m.space.size();
    const std::size_t T = m.horizon;
    if (d.y1.size() != n || d.y2.size() + 1 != T) {
        throw input_error("dual solution shape mismatch");
    }
    std::vector<Rational> x(n * T, Rational(0));
    for (std::size_t w = 0; w < n; ++w) x[w] = d.y1[w];
    for (std::size_t t = 1; t + 1 <= T; ++t) {
        if (d.y2[t - 1].size() != n) throw input_error("dual solution shape mismatch");
        for (std::size_t w = 0; w < n; ++w) x[dual_var_index(m, false, t, w)] = d.y2[t - 1][w];
    }
    return x;
}

DualSolution dual_solution_from_vector(const Market& m, const std::vector<Rational>& x) {
    const std::size_t n = m.space.size();
    const std::size_t T = m.horizon;
    if (x.size() != n * T) throw input_error("dual vector length mismatch");
    DualSolution d;
    d.y1.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
    for (std::size_t t = 1; t + 1 <= T; ++t) {
        d.y2.emplace_back(x.begin() + static_cast<std::ptrdiff_t>(t * n),
                          x.begin() + static_cast<std::ptrdiff_t>((t + 1) * n));
    }
    return d;
}

MeasurePolytope build_measure_polytope(const Market& m) {
    require_valid(m);
    const std::size_t n = m.space.size();
    MeasurePolytope out;
    for (std::size_t w = 0; w < n; ++w) {
        out.description.variables.push_back("q" + std::to_string(w + 1));
    }

    {
        PolyRow row;
        row.coefficients.assign(n, Rational(1));
        row.relation = PolyRelation::equal;
        row.rhs = 1;
        out.description.rows.push_back(std::move(row));
        out.tags.push_back({MeasureRowKind::normalization, 0, 0, 0, 0, PolyRelation::equal});
    }
    for (std::size_t w = 0; w < n; ++w) {
        PolyRow row;
        row.coefficients.assign(n, Rational(0));
        row.coefficients[w] = -1;
        row.relation = PolyRelation::less_equal;
        row.rhs = 0;
        out.description.rows.push_back(std::move(row));
        out.tags.push_back({MeasureRowKind::nonnegativity, w, 0, 0, 0, PolyRelation::less_equal});
    }

    for (std::size_t t = 0; t < m.horizon; ++t) {
        const Partition& gt = m.seller_filtration.at(t);
        for (std::size_t a = 0; a < m.asset_names.size(); ++a) {
            const bool restricted = m.short_restricted.count(a) > 0;
            for (std::size_t k = 0; k < gt.block_count(); ++k) {
                PolyRow row;
                row.coefficients.assign(n, Rational(0));
                for (std::size_t w : gt.block(k)) {
                    row.coefficients[w] =
                        m.prices[a].values[t + 1][w] - m.prices[a].values[t][w];
                }
                row.relation = restricted ? PolyRelation::less_equal : PolyRelation::equal;
                row.rhs = 0;
                const bool trivial = std::all_of(row.coefficients.begin(), row.coefficients.end(),
                                                 [](const Rational& c) { return c == 0; });
                if (trivial) continue;
                clear_denominators(row);
                out.description.rows.push_back(std::move(row));
                out.tags.push_back({MeasureRowKind::price, 0, a, t, k,
                                    restricted ? PolyRelation::less_equal : PolyRelation::equal});
            }
        }
    }
    return out;
}

PriceResult price(const Market& m, const Claim& b, PriceMethod method) {
    require_valid(m);
    PriceResult res;
    res.method = method;
    switch (method) {
        case PriceMethod::primal: {
            const PrimalBuild build = build_primal_lp(m, b);
            res.outcome = solve_lp(build.lp);
            if (res.outcome.status == LpStatus::infeasible) {
                // holding max B of the bond always superreplicates
                throw std::logic_error("superreplication LP reported infeasible");
            }
            res.arbitrage_detected = res.outcome.status == LpStatus::unbounded;
            if (res.outcome.status == LpStatus::optimal) {
                const HoldingIndex idx(m);
                res.strategy = strategy_from_values(m, idx, *res.outcome.primal_solution, 1);
            }
            break;
        }
        case PriceMethod::dual_lp: {
            const DualBuild build = build_dual_lp(m, b);
            res.outcome = solve_lp(build.lp);
            if (res.outcome.status == LpStatus::optimal) {
                res.dual = dual_solution_from_vector(m, *res.outcome.primal_solution);
            }
            break;
        }
        case PriceMethod::measures: {
            const MeasurePolytope poly = build_measure_polytope(m);
            res.outcome = solve_lp(polytope_lp(poly.description, Sense::maximize, b.payoff()));
            if (res.outcome.status == LpStatus::optimal) {
                res.measure = Measure(*res.outcome.primal_solution);
            }
            break;
        }
    }
    return res;
}

Measure measure_from_dual(const Market& m, const DualSolution& d) {
    const std::size_t n = m.space.size();
    if (d.y1.size() != n) throw input_error("dual solution scenario count mismatch");
    Rational mass = 0;
    for (std::size_t w = 0; w < n; ++w) mass += m.space.probability(w) * d.y1[w];
    if (mass == 0) {
        throw input_error("degenerate dual solution: P-weighted y1 mass is zero");
    }
    std::vector<Rational> q(n);
    for (std::size_t w = 0; w < n; ++w) q[w] = m.space.probability(w) * d.y1[w] / mass;
    return Measure(std::move(q));
}

DualSolution dual_from_measure(const Market& m, const Measure& q) {
    const std::size_t n = m.space.size();
    if (q.size() != n) throw input_error("measure scenario count mismatch");
    DualSolution d;
    d.y1.resize(n);
    for (std::size_t w = 0; w < n; ++w) d.y1[w] = q.weight(w) / m.space.probability(w);
    const Measure p(m.space.probabilities());
    for (std::size_t t = 1; t + 1 <= m.horizon; ++t) {
        d.y2.push_back(conditional_expectation(d.y1, m.full_filtration.at(t), p));
    }
    return d;
}

MembershipReport check_membership(const Market& m, const Measure& q) {
    require_valid(m);
    if (q.size() != m.space.size()) throw input_error("measure scenario count mismatch");
    MembershipReport rep;
    for (std::size_t t = 0; t < m.horizon; ++t) {
        const Partition& gt = m.seller_filtration.at(t);
        for (std::size_t a = 0; a < m.asset_names.size(); ++a) {
            const bool restricted = m.short_restricted.count(a) > 0;
            const std::vector<Rational> now =
                conditional_expectation(m.prices[a].values[t], gt, q);
            for (std::size_t k = 1; t + k <= m.horizon; ++k) {
                const std::vector<Rational> later =
                    conditional_expectation(m.prices[a].values[t + k], gt, q);
                for (std::size_t blk = 0; blk < gt.block_count(); ++blk) {
                    const std::size_t w = gt.block(blk).front();
                    const bool ok = restricted ? later[w] <= now[w] : later[w] == now[w];
                    if (!ok) {
                        rep.violations.push_back({a, t, k, blk, later[w], now[w], !restricted});
                    }
                }
            }
        }
    }
    return rep;
}

namespace {

Rational measure_objective(const Claim& b, const Measure& q) {
    Rational acc = 0;
    for (std::size_t w = 0; w < q.size(); ++w) acc += q.weight(w) * b[w];
    return acc;
}

Rational dual_objective(const Market& m, const Claim& b, const DualSolution& d) {
    Rational acc = 0;
    for (std::size_t w = 0; w < m.space.size(); ++w) {
        acc += m.space.probability(w) * d.y1[w] * b[w];
    }
    return acc;
}

}  // namespace

std::vector<PricingReport> full_report(const Market& m,
                                       const std::vector<std::pair<std::string, Claim>>& claims) {
    require_valid(m);
    const ArbitrageResult arb = arbitrage_search(m, true);
    std::vector<PricingReport> reports;
    for (const auto& [id, claim] : claims) {
        PricingReport rep;
        rep.claim_id = id;
        if (arb.found) {
            rep.arbitrage_detected = true;
            reports.push_back(std::move(rep));
            continue;
        }

        rep.primal = price(m, claim, PriceMethod::primal);
        rep.dual_lp = price(m, claim, PriceMethod::dual_lp);
        rep.measure_lp = price(m, claim, PriceMethod::measures);

        const PrimalBuild pb = build_primal_lp(m, claim);
        const DualBuild db = build_dual_lp(m, claim);
        const MeasurePolytope poly = build_measure_polytope(m);
        rep.primal_certificate_ok = verify_certificate(pb.lp, rep.primal->outcome).all_passed();
        rep.dual_certificate_ok = verify_certificate(db.lp, rep.dual_lp->outcome).all_passed();
        rep.measure_certificate_ok =
            verify_certificate(polytope_lp(poly.description, Sense::maximize, claim.payoff()),
                               rep.measure_lp->outcome)
                .all_passed();

        if (rep.primal->strategy) {
            rep.strategy_audit_ok =
                strategy_audit(m, *rep.primal->strategy, claim, *rep.primal->outcome.value)
                    .all_passed();
        }

        const bool primal_opt = rep.primal->outcome.status == LpStatus::optimal;
        const bool dual_opt = rep.dual_lp->outcome.status == LpStatus::optimal;
        const bool measure_opt = rep.measure_lp->outcome.status == LpStatus::optimal;
        if (primal_opt && dual_opt) {
            rep.gap_primal_dual = *rep.primal->outcome.value - *rep.dual_lp->outcome.value;
            rep.primal_equals_dual = *rep.gap_primal_dual == 0;
        }
        if (dual_opt && measure_opt) {
            rep.gap_dual_measure = *rep.dual_lp->outcome.value - *rep.measure_lp->outcome.value;
            rep.dual_equals_measure = *rep.gap_dual_measure == 0;
        }
        if (primal_opt && measure_opt) {
            rep.gap_primal_measure = *rep.primal->outcome.value - *rep.measure_lp->outcome.value;
        }

        if (dual_opt && rep.dual_lp->dual) {
            Rational mass = 0;
            for (std::size_t w = 0; w < m.space.size(); ++w) {
                mass += m.space.probability(w) * rep.dual_lp->dual->y1[w];
            }
            if (mass > 0) {
                const Measure q = measure_from_dual(m, *rep.dual_lp->dual);
                rep.measure_from_dual_in_set = check_membership(m, q).member();
                rep.measure_from_dual_objective_preserved =
                    measure_objective(claim, q) == *rep.dual_lp->outcome.value;
            }
        }
        if (measure_opt && rep.measure_lp->measure) {
            const DualSolution d = dual_from_measure(m, *rep.measure_lp->measure);
            rep.dual_from_measure_feasible = point_feasible(db.lp, dual_vector(m, d));
            rep.dual_from_measure_objective_preserved =
                dual_objective(m, claim, d) == *rep.measure_lp->outcome.value;
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

}  // namespace superrep
