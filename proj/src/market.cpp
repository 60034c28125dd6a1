#include "superrep/market.hpp"

#include "superrep/lp.hpp"

#include <algorithm>

namespace superrep {

namespace {

void check(ValidationReport& rep, const std::string& name, bool ok, std::string witness) {
    if (ok) {
        rep.passed.push_back(name);
    } else {
        rep.failed.push_back({name, std::move(witness)});
    }
}

}  // namespace

ValidationReport validate_market(const Market& m) {
    ValidationReport rep;
    const std::size_t n = m.space.size();
    const std::size_t assets = m.asset_names.size();

    bool structure = assets >= 1 && m.prices.size() == assets && m.horizon >= 1 &&
                     m.full_filtration.horizon() == m.horizon &&
                     m.seller_filtration.horizon() == m.horizon;
    for (const auto& p : m.prices) {
        if (p.horizon != m.horizon) structure = false;
        if (structure) validate_process(p, n);
    }
    for (std::size_t a : m.short_restricted) {
        if (a >= assets) structure = false;
    }
    check(rep, "structure", structure, "asset/price/filtration shapes are inconsistent");
    if (!structure) return rep;

    {
        bool ok = true;
        std::string witness;
        for (std::size_t t = 0; t <= m.horizon && ok; ++t) {
            for (std::size_t w = 0; w < n && ok; ++w) {
                if (m.prices[0].values[t][w] != 1) {
                    ok = false;
                    witness = "bond price at (t=" + std::to_string(t) + ", " +
                              m.space.names()[w] + ") is " + to_string(m.prices[0].values[t][w]);
                }
            }
        }
        check(rep, "discounted_bond", ok, witness);
    }

    {
        bool ok = true;
        std::string witness;
        for (std::size_t a = 0; a < assets && ok; ++a) {
            bool any_nonzero = false;
            for (std::size_t t = 0; t <= m.horizon && ok; ++t) {
                for (std::size_t w = 0; w < n && ok; ++w) {
                    const Rational& v = m.prices[a].values[t][w];
                    if (v < 0) {
                        ok = false;
                        witness = m.asset_names[a] + " at (t=" + std::to_string(t) + ", " +
                                  m.space.names()[w] + ") is negative";
                    }
                    if (v != 0) any_nonzero = true;
                }
            }
            if (ok && !any_nonzero) {
                ok = false;
                witness = m.asset_names[a] + " is identically zero";
            }
        }
        check(rep, "nonnegative_prices", ok, witness);
    }

    {
        bool ok = true;
        std::string witness;
        for (std::size_t a = 0; a < assets && ok; ++a) {
            for (std::size_t t = 0; t <= m.horizon && ok; ++t) {
                const Partition& ft = m.full_filtration.at(t);
                for (std::size_t k = 0; k < ft.block_count() && ok; ++k) {
                    const auto& block = ft.block(k);
                    const Rational& v0 = m.prices[a].values[t][block.front()];
                    for (std::size_t w : block) {
                        if (m.prices[a].values[t][w] != v0) {
                            ok = false;
                            witness = m.asset_names[a] + " is not constant on atom " +
                                      std::to_string(k) + " of F at t=" + std::to_string(t);
                            break;
                        }
                    }
                }
            }
        }
        check(rep, "prices_adapted", ok, witness);
    }

    {
        bool ok = true;
        std::string witness;
        for (std::size_t t = 0; t <= m.horizon && ok; ++t) {
            if (!refines(m.seller_filtration.at(t), m.full_filtration.at(t))) {
                ok = false;
                witness = "full filtration does not refine the seller filtration at t=" +
                          std::to_string(t);
            }
        }
        check(rep, "seller_filtration_coarser", ok, witness);
    }

    return rep;
}

void require_valid(const Market& m) {
    const ValidationReport rep = validate_market(m);
    if (!rep.ok()) {
        throw input_error("invalid market: " + rep.failed.front().check + " (" +
                          rep.failed.front().witness + ")");
    }
}

Claim::Claim(std::vector<Rational> payoff) : payoff_(std::move(payoff)) {
    for (const auto& v : payoff_) {
        if (v < 0) throw input_error("claim payoff must be nonnegative");
    }
}

TradingStrategy zero_strategy(const Market& m) {
    TradingStrategy h;
    h.holdings.resize(m.horizon);
    for (std::size_t t = 0; t < m.horizon; ++t) {
        h.holdings[t].assign(m.seller_filtration.at(t).block_count(),
                             std::vector<Rational>(m.asset_names.size(), Rational(0)));
    }
    return h;
}

Rational portfolio_value(const Market& m, const TradingStrategy& h, std::size_t price_time,
                         std::size_t holding_time, std::size_t scenario) {
    const std::size_t block = m.seller_filtration.at(holding_time).block_of(scenario);
    Rational acc = 0;
    for (std::size_t a = 0; a < m.asset_names.size(); ++a) {
        acc += m.prices[a].values[price_time][scenario] * h.at(holding_time, block, a);
    }
    return acc;
}

Rational initial_cost(const Market& m, const TradingStrategy& h) {
    return portfolio_value(m, h, 0, 0, 0);
}

std::vector<Rational> terminal_values(const Market& m, const TradingStrategy& h) {
    std::vector<Rational> out(m.space.size());
    for (std::size_t w = 0; w < m.space.size(); ++w) {
        out[w] = portfolio_value(m, h, m.horizon, m.horizon - 1, w);
    }
    return out;
}

bool AuditReport::all_passed() const {
    return std::all_of(items.begin(), items.end(), [](const AuditItem& i) { return i.passed; });
}

bool AuditReport::constraint_passed(const std::string& name) const {
    return std::all_of(items.begin(), items.end(), [&](const AuditItem& i) {
        return i.constraint != name || i.passed;
    });
}

namespace {

void require_adapted_shape(const Market& m, const TradingStrategy& h) {
    if (h.holdings.size() != m.horizon) {
        throw input_error("strategy must hold one slice per trading date 0..T-1");
    }
    for (std::size_t t = 0; t < m.horizon; ++t) {
        if (h.holdings[t].size() != m.seller_filtration.at(t).block_count()) {
            throw input_error("strategy at t=" + std::to_string(t) +
                              " is not indexed by the seller atoms");
        }
        for (const auto& atom : h.holdings[t]) {
            if (atom.size() != m.asset_names.size()) {
                throw input_error("strategy must hold one value per asset");
            }
        }
    }
}

}  // namespace

AuditReport strategy_audit(const Market& m, const TradingStrategy& h, const Claim& b,
                           const Rational& v) {
    require_valid(m);
    if (b.size() != m.space.size()) throw input_error("claim scenario count mismatch");
    require_adapted_shape(m, h);
    AuditReport rep;

    const std::vector<Rational> terminal = terminal_values(m, h);
    for (std::size_t w = 0; w < m.space.size(); ++w) {
        rep.items.push_back({"superreplication", m.space.names()[w], terminal[w], b[w],
                             terminal[w] >= b[w]});
    }

    for (std::size_t t = 1; t + 1 <= m.horizon; ++t) {
        for (std::size_t w = 0; w < m.space.size(); ++w) {
            const Rational incoming = portfolio_value(m, h, t, t - 1, w);
            const Rational outgoing = portfolio_value(m, h, t, t, w);
            rep.items.push_back({"self_financing",
                                 "t=" + std::to_string(t) + ", " + m.space.names()[w],
                                 outgoing - incoming, Rational(0), outgoing == incoming});
        }
    }

    for (std::size_t a : m.short_restricted) {
        for (std::size_t t = 0; t < m.horizon; ++t) {
            const Partition& gt = m.seller_filtration.at(t);
            for (std::size_t k = 0; k < gt.block_count(); ++k) {
                const Rational& held = h.at(t, k, a);
                rep.items.push_back({"no_short",
                                     m.asset_names[a] + " at t=" + std::to_string(t) +
                                         ", atom " + std::to_string(k),
                                     held, Rational(0), held >= 0});
            }
        }
    }

    const Rational cost = initial_cost(m, h);
    rep.items.push_back({"budget", "t=0", cost, v, cost <= v});
    return rep;
}

HoldingIndex::HoldingIndex(const Market& m) {
    index_.resize(m.horizon);
    std::size_t next = 0;
    for (std::size_t t = 0; t < m.horizon; ++t) {
        const std::size_t blocks = m.seller_filtration.at(t).block_count();
        index_[t].assign(blocks, std::vector<std::size_t>(m.asset_names.size()));
        for (std::size_t k = 0; k < blocks; ++k) {
            for (std::size_t a = 0; a < m.asset_names.size(); ++a) {
                index_[t][k][a] = next++;
                keys_.push_back({t, k, a});
            }
        }
    }
}

std::string holding_variable_name(const Market& m, const HoldingKey& k) {
    std::string name = "H" + std::to_string(k.asset) + "(" + std::to_string(k.t);
    if (k.t > 0) {
        name += ",{";
        const auto& block = m.seller_filtration.at(k.t).block(k.block);
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (i) name += ",";
            name += m.space.names()[block[i]];
        }
        name += "}";
    }
    return name + ")";
}

TradingStrategy strategy_from_values(const Market& m, const HoldingIndex& idx,
                                     const std::vector<Rational>& values, std::size_t offset) {
    TradingStrategy h = zero_strategy(m);
    for (std::size_t i = 0; i < idx.keys().size(); ++i) {
        const auto& k = idx.keys()[i];
        h.holdings[k.t][k.block][k.asset] = values[offset + i];
    }
    return h;
}

ArbitrageResult arbitrage_search(const Market& m, bool respect_constraints) {
    require_valid(m);
    const HoldingIndex lay(m);
    const std::size_t n = m.space.size();

    LinearProgram lp;
    lp.sense = Sense::maximize;
    for (const auto& key : lay.keys()) {
        const bool restricted = respect_constraints && m.short_restricted.count(key.asset) > 0;
        lp.variables.push_back({holding_variable_name(m, key), restricted});
    }
    lp.objective.assign(lay.count(), Rational(0));
    for (std::size_t w = 0; w < n; ++w) {
        const std::size_t block = m.seller_filtration.at(m.horizon - 1).block_of(w);
        for (std::size_t a = 0; a < m.asset_names.size(); ++a) {
            lp.objective[lay.at(m.horizon - 1, block, a)] +=
                m.space.probability(w) * m.prices[a].values[m.horizon][w];
        }
    }

    auto add_row = [&](std::vector<Rational> coeffs, Relation rel, Rational rhs) {
        lp.rows.push_back({std::move(coeffs), rel, std::move(rhs)});
    };

    // self-financing, one row per atom of F_t (coefficients coincide within)
    for (std::size_t t = 1; t + 1 <= m.horizon; ++t) {
        const Partition& ft = m.full_filtration.at(t);
        std::vector<std::vector<Rational>> seen;
        for (std::size_t k = 0; k < ft.block_count(); ++k) {
            const std::size_t w = ft.block(k).front();
            std::vector<Rational> row(lay.count(), Rational(0));
            const std::size_t cur = m.seller_filtration.at(t).block_of(w);
            const std::size_t prev = m.seller_filtration.at(t - 1).block_of(w);
            for (std::size_t a = 0; a < m.asset_names.size(); ++a) {
                row[lay.at(t, cur, a)] += m.prices[a].values[t][w];
                row[lay.at(t - 1, prev, a)] -= m.prices[a].values[t][w];
            }
            if (std::find(seen.begin(), seen.end(), row) != seen.end()) continue;
            seen.push_back(row);
            add_row(std::move(row), Relation::equal, Rational(0));
        }
    }

    // zero initial cost
    {
        std::vector<Rational> row(lay.count(), Rational(0));
        for (std::size_t a = 0; a < m.asset_names.size(); ++a) {
            row[lay.at(0, 0, a)] = m.prices[a].values[0][0];
        }
        add_row(std::move(row), Relation::less_equal, Rational(0));
    }

    // nonnegative terminal value pointwise
    for (std::size_t w = 0; w < n; ++w) {
        std::vector<Rational> row(lay.count(), Rational(0));
        const std::size_t block = m.seller_filtration.at(m.horizon - 1).block_of(w);
        for (std::size_t a = 0; a < m.asset_names.size(); ++a) {
            row[lay.at(m.horizon - 1, block, a)] = m.prices[a].values[m.horizon][w];
        }
        add_row(std::move(row), Relation::greater_equal, Rational(0));
    }

    // box bounds compactify the arbitrage cone so simplex returns a witness
    for (std::size_t i = 0; i < lay.count(); ++i) {
        std::vector<Rational> row(lay.count(), Rational(0));
        row[i] = 1;
        add_row(row, Relation::less_equal, Rational(1));
        if (!lp.variables[i].nonnegative) {
            row[i] = -1;
            add_row(std::move(row), Relation::less_equal, Rational(1));
        }
    }

    const LpOutcome out = solve_lp(lp);
    if (out.status != LpStatus::optimal) {
        throw std::logic_error("arbitrage search LP must be optimal");
    }
    ArbitrageResult result;
    result.found = *out.value > 0;
    if (result.found) {
        ArbitrageWitness w;
        w.strategy = strategy_from_values(m, lay, *out.primal_solution, 0);
        w.initial_cost = initial_cost(m, w.strategy);
        w.terminal_gains = terminal_values(m, w.strategy);
        w.expected_gain = 0;
        for (std::size_t i = 0; i < n; ++i) {
            w.expected_gain += m.space.probability(i) * w.terminal_gains[i];
        }
        result.witness = std::move(w);
    }
    return result;
}

}  // namespace superrep
