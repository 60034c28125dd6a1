#include "superrep/cli.hpp"

#include "superrep/certificates.hpp"
#include "superrep/document.hpp"
#include "superrep/pricing.hpp"
#include "superrep/render.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <sstream>

namespace superrep {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitAnomaly = 2;
constexpr int kExitParse = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot read file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(std::ostream& out, const ordered_json& machine, const std::string& table) {
    out << machine.dump(2) << "\n---\n" << table;
}

ordered_json outcome_json(const LpOutcome& o) {
    ordered_json j;
    j["status"] = to_string(o.status);
    if (o.value) {
        j["value"] = to_string(*o.value);
        j["decimal"] = format_decimal(*o.value);
    }
    return j;
}

ordered_json strategy_json(const Market& m, const TradingStrategy& h) {
    ordered_json j;
    for (std::size_t t = 0; t < m.horizon; ++t) {
        for (std::size_t k = 0; k < m.seller_filtration.at(t).block_count(); ++k) {
            for (std::size_t a = 0; a < m.asset_names.size(); ++a) {
                j[holding_variable_name(m, {t, k, a})] = to_string(h.at(t, k, a));
            }
        }
    }
    return j;
}

ordered_json measure_json(const Market& m, const Measure& q) {
    ordered_json j;
    for (std::size_t w = 0; w < m.space.size(); ++w) {
        j[m.space.names()[w]] = to_string(q.weight(w));
    }
    return j;
}

std::string price_table_line(const std::string& method, const LpOutcome& o) {
    std::string line = method;
    line.resize(10, ' ');
    std::string status = to_string(o.status);
    status.resize(12, ' ');
    line += status;
    line += o.value ? format_value(*o.value) : std::string("-");
    return line + "\n";
}

int cmd_validate(const std::string& file, std::ostream& out) {
    const std::string text = read_file(file);
    ordered_json j;
    j["command"] = "validate";
    std::string table;
    bool ok = false;
    try {
        const ParsedDocument doc = parse_market_document(text, false);
        const ValidationReport rep = validate_market(doc.market);
        ok = rep.ok();
        j["ok"] = ok;
        j["passed"] = rep.passed;
        ordered_json failures = ordered_json::array();
        for (const auto& f : rep.failed) {
            failures.push_back({{"check", f.check}, {"witness", f.witness}});
            table += "FAIL " + f.check + ": " + f.witness + "\n";
        }
        j["failed"] = failures;
        for (const auto& p : rep.passed) table += "pass " + p + "\n";
    } catch (const input_error& e) {
        j["ok"] = false;
        j["failed"] = ordered_json::array({{{"check", "construction"}, {"witness", e.what()}}});
        table = std::string("FAIL construction: ") + e.what() + "\n";
    }
    emit(out, j, table);
    return ok ? kExitOk : kExitValidation;
}

int cmd_price(const std::string& file, const std::string& claim_name, const std::string& method,
              std::ostream& out) {
    const ParsedDocument doc = parse_market_document(read_file(file));
    const Claim* claim = nullptr;
    for (const auto& [name, c] : doc.claims) {
        if (name == claim_name) claim = &c;
    }
    if (!claim) throw input_error("document has no claim named '" + claim_name + "'");

    ordered_json j;
    j["command"] = "price";
    j["claim"] = claim_name;
    j["method"] = method;

    if (arbitrage_search(doc.market, true).found) {
        j["status"] = "arbitrage_detected";
        emit(out, j, "arbitrage detected: the market admits a costless winning strategy;"
                     " no finite price\n");
        return kExitAnomaly;
    }
    j["status"] = "priced";

    std::vector<PriceMethod> methods;
    if (method == "all") {
        methods = {PriceMethod::primal, PriceMethod::dual_lp, PriceMethod::measures};
    } else if (method == "primal") {
        methods = {PriceMethod::primal};
    } else if (method == "dual") {
        methods = {PriceMethod::dual_lp};
    } else if (method == "measures") {
        methods = {PriceMethod::measures};
    } else {
        throw parse_error("unknown method '" + method + "'");
    }

    std::string table = "claim: " + claim_name + "\n";
    table += "method    status      value\n";
    ordered_json results;
    std::optional<Rational> primal_value, dual_value;
    bool requested_unavailable = false;
    for (PriceMethod pm : methods) {
        const PriceResult r = price(doc.market, *claim, pm);
        ordered_json jr = outcome_json(r.outcome);
        if (r.strategy) jr["strategy"] = strategy_json(doc.market, *r.strategy);
        if (r.measure) jr["measure"] = measure_json(doc.market, *r.measure);
        if (r.dual) {
            ordered_json jy;
            for (std::size_t w = 0; w < doc.market.space.size(); ++w) {
                jy[doc.market.space.names()[w]] = to_string(r.dual->y1[w]);
            }
            jr["y1"] = jy;
        }
        results[to_string(pm)] = jr;
        table += price_table_line(to_string(pm), r.outcome);
        if (r.outcome.status == LpStatus::optimal) {
            if (pm == PriceMethod::primal) primal_value = *r.outcome.value;
            if (pm == PriceMethod::dual_lp) dual_value = *r.outcome.value;
        } else if (methods.size() == 1) {
            requested_unavailable = true;
        }
    }
    j["results"] = results;
    if (primal_value && dual_value) {
        const bool eq = *primal_value == *dual_value;
        j["primal_equals_dual"] = eq;
        table += std::string("primal = dual (exact): ") + (eq ? "yes" : "NO") + "\n";
    }
    emit(out, j, table);
    return requested_unavailable ? kExitAnomaly : kExitOk;
}

int cmd_polytope(const std::string& file, const std::vector<std::string>& project,
                 bool deep_redundancy, std::ostream& out) {
    const ParsedDocument doc = parse_market_document(read_file(file));
    const MeasurePolytope poly = build_measure_polytope(doc.market);

    ordered_json j;
    j["command"] = "polytope";
    ordered_json legend;
    for (std::size_t w = 0; w < doc.market.space.size(); ++w) {
        legend[poly.description.variables[w]] = doc.market.space.names()[w];
    }
    j["variables"] = legend;
    ordered_json rows = ordered_json::array();
    std::string table = "measure set (q in scenario order):\n";
    for (std::size_t i = 0; i < poly.description.rows.size(); ++i) {
        rows.push_back(format_poly_row(poly.description, i));
        table += "  " + format_poly_row(poly.description, i) + "\n";
    }
    j["rows"] = rows;

    if (!project.empty()) {
        const HPolytope projected =
            fourier_motzkin_project(poly.description, project, deep_redundancy);
        ordered_json prows = ordered_json::array();
        table += "projection onto {";
        for (std::size_t i = 0; i < projected.variables.size(); ++i) {
            if (i) table += ",";
            table += projected.variables[i];
        }
        table += "}:\n";
        for (std::size_t i = 0; i < projected.rows.size(); ++i) {
            prows.push_back(format_poly_row(projected, i));
            table += "  " + format_poly_row(projected, i) + "\n";
        }
        if (projected.rows.empty()) table += "  (no constraints)\n";
        j["projection"] = prows;
        j["projection_variables"] = projected.variables;
        j["projection_empty"] = !polytope_feasible(projected);
    }
    emit(out, j, table);
    return kExitOk;
}

int cmd_arbitrage(const std::string& file, bool unconstrained, std::ostream& out) {
    const ParsedDocument doc = parse_market_document(read_file(file));
    const ArbitrageResult res = arbitrage_search(doc.market, !unconstrained);
    ordered_json j;
    j["command"] = "arbitrage";
    j["respects_short_constraints"] = !unconstrained;
    j["found"] = res.found;
    std::string table;
    if (res.found) {
        const ArbitrageWitness& w = *res.witness;
        j["initial_cost"] = to_string(w.initial_cost);
        j["expected_gain"] = to_string(w.expected_gain);
        ordered_json gains;
        for (std::size_t i = 0; i < doc.market.space.size(); ++i) {
            gains[doc.market.space.names()[i]] = to_string(w.terminal_gains[i]);
        }
        j["terminal_gains"] = gains;
        j["strategy"] = strategy_json(doc.market, w.strategy);
        table += "arbitrage found: initial cost " + format_value(w.initial_cost) +
                 ", expected terminal gain " + format_value(w.expected_gain) + "\n";
    } else {
        table += "no arbitrage\n";
    }
    emit(out, j, table);
    return kExitOk;
}

int cmd_report(const std::string& file, std::ostream& out) {
    const ParsedDocument doc = parse_market_document(read_file(file));
    const std::vector<PricingReport> reports = full_report(doc.market, doc.claims);

    ordered_json j;
    j["command"] = "report";
    ordered_json jreps = ordered_json::array();
    std::string table;
    bool any_arbitrage = false;
    const auto flag = [](ordered_json& obj, const char* key, const std::optional<bool>& v) {
        if (v) obj[key] = *v;
    };
    const auto gap = [](ordered_json& obj, const char* key, const std::optional<Rational>& v) {
        if (v) obj[key] = to_string(*v);
    };
    for (const PricingReport& rep : reports) {
        ordered_json jr;
        jr["claim"] = rep.claim_id;
        if (rep.arbitrage_detected) {
            any_arbitrage = true;
            jr["status"] = "arbitrage_detected";
            table += rep.claim_id + ": arbitrage detected, no price\n";
            jreps.push_back(jr);
            continue;
        }
        jr["status"] = "priced";
        jr["primal"] = outcome_json(rep.primal->outcome);
        jr["dual_lp"] = outcome_json(rep.dual_lp->outcome);
        jr["measures"] = outcome_json(rep.measure_lp->outcome);
        gap(jr, "gap_primal_dual", rep.gap_primal_dual);
        gap(jr, "gap_dual_measure", rep.gap_dual_measure);
        gap(jr, "gap_primal_measure", rep.gap_primal_measure);
        flag(jr, "primal_equals_dual", rep.primal_equals_dual);
        flag(jr, "dual_equals_measure", rep.dual_equals_measure);
        flag(jr, "strategy_audit_ok", rep.strategy_audit_ok);
        flag(jr, "primal_certificate_ok", rep.primal_certificate_ok);
        flag(jr, "dual_certificate_ok", rep.dual_certificate_ok);
        flag(jr, "measure_certificate_ok", rep.measure_certificate_ok);
        flag(jr, "measure_from_dual_in_set", rep.measure_from_dual_in_set);
        flag(jr, "measure_from_dual_objective_preserved",
             rep.measure_from_dual_objective_preserved);
        flag(jr, "dual_from_measure_feasible", rep.dual_from_measure_feasible);
        flag(jr, "dual_from_measure_objective_preserved",
             rep.dual_from_measure_objective_preserved);
        jreps.push_back(jr);

        table += "claim " + rep.claim_id + ":\n";
        table += "  " + price_table_line("primal", rep.primal->outcome);
        table += "  " + price_table_line("dual_lp", rep.dual_lp->outcome);
        table += "  " + price_table_line("measures", rep.measure_lp->outcome);
        if (rep.primal_equals_dual) {
            table += std::string("  primal = dual (exact): ") +
                     (*rep.primal_equals_dual ? "yes" : "NO") + "\n";
        }
    }
    j["claims"] = jreps;
    emit(out, j, table);
    return any_arbitrage ? kExitAnomaly : kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact superreplication pricing under partial information"
                 " and short-sale constraints"};
    app.require_subcommand(1);

    std::string file, claim_name, method = "all";
    std::vector<std::string> project;
    bool unconstrained = false, deep_redundancy = false;

    CLI::App* validate = app.add_subcommand("validate", "check a market document");
    validate->add_option("file", file)->required();

    CLI::App* price_cmd = app.add_subcommand("price", "price one claim");
    price_cmd->add_option("file", file)->required();
    price_cmd->add_option("--claim", claim_name)->required();
    price_cmd->add_option("--method", method)
        ->check(CLI::IsMember({"primal", "dual", "measures", "all"}));

    CLI::App* polytope = app.add_subcommand("polytope", "print the measure set");
    polytope->add_option("file", file)->required();
    polytope->add_option("--project", project);
    polytope->add_flag("--deep-redundancy", deep_redundancy);

    CLI::App* arbitrage = app.add_subcommand("arbitrage", "search for arbitrage");
    arbitrage->add_option("file", file)->required();
    arbitrage->add_flag("--unconstrained", unconstrained);

    CLI::App* report = app.add_subcommand("report", "full report over all claims");
    report->add_option("file", file)->required();

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitParse;
    }

    try {
        if (validate->parsed()) return cmd_validate(file, out);
        if (price_cmd->parsed()) return cmd_price(file, claim_name, method, out);
        if (polytope->parsed()) return cmd_polytope(file, project, deep_redundancy, out);
        if (arbitrage->parsed()) return cmd_arbitrage(file, unconstrained, out);
        if (report->parsed()) return cmd_report(file, out);
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const input_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    err << "no command\n";
    return kExitParse;
}

}  // namespace superrep
