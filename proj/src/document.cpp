#include "superrep/document.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace superrep {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string json_location(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const json& field(const json& obj, const std::string& key, const std::string& context) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw parse_error("missing field '" + key + "' in " + context);
    }
    return obj.at(key);
}

std::string string_field(const json& j, const std::string& where) {
    if (!j.is_string()) throw parse_error("expected a string at " + where);
    return j.get<std::string>();
}

Rational rational_field(const json& j, const std::string& where) {
    if (!j.is_string()) {
        throw parse_error("expected a rational string (\"a/b\" or \"a\") at " + where);
    }
    try {
        return parse_rational(j.get<std::string>());
    } catch (const input_error& e) {
        throw input_error(std::string(e.what()) + " at " + where);
    }
}

Partition parse_partition(const json& j, const ScenarioSpace& space, const std::string& where) {
    if (!j.is_array()) throw parse_error("expected a list of blocks at " + where);
    std::vector<std::vector<std::size_t>> blocks;
    for (const auto& jb : j) {
        if (!jb.is_array()) throw parse_error("expected a block (list of scenarios) at " + where);
        std::vector<std::size_t> block;
        for (const auto& name : jb) {
            block.push_back(space.index_of(string_field(name, where)));
        }
        blocks.push_back(std::move(block));
    }
    return Partition(space.size(), std::move(blocks));
}

Filtration parse_filtration(const json& j, const ScenarioSpace& space, std::size_t horizon,
                            const std::vector<Process>& prices, const std::string& key) {
    if (j.is_string()) {
        const std::string mode = j.get<std::string>();
        if (mode == "generated" || mode == "price-generated") {
            return filtration_from_processes(space.size(), prices);
        }
        throw parse_error("unknown filtration mode '" + mode + "' for " + key);
    }
    if (!j.is_array()) {
        throw parse_error(key + " must be a mode string or a list of partitions per time");
    }
    if (j.size() != horizon + 1) {
        throw parse_error(key + " must list one partition per time 0..T");
    }
    std::vector<Partition> parts;
    for (std::size_t t = 0; t < j.size(); ++t) {
        parts.push_back(parse_partition(j[t], space, key + "[" + std::to_string(t) + "]"));
    }
    return Filtration(std::move(parts));
}

}  // namespace

ParsedDocument parse_market_document(const std::string& text, bool enforce_valid) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error("JSON syntax error at " + json_location(text, e.byte) + ": " + e.what());
    }
    if (!root.is_object()) throw parse_error("document root must be an object");

    static const std::set<std::string> known = {
        "scenarios", "probabilities", "horizon",           "assets", "full_filtration",
        "seller_filtration", "no_short", "claims", "notes", "expected"};
    for (const auto& [key, value] : root.items()) {
        if (!known.count(key)) throw parse_error("unknown field '" + key + "'");
    }

    const json& jscen = field(root, "scenarios", "document");
    if (!jscen.is_array() || jscen.empty()) {
        throw parse_error("'scenarios' must be a nonempty list of names");
    }
    std::vector<std::string> names;
    for (const auto& s : jscen) names.push_back(string_field(s, "scenarios"));

    const json& jprob = field(root, "probabilities", "document");
    std::vector<Rational> probs;
    for (const auto& name : names) {
        probs.push_back(
            rational_field(field(jprob, name, "probabilities"), "probabilities." + name));
    }
    ScenarioSpace space(std::move(names), std::move(probs));

    const json& jh = field(root, "horizon", "document");
    if (!jh.is_number_unsigned() || jh.get<std::size_t>() < 1) {
        throw parse_error("'horizon' must be a positive integer");
    }
    const std::size_t horizon = jh.get<std::size_t>();

    const json& jassets = field(root, "assets", "document");
    if (!jassets.is_array() || jassets.empty()) {
        throw parse_error("'assets' must be a nonempty list");
    }
    std::vector<std::string> asset_names;
    std::vector<Process> prices;
    for (const auto& ja : jassets) {
        const std::string name = string_field(field(ja, "name", "asset"), "asset name");
        if (std::find(asset_names.begin(), asset_names.end(), name) != asset_names.end()) {
            throw input_error("duplicate asset name '" + name + "'");
        }
        asset_names.push_back(name);
        Process p;
        p.horizon = horizon;
        const json& jp = field(ja, "prices", "asset '" + name + "'");
        for (std::size_t t = 0; t <= horizon; ++t) {
            const std::string key = std::to_string(t);
            const json& slice = field(jp, key, "prices of '" + name + "'");
            std::vector<Rational> vals;
            for (std::size_t w = 0; w < space.size(); ++w) {
                const std::string& scen = space.names()[w];
                vals.push_back(rational_field(field(slice, scen, "price slice"),
                                              name + ".prices." + key + "." + scen));
            }
            if (slice.size() != space.size()) {
                throw parse_error(name + ".prices." + key + " has keys besides the scenarios");
            }
            p.values.push_back(std::move(vals));
        }
        prices.push_back(std::move(p));
    }

    Filtration full = parse_filtration(field(root, "full_filtration", "document"), space, horizon,
                                       prices, "full_filtration");
    Filtration seller = parse_filtration(field(root, "seller_filtration", "document"), space,
                                         horizon, prices, "seller_filtration");

    const json& jns = field(root, "no_short", "document");
    if (!jns.is_array()) throw parse_error("'no_short' must be a list of asset names");
    std::set<std::size_t> restricted;
    for (const auto& jname : jns) {
        const std::string name = string_field(jname, "no_short");
        const auto it = std::find(asset_names.begin(), asset_names.end(), name);
        if (it == asset_names.end()) {
            throw input_error("no_short lists unknown asset '" + name + "'");
        }
        restricted.insert(static_cast<std::size_t>(it - asset_names.begin()));
    }

    ParsedDocument doc{Market{std::move(space), horizon, std::move(asset_names),
                              std::move(prices), std::move(full), std::move(seller),
                              std::move(restricted)},
                       {}};

    const json& jclaims = field(root, "claims", "document");
    if (!jclaims.is_object()) throw parse_error("'claims' must be an object");
    for (const auto& [claim_name, jc] : jclaims.items()) {
        std::vector<Rational> payoff;
        for (std::size_t w = 0; w < doc.market.space.size(); ++w) {
            const std::string& scen = doc.market.space.names()[w];
            payoff.push_back(rational_field(field(jc, scen, "claim '" + claim_name + "'"),
                                            "claims." + claim_name + "." + scen));
        }
        if (jc.size() != doc.market.space.size()) {
            throw parse_error("claims." + claim_name + " has keys besides the scenarios");
        }
        doc.claims.emplace_back(claim_name, Claim(std::move(payoff)));
    }
    std::sort(doc.claims.begin(), doc.claims.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    if (enforce_valid) {
        const ValidationReport rep = validate_market(doc.market);
        if (!rep.ok()) {
            throw input_error("market fails validation: " + rep.failed.front().check + " (" +
                              rep.failed.front().witness + ")");
        }
    }
    return doc;
}

std::string serialize_market_document(const ParsedDocument& doc) {
    const Market& m = doc.market;
    ordered_json root;
    root["scenarios"] = m.space.names();
    ordered_json probs;
    for (std::size_t w = 0; w < m.space.size(); ++w) {
        probs[m.space.names()[w]] = to_string(m.space.probability(w));
    }
    root["probabilities"] = probs;
    root["horizon"] = m.horizon;

    ordered_json assets = ordered_json::array();
    for (std::size_t a = 0; a < m.asset_names.size(); ++a) {
        ordered_json ja;
        ja["name"] = m.asset_names[a];
        ordered_json jp;
        for (std::size_t t = 0; t <= m.horizon; ++t) {
            ordered_json slice;
            for (std::size_t w = 0; w < m.space.size(); ++w) {
                slice[m.space.names()[w]] = to_string(m.prices[a].values[t][w]);
            }
            jp[std::to_string(t)] = slice;
        }
        ja["prices"] = jp;
        assets.push_back(ja);
    }
    root["assets"] = assets;

    const auto filtration_json = [&](const Filtration& f) {
        ordered_json jf = ordered_json::array();
        for (std::size_t t = 0; t <= m.horizon; ++t) {
            ordered_json jpart = ordered_json::array();
            for (const auto& block : f.at(t).blocks()) {
                ordered_json jb = ordered_json::array();
                for (std::size_t w : block) jb.push_back(m.space.names()[w]);
                jpart.push_back(jb);
            }
            jf.push_back(jpart);
        }
        return jf;
    };
    root["full_filtration"] = filtration_json(m.full_filtration);
    root["seller_filtration"] = filtration_json(m.seller_filtration);

    ordered_json ns = ordered_json::array();
    for (std::size_t a : m.short_restricted) ns.push_back(m.asset_names[a]);
    root["no_short"] = ns;

    ordered_json jclaims;
    for (const auto& [name, claim] : doc.claims) {
        ordered_json jc;
        for (std::size_t w = 0; w < m.space.size(); ++w) {
            jc[m.space.names()[w]] = to_string(claim[w]);
        }
        jclaims[name] = jc;
    }
    root["claims"] = jclaims;
    return root.dump(2) + "\n";
}

bool markets_equal(const Market& a, const Market& b) {
    return a.space.names() == b.space.names() &&
           a.space.probabilities() == b.space.probabilities() && a.horizon == b.horizon &&
           a.asset_names == b.asset_names &&
           [&] {
               if (a.prices.size() != b.prices.size()) return false;
               for (std::size_t i = 0; i < a.prices.size(); ++i) {
                   if (a.prices[i].values != b.prices[i].values) return false;
               }
               return true;
           }() &&
           a.full_filtration == b.full_filtration && a.seller_filtration == b.seller_filtration &&
           a.short_restricted == b.short_restricted;
}

}  // namespace superrep
