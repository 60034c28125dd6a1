#pragma once

#include "superrep/market.hpp"

#include <string>
#include <utility>
#include <vector>

namespace superrep {

/// Syntactic / structural document errors (bad JSON, missing or mistyped
/// fields). Content-level problems (bad values, violated invariants) raise
/// input_error instead.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParsedDocument {
    Market market;
    std::vector<std::pair<std::string, Claim>> claims;  // sorted by name
};

/// Parses the JSON market document format (see docs/market_schema.json).
/// Rationals are exact "a/b" or integer strings; filtrations are either
/// explicit partition lists or the strings "generated" / "price-generated"
/// (resolved from the asset price processes). With enforce_valid the
/// resulting market must pass validate_market, otherwise input_error is
/// thrown; the validate command parses without enforcement to report the
/// full failure list.
ParsedDocument parse_market_document(const std::string& text, bool enforce_valid = true);

/// Serializes back to the document format with explicit filtrations.
/// parse(serialize(parse(x))) reproduces the market field for field.
std::string serialize_market_document(const ParsedDocument& doc);

bool markets_equal(const Market& a, const Market& b);

}  // namespace superrep
