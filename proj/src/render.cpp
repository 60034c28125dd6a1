#include "superrep/render.hpp"

#include <cstdio>

namespace superrep {

std::string format_decimal(const Rational& r) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%#.6g", to_double(r));
    return buf;
}

std::string format_value(const Rational& r) {
    return to_string(r) + " (" + format_decimal(r) + ")";
}

std::string format_poly_row(const HPolytope& p, std::size_t row) {
    const PolyRow& r = p.rows[row];
    std::string out;
    for (std::size_t j = 0; j < r.coefficients.size(); ++j) {
        const Rational& c = r.coefficients[j];
        if (c == 0) continue;
        const Rational mag = c < 0 ? Rational(-c) : c;
        if (out.empty()) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        if (mag != 1) out += to_string(mag) + "*";
        out += p.variables[j];
    }
    if (out.empty()) out = "0";
    out += r.relation == PolyRelation::equal ? " = " : " <= ";
    out += to_string(r.rhs);
    return out;
}

std::string format_polytope(const HPolytope& p) {
    std::string out;
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
        out += format_poly_row(p, i);
        out += "\n";
    }
    return out;
}

}  // namespace superrep
