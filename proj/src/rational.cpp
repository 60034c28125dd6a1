#include "superrep/rational.hpp"

#include <cctype>

namespace superrep {

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) {
        return numerator(r).str();
    }
    return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

bool is_integer_token(const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && s[0] == '-') {
        if (s.size() == 1) return false;
        i = 1;
    }
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_integer_token(text, true)) {
            throw input_error("not a rational: '" + text + "'");
        }
        return Rational(Integer(text));
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!is_integer_token(num, true) || !is_integer_token(den, false)) {
        throw input_error("not a rational: '" + text + "'");
    }
    Integer d(den);
    if (d == 0) {
        throw input_error("zero denominator in rational: '" + text + "'");
    }
    return Rational(Integer(num), d);
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

}  // namespace superrep
