#include "tritile/rational.hpp"

#include <cctype>

#include "tritile/errors.hpp"

namespace tritile {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError(0, "empty rational");
    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const size_t frac = s.size() - dot - 1;
        for (size_t i = 0; i < digits.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(digits[i])) && !(i == 0 && digits[i] == '-'))
                throw ParseError(0, "bad decimal '" + s + "'");
        Integer num(digits, 10), den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
        Rational r(num, den);
        r.canonicalize();
        return r;
    }
    Rational r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0) throw ParseError(0, "bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }

double to_double(const Rational& r) { return r.get_d(); }

Rational from_double(double x) {
    Rational r(x);
    r.canonicalize();
    return r;
}

Rational ratio(const Integer& p, const Integer& q) {
    if (q == 0) throw RangeError("zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

}  // namespace tritile
