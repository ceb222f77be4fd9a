#include "vindec/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace vindec {

std::string to_string(const BigInt& z) { return z.str(); }

std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::domain_error("parse_rational: zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::domain_error("parse_rational: bad rational literal '" + text + "'");
    }
}

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("rational_from_double: non-finite input");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    BigInt num = static_cast<i64>(std::ldexp(m, 53));
    exp -= 53;
    Rational r(num);
    if (exp > 0)
        r *= big_pow(BigInt(2), static_cast<unsigned>(exp));
    else if (exp < 0)
        r /= big_pow(BigInt(2), static_cast<unsigned>(-exp));
    return r;
}

}  // namespace vindec
