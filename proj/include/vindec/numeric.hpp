#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace vindec {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;
using cplx = std::complex<double>;

inline BigInt big_pow(BigInt base, unsigned exp) {
    BigInt r = 1;
    while (exp) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

inline BigInt factorial(unsigned k) {
    BigInt r = 1;
    for (unsigned i = 2; i <= k; ++i) r *= i;
    return r;
}

/// Exact complex number with rational real/imaginary parts.
struct RationalComplex {
    Rational re, im;

    RationalComplex() = default;
    RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    RationalComplex& operator+=(const RationalComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
        return a.re == b.re && a.im == b.im;
    }
    Rational abs2() const { return re * re + im * im; }
};

inline RationalComplex rc_pow(RationalComplex base, unsigned exp) {
    RationalComplex r{Rational(1), Rational(0)};
    while (exp) {
        if (exp & 1) r = r * base;
        base = base * base;
        exp >>= 1;
    }
    return r;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const BigInt& z) { return z.convert_to<double>(); }

std::string to_string(const BigInt& z);
std::string to_string(const Rational& q);

/// Parses "p/q" or "p" into an exact rational. Throws std::domain_error on bad input.
Rational parse_rational(const std::string& text);

/// Exact rational from a double (doubles are dyadic rationals).
Rational rational_from_double(double x);

}  // namespace vindec
