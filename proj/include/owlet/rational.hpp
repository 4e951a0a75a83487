#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <string_view>

namespace owlet {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& n) { return n.convert_to<double>(); }

/// Renders "3/2" for non-integers, "3" for integers. Never a float.
inline std::string rat_str(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Parses "a", "a/b" or a plain decimal like "1.5".
inline Rational parse_rational(std::string_view s) {
    std::string str(s);
    auto slash = str.find('/');
    if (slash != std::string::npos) {
        BigInt num(str.substr(0, slash));
        BigInt den(str.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rational with zero denominator: " + str);
        return Rational(num, den);
    }
    auto dot = str.find('.');
    if (dot != std::string::npos) {
        std::string digits = str.substr(0, dot) + str.substr(dot + 1);
        std::size_t frac_len = str.size() - dot - 1;
        BigInt den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rational(BigInt(digits), den);
    }
    return Rational(BigInt(str));
}

inline BigInt int_pow(BigInt base, unsigned exp) {
    BigInt r = 1;
    while (exp) {
        if (exp & 1) r *= base;
        base *= base;
        exp >>= 1;
    }
    return r;
}

/// p-adic valuation of a nonzero rational; throws on zero.
inline long padic_valuation(const Rational& x, const BigInt& p) {
    if (x == 0) throw std::invalid_argument("valuation of zero is undefined");
    long v = 0;
    BigInt n = numerator(x) < 0 ? BigInt(-numerator(x)) : numerator(x);
    BigInt d = denominator(x);
    while (n % p == 0) { n /= p; ++v; }
    while (d % p == 0) { d /= p; --v; }
    return v;
}

}  // namespace owlet
