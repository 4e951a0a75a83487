#pragma once

#include <compare>
#include <string>

#include "owlet/rational.hpp"

namespace owlet {

/// Element a + b*sqrt(5) of the real quadratic field Q(sqrt 5).
/// All arithmetic and order comparisons are exact.
struct Quad5 {
    Rational a;
    Rational b;

    Quad5() = default;
    Quad5(Rational a_, Rational b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}
    Quad5(long long n) : a(n), b(0) {}

    static Quad5 sqrt5() { return Quad5(0, 1); }
    /// The golden ratio (1+sqrt5)/2.
    static Quad5 tau() { return Quad5(Rational(1, 2), Rational(1, 2)); }

    bool is_rational() const { return b == 0; }

    Quad5 operator+(const Quad5& o) const { return Quad5(a + o.a, b + o.b); }
    Quad5 operator-(const Quad5& o) const { return Quad5(a - o.a, b - o.b); }
    Quad5 operator-() const { return Quad5(-a, -b); }
    Quad5 operator*(const Quad5& o) const {
        return Quad5(a * o.a + 5 * b * o.b, a * o.b + b * o.a);
    }
    Quad5 operator/(const Quad5& o) const {
        // 1/(a+b*s5) = (a-b*s5)/(a^2-5b^2); the norm vanishes only at zero.
        Rational norm = o.a * o.a - 5 * o.b * o.b;
        if (norm == 0) throw std::domain_error("division by zero in Q(sqrt5)");
        Quad5 conj(o.a, -o.b);
        Quad5 num = *this * conj;
        return Quad5(num.a / norm, num.b / norm);
    }

    /// Sign of a + b*sqrt5 by integer comparison of a^2 against 5 b^2.
    int sign() const {
        int sa = a == 0 ? 0 : (a > 0 ? 1 : -1);
        int sb = b == 0 ? 0 : (b > 0 ? 1 : -1);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // opposite signs: |a| vs sqrt5 |b|
        Rational a2 = a * a, b25 = 5 * b * b;
        if (a2 == b25) return 0;
        return (a2 > b25) ? sa : sb;
    }

    bool operator==(const Quad5& o) const { return a == o.a && b == o.b; }
    bool operator<(const Quad5& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const Quad5& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const Quad5& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const Quad5& o) const { return (*this - o).sign() >= 0; }

    double to_double() const { return owlet::to_double(a) + owlet::to_double(b) * 2.2360679774997896964; }

    /// "a+b*sqrt5" with exact rational fields; plain "a" when b = 0.
    std::string str() const {
        if (b == 0) return rat_str(a);
        return rat_str(a) + "+" + rat_str(b) + "*sqrt5";
    }
};

inline Quad5 operator*(const Rational& r, const Quad5& q) { return Quad5(r * q.a, r * q.b); }

}  // namespace owlet
