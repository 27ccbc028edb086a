#pragma once

#include "rational.hpp"

namespace qmark {

/// Element a + b*sqrt(D) of the real quadratic field Q(sqrt(D)).
/// Multiplication reduces via (sqrt D)^2 = D. Ordering is exact.
template <int D>
class Quad {
    static_assert(D > 1, "D must be a positive non-square");

public:
    Quad() = default;
    Quad(Rational a) : a_(std::move(a)) {}
    Quad(int a) : a_(a) {}
    Quad(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

    static Quad sqrt_d() { return Quad(Rational(0), Rational(1)); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }

    Quad operator-() const { return Quad(-a_, -b_); }

    friend Quad operator+(const Quad& x, const Quad& y) { return Quad(x.a_ + y.a_, x.b_ + y.b_); }
    friend Quad operator-(const Quad& x, const Quad& y) { return Quad(x.a_ - y.a_, x.b_ - y.b_); }
    friend Quad operator*(const Quad& x, const Quad& y) {
        return Quad(x.a_ * y.a_ + Rational(D) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_);
    }
    friend Quad operator/(const Quad& x, const Quad& y) { return x * y.inverse(); }

    Quad conjugate() const { return Quad(a_, -b_); }
    Rational norm() const { return a_ * a_ - Rational(D) * b_ * b_; }

    Quad inverse() const {
        if (is_zero()) throw division_by_zero();
        Rational n = norm();
        return Quad(a_ / n, -b_ / n);
    }

    Quad pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Quad r(Rational(1));
        Quad base = *this;
        unsigned long u = static_cast<unsigned long>(e);
        while (u) {
            if (u & 1) r = r * base;
            base = base * base;
            u >>= 1;
        }
        return r;
    }

    /// Exact sign of a + b*sqrt(D).
    int sign() const {
        int sa = a_.sign(), sb = b_.sign();
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // Opposite signs: compare a^2 against D b^2; sign follows the larger part.
        Rational d = a_ * a_ - Rational(D) * b_ * b_;
        int c = d.sign();
        if (c == 0) return 0;  // unreachable for non-square D, kept for safety
        return c > 0 ? sa : sb;
    }

    friend bool operator==(const Quad& x, const Quad& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator<(const Quad& x, const Quad& y) { return (x - y).sign() < 0; }
    friend bool operator<=(const Quad& x, const Quad& y) { return (x - y).sign() <= 0; }
    friend bool operator>(const Quad& x, const Quad& y) { return (x - y).sign() > 0; }
    friend bool operator>=(const Quad& x, const Quad& y) { return (x - y).sign() >= 0; }

    std::string str() const { return "(" + a_.str() + ") + (" + b_.str() + ")*sqrt(" + std::to_string(D) + ")"; }

private:
    Rational a_{0}, b_{0};
};

using Sqrt2 = Quad<2>;
using Sqrt5 = Quad<5>;

/// Golden ratio G = (1 + sqrt 5)/2, with G^2 = G + 1.
inline Sqrt5 golden_ratio() { return Sqrt5(Rational(1, 2), Rational(1, 2)); }

/// Silver ratio theta = 1 + sqrt 2.
inline Sqrt2 silver_ratio() { return Sqrt2(Rational(1), Rational(1)); }

}  // namespace qmark
