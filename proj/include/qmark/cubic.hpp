#pragma once

#include "quadratic.hpp"
#include "rootisolate.hpp"

#include <array>

namespace qmark {

/// Element c0 + c1*L + c2*L^2 of the cubic field Q(L), where L is the real
/// root of x^3 = x^2 + x + 1 (L ~ 1.83929). Products are reduced to the
/// power basis (1, L, L^2); L is invertible with 1/L = L^2 - L - 1.
class Cubic {
public:
    Cubic() = default;
    Cubic(Rational c0) : c_{std::move(c0), Rational(0), Rational(0)} {}
    Cubic(int c0) : Cubic(Rational(c0)) {}
    Cubic(Rational c0, Rational c1, Rational c2) : c_{std::move(c0), std::move(c1), std::move(c2)} {}

    static Cubic lambda() { return Cubic(Rational(0), Rational(1), Rational(0)); }

    const Rational& operator[](int i) const { return c_[i]; }
    bool is_zero() const { return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero(); }
    bool is_rational() const { return c_[1].is_zero() && c_[2].is_zero(); }

    Cubic operator-() const { return Cubic(-c_[0], -c_[1], -c_[2]); }

    friend Cubic operator+(const Cubic& x, const Cubic& y) {
        return Cubic(x.c_[0] + y.c_[0], x.c_[1] + y.c_[1], x.c_[2] + y.c_[2]);
    }
    friend Cubic operator-(const Cubic& x, const Cubic& y) {
        return Cubic(x.c_[0] - y.c_[0], x.c_[1] - y.c_[1], x.c_[2] - y.c_[2]);
    }
    friend Cubic operator*(const Cubic& x, const Cubic& y) {
        const auto& a = x.c_;
        const auto& b = y.c_;
        Rational p0 = a[0] * b[0];
        Rational p1 = a[0] * b[1] + a[1] * b[0];
        Rational p2 = a[0] * b[2] + a[1] * b[1] + a[2] * b[0];
        Rational p3 = a[1] * b[2] + a[2] * b[1];
        Rational p4 = a[2] * b[2];
        // L^3 = 1 + L + L^2, L^4 = 1 + 2L + 2L^2
        return Cubic(p0 + p3 + p4, p1 + p3 + p4 + p4, p2 + p3 + p4 + p4);
    }
    friend Cubic operator/(const Cubic& x, const Cubic& y) { return x * y.inverse(); }

    Cubic& operator+=(const Cubic& o) { return *this = *this + o; }
    Cubic& operator-=(const Cubic& o) { return *this = *this - o; }
    Cubic& operator*=(const Cubic& o) { return *this = *this * o; }

    Cubic inverse() const {
        if (is_zero()) throw division_by_zero();
        // Columns of the multiplication-by-z matrix: z, z*L, z*L^2 in basis coords.
        Cubic zl = *this * lambda();
        Cubic zl2 = zl * lambda();
        const Cubic* col[3] = {this, &zl, &zl2};
        auto det3 = [&](const std::array<Rational, 3>& a, const std::array<Rational, 3>& b,
                        const std::array<Rational, 3>& c) {
            return a[0] * (b[1] * c[2] - b[2] * c[1]) - b[0] * (a[1] * c[2] - a[2] * c[1]) +
                   c[0] * (a[1] * b[2] - a[2] * b[1]);
        };
        // det = field norm of z, nonzero for z != 0; Cramer solve of M w = 1.
        Rational det = det3(col[0]->c_, col[1]->c_, col[2]->c_);
        std::array<Rational, 3> e0{Rational(1), Rational(0), Rational(0)};
        return Cubic(det3(e0, col[1]->c_, col[2]->c_) / det,
                     det3(col[0]->c_, e0, col[2]->c_) / det,
                     det3(col[0]->c_, col[1]->c_, e0) / det);
    }

    Cubic pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        Cubic r(Rational(1));
        Cubic base = *this;
        unsigned long u = static_cast<unsigned long>(e);
        while (u) {
            if (u & 1) r = r * base;
            base = base * base;
            u >>= 1;
        }
        return r;
    }

    /// Exact sign, via refinement of the certified enclosure of L.
    int sign() const {
        if (is_zero()) return 0;
        for (unsigned long bits = 32;; bits *= 2) {
            RationalInterval v = enclosure(bits);
            if (int s = v.sign(); s != 0) return s;
            if (bits > (1ul << 20)) throw std::logic_error("cubic sign refinement diverged");
        }
    }

    RationalInterval enclosure(unsigned long bits) const {
        RationalInterval L = lambda_enclosure_bits(bits);
        return RationalInterval(c_[0]) + RationalInterval(c_[1]) * L +
               RationalInterval(c_[2]) * (L * L);
    }

    friend bool operator==(const Cubic& x, const Cubic& y) {
        return x.c_[0] == y.c_[0] && x.c_[1] == y.c_[1] && x.c_[2] == y.c_[2];
    }
    friend bool operator<(const Cubic& x, const Cubic& y) { return (x - y).sign() < 0; }
    friend bool operator<=(const Cubic& x, const Cubic& y) { return (x - y).sign() <= 0; }
    friend bool operator>(const Cubic& x, const Cubic& y) { return (x - y).sign() > 0; }
    friend bool operator>=(const Cubic& x, const Cubic& y) { return (x - y).sign() >= 0; }

    /// "[c0, c1, c2]" in the basis (1, L, L^2).
    std::string str() const {
        return "[" + c_[0].str_plain() + ", " + c_[1].str_plain() + ", " + c_[2].str_plain() + "]";
    }

private:
    std::array<Rational, 3> c_{Rational(0), Rational(0), Rational(0)};
};

/// L^k for any integer k, reduced to the power basis.
inline Cubic lambda_pow(long k) { return Cubic::lambda().pow(k); }

}  // namespace qmark
