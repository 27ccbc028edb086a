#pragma once

#include "interval.hpp"

#include <mutex>
#include <vector>

namespace qmark {

/// Dense univariate polynomial with rational coefficients, low degree first.
struct Polynomial {
    std::vector<Rational> coeffs;

    Rational operator()(const Rational& x) const {
        Rational r = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * x + *it;
        return r;
    }
    Polynomial derivative() const {
        Polynomial d;
        for (std::size_t i = 1; i < coeffs.size(); ++i)
            d.coeffs.push_back(coeffs[i] * Rational(static_cast<long>(i)));
        return d;
    }
};

/// Shrinks a sign-certified bracket [lo, hi] (f(lo) < 0 < f(hi)) around the
/// unique root until hi - lo < eps. Bisection with exact rational arithmetic;
/// midpoints are kept dyadic so denominators stay small.
inline RationalInterval isolate_root(const Polynomial& f, Rational lo, Rational hi,
                                     const Rational& eps) {
    if (f(lo).sign() >= 0 || f(hi).sign() <= 0)
        throw std::invalid_argument("isolate_root: bracket does not certify a sign change");
    while (hi - lo >= eps) {
        Rational mid = (lo + hi) / Rational(2);
        int s = f(mid).sign();
        if (s == 0) {
            // Rational root: collapse to an eps-wide certified bracket around it.
            Rational h = eps / Rational(4);
            return RationalInterval(mid - h, mid + h);
        }
        (s < 0 ? lo : hi) = mid;
    }
    return RationalInterval(lo, hi);
}

namespace detail {

/// Monotonically refined enclosure of a fixed algebraic constant.
class ConstantEnclosure {
public:
    ConstantEnclosure(Polynomial poly, Rational lo, Rational hi)
        : poly_(std::move(poly)), best_(std::move(lo), std::move(hi)) {}

    /// Enclosure of width < 2^-bits.
    RationalInterval at_bits(unsigned long bits) {
        Rational eps(Integer(1), ipow(2, bits));
        std::lock_guard<std::mutex> g(mu_);
        if (best_.width() >= eps) best_ = isolate_root(poly_, best_.lo(), best_.hi(), eps);
        return best_;
    }
    /// Enclosure of width < 10^-digits.
    RationalInterval at_digits(unsigned long digits) {
        Rational eps(Integer(1), ipow(10, digits));
        std::lock_guard<std::mutex> g(mu_);
        if (best_.width() >= eps) best_ = isolate_root(poly_, best_.lo(), best_.hi(), eps);
        return best_;
    }

private:
    Polynomial poly_;
    RationalInterval best_;
    std::mutex mu_;
};

inline ConstantEnclosure& lambda_store() {
    // x^3 - x^2 - x - 1, unique real root in [1, 2]
    static ConstantEnclosure c(Polynomial{{Rational(-1), Rational(-1), Rational(-1), Rational(1)}},
                               Rational(1), Rational(2));
    return c;
}
inline ConstantEnclosure& sqrt2_store() {
    static ConstantEnclosure c(Polynomial{{Rational(-2), Rational(0), Rational(1)}}, Rational(1),
                               Rational(2));
    return c;
}
inline ConstantEnclosure& sqrt5_store() {
    static ConstantEnclosure c(Polynomial{{Rational(-5), Rational(0), Rational(1)}}, Rational(2),
                               Rational(3));
    return c;
}

}  // namespace detail

/// Certified enclosure of the real root of x^3 = x^2 + x + 1 (width < 10^-digits).
inline RationalInterval lambda_isolate(unsigned long digits) {
    return detail::lambda_store().at_digits(digits);
}
inline RationalInterval lambda_enclosure_bits(unsigned long bits) {
    return detail::lambda_store().at_bits(bits);
}
inline RationalInterval sqrt2_enclosure_bits(unsigned long bits) {
    return detail::sqrt2_store().at_bits(bits);
}
inline RationalInterval sqrt5_enclosure_bits(unsigned long bits) {
    return detail::sqrt5_store().at_bits(bits);
}

}  // namespace qmark
