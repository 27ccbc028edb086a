#pragma once

#include "cubic.hpp"
#include "quadratic.hpp"

namespace qmark {

/// Decimal string together with its certified accuracy:
/// |true value - printed value| < 10^-digits, witnessed by error_bound.
struct DecimalApprox {
    std::string value;
    unsigned long digits = 0;
    Rational error_bound;
};

namespace detail {

/// Rounds half-away-from-zero at `digits` decimals.
inline std::string format_fixed(const Rational& x, unsigned long digits) {
    Integer scale = ipow(10, digits);
    Rational scaled = x.abs() * Rational(scale);
    Integer m = (scaled + Rational(1, 2)).floor();
    Integer whole = m / scale;
    Integer frac = m % scale;
    std::string fs = frac.get_str();
    if (fs.size() < digits) fs.insert(0, digits - fs.size(), '0');
    std::string out = whole.get_str();
    if (digits > 0) out += "." + fs;
    if (x.sign() < 0 && m != 0) out.insert(0, 1, '-');
    return out;
}

inline DecimalApprox decimal_from_interval(const RationalInterval& v, unsigned long digits) {
    Rational half_ulp(Integer(1), Integer(ipow(10, digits) * 2));
    Rational mid = v.mid();
    DecimalApprox d;
    d.value = format_fixed(mid, digits);
    d.digits = digits;
    // printed vs mid <= half ulp; mid vs true <= width/2
    d.error_bound = half_ulp + v.width() / Rational(2);
    return d;
}

}  // namespace detail

/// Certified decimal with |true - printed| < 10^-digits.
inline DecimalApprox eval_decimal(const Rational& x, unsigned long digits) {
    return detail::decimal_from_interval(RationalInterval(x), digits);
}

inline DecimalApprox eval_decimal(const RationalInterval& v, unsigned long digits) {
    Rational tol(Integer(1), Integer(ipow(10, digits) * 4));
    if (v.width() > tol)
        throw std::invalid_argument("interval too wide for requested decimal accuracy");
    return detail::decimal_from_interval(v, digits);
}

template <int D>
RationalInterval to_interval(const Quad<D>& z, unsigned long bits) {
    RationalInterval s = D == 2 ? sqrt2_enclosure_bits(bits) : sqrt5_enclosure_bits(bits);
    return RationalInterval(z.a()) + RationalInterval(z.b()) * s;
}

template <int D>
DecimalApprox eval_decimal(const Quad<D>& z, unsigned long digits) {
    for (unsigned long bits = 8 + 4 * digits;; bits *= 2) {
        RationalInterval v = to_interval(z, bits);
        if (v.width() * Rational(Integer(ipow(10, digits) * 4)) < Rational(1))
            return detail::decimal_from_interval(v, digits);
    }
}

inline DecimalApprox eval_decimal(const Cubic& z, unsigned long digits) {
    for (unsigned long bits = 8 + 4 * digits;; bits *= 2) {
        RationalInterval v = z.enclosure(bits);
        if (v.width() * Rational(Integer(ipow(10, digits) * 4)) < Rational(1))
            return detail::decimal_from_interval(v, digits);
    }
}

}  // namespace qmark
