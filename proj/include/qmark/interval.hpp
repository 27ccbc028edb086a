#pragma once

#include "rational.hpp"

#include <cassert>
#include <utility>

namespace qmark {

/// Closed interval with exact rational endpoints, lo <= hi.
/// The basic building block for certified evaluation: every operation
/// returns an interval guaranteed to contain the exact result.
class RationalInterval {
public:
    RationalInterval() = default;
    RationalInterval(Rational point) : lo_(point), hi_(std::move(point)) {}
    RationalInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
        if (lo_ > hi_) throw std::invalid_argument("interval endpoints out of order");
    }

    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    Rational width() const { return hi_ - lo_; }
    Rational mid() const { return (lo_ + hi_) / Rational(2); }

    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }

    /// Sign if determined, 0 if the interval straddles zero.
    int sign() const {
        if (lo_.sign() > 0) return 1;
        if (hi_.sign() < 0) return -1;
        return 0;
    }

    RationalInterval operator-() const { return RationalInterval(-hi_, -lo_); }

    friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
        return RationalInterval(a.lo_ + b.lo_, a.hi_ + b.hi_);
    }
    friend RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
        return RationalInterval(a.lo_ - b.hi_, a.hi_ - b.lo_);
    }
    friend RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
        Rational c1 = a.lo_ * b.lo_, c2 = a.lo_ * b.hi_, c3 = a.hi_ * b.lo_, c4 = a.hi_ * b.hi_;
        Rational lo = c1, hi = c1;
        for (const Rational* c : {&c2, &c3, &c4}) {
            if (*c < lo) lo = *c;
            if (*c > hi) hi = *c;
        }
        return RationalInterval(lo, hi);
    }
    friend RationalInterval operator/(const RationalInterval& a, const RationalInterval& b) {
        if (b.contains_zero()) throw division_by_zero();
        return a * RationalInterval(b.hi_.inverse(), b.lo_.inverse());
    }

    static RationalInterval hull(const RationalInterval& a, const RationalInterval& b) {
        return RationalInterval(a.lo_ < b.lo_ ? a.lo_ : b.lo_, a.hi_ > b.hi_ ? a.hi_ : b.hi_);
    }

    RationalInterval abs() const {
        if (lo_.sign() >= 0) return *this;
        if (hi_.sign() <= 0) return -*this;
        return RationalInterval(Rational(0), hi_ > -lo_ ? hi_ : -lo_);
    }

    /// Outward rounding of the endpoints to dyadics with `bits` fractional
    /// bits. Keeps denominators bounded through long computations.
    RationalInterval compressed(unsigned long bits) const {
        return RationalInterval(dyadic_floor(lo_, bits), dyadic_ceil(hi_, bits));
    }

    static Rational dyadic_floor(const Rational& x, unsigned long bits) {
        Integer scaled = (x * Rational(ipow(2, bits))).floor();
        return Rational(scaled, ipow(2, bits));
    }
    static Rational dyadic_ceil(const Rational& x, unsigned long bits) {
        Integer scaled = (x * Rational(ipow(2, bits))).ceil();
        return Rational(scaled, ipow(2, bits));
    }

private:
    Rational lo_{0}, hi_{0};
};

namespace detail {

inline long bit_length(const Integer& n) {
    return n == 0 ? 0 : static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

/// 2*atanh(t) = 2(t + t^3/3 + t^5/5 + ...) with remainder enclosure,
/// valid for |t| <= 1/2. Returns an interval containing log((1+t)/(1-t)).
inline RationalInterval atanh2_enclosure(const Rational& t, unsigned long bits) {
    assert(t.abs() <= Rational(1, 2));
    Rational t2 = t * t;
    Rational term = t;  // t^(2j+1)
    Rational sum = 0;
    unsigned long j = 0;
    Rational eps(Integer(1), ipow(2, bits + 2));
    // |t|^(2J+1) decays by at least 4 per term; stop when the tail bound is small.
    while (true) {
        sum += term / Rational(static_cast<long>(2 * j + 1));
        term *= t2;
        ++j;
        // Tail: 2 * sum_{i>=j} |t|^(2i+1)/(2i+1) <= 2|t|^(2j+1) / (1 - t^2) <= 4|term| / 3.
        Rational tail = Rational(4) * term.abs() / Rational(3);
        if (Rational(2) * tail < eps || j > 4 * bits + 16) {
            Rational s2 = Rational(2) * sum;
            return RationalInterval(s2 - tail * Rational(2), s2 + tail * Rational(2))
                .compressed(bits + 8);
        }
    }
}

inline RationalInterval log2_enclosure(unsigned long bits) {
    // log 2 = 2 atanh(1/3)
    return atanh2_enclosure(Rational(1, 3), bits);
}

}  // namespace detail

/// Certified enclosure of log(x) for rational x > 0, width about 2^-bits.
inline RationalInterval log_point(const Rational& x, unsigned long bits) {
    if (x.sign() <= 0) throw std::domain_error("log of non-positive value");
    // Reduce x = m * 2^k with m in (1/2, 2).
    long k = detail::bit_length(x.num()) - detail::bit_length(x.den());
    Rational m = k >= 0 ? x / Rational(ipow(2, static_cast<unsigned long>(k)))
                        : x * Rational(ipow(2, static_cast<unsigned long>(-k)));
    // t = (m-1)/(m+1) in (-1/3, 1/3)
    Rational t = (m - Rational(1)) / (m + Rational(1));
    RationalInterval series = detail::atanh2_enclosure(
        RationalInterval::dyadic_floor(t, bits + 16), bits);
    // Dyadic rounding of t perturbs log by at most |t - t'| / (1 - max|t|) < 2 * 2^-(bits+16).
    Rational pert(Integer(4), ipow(2, bits + 16));
    RationalInterval logm(series.lo() - pert, series.hi() + pert);
    if (k == 0) return logm;
    RationalInterval l2 = detail::log2_enclosure(bits + 8);
    RationalInterval kl2 = RationalInterval(Rational(k)) * l2;
    return (logm + kl2).compressed(bits + 4);
}

/// log over an interval argument (log is increasing).
inline RationalInterval log_interval(const RationalInterval& x, unsigned long bits) {
    if (x.lo().sign() <= 0) throw std::domain_error("log of non-positive interval");
    if (x.lo() == x.hi()) return log_point(x.lo(), bits);
    return RationalInterval(log_point(x.lo(), bits).lo(), log_point(x.hi(), bits).hi());
}

}  // namespace qmark
