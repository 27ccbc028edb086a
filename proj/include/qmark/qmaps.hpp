#pragma once

#include "cubic.hpp"
#include "decimal.hpp"
#include "farey.hpp"

namespace qmark {

// ---------------------------------------------------------------------------
// Exact radix-p rationals m / p^k, stored with minimal k.
// ---------------------------------------------------------------------------

template <int P>
class RadixRational {
    static_assert(P == 2 || P == 3);

public:
    RadixRational() = default;
    RadixRational(Integer m, unsigned long k) : m_(std::move(m)), k_(k) { normalize(); }
    explicit RadixRational(long whole) : m_(whole), k_(0) {}

    const Integer& numerator() const { return m_; }
    unsigned long exponent() const { return k_; }
    bool is_zero() const { return m_ == 0; }

    Rational to_rational() const { return Rational(m_, ipow(P, k_)); }

    static RadixRational from_rational(const Rational& r) {
        Integer den = r.den();
        unsigned long k = 0;
        while (den % P == 0) {
            den /= P;
            ++k;
        }
        if (den != 1) throw std::invalid_argument("denominator is not a power of the radix");
        return RadixRational(r.num(), k);
    }

    RadixRational operator-() const { return RadixRational(-m_, k_); }

    friend RadixRational operator+(const RadixRational& a, const RadixRational& b) {
        unsigned long k = std::max(a.k_, b.k_);
        return RadixRational(a.m_ * ipow(P, k - a.k_) + b.m_ * ipow(P, k - b.k_), k);
    }
    friend RadixRational operator-(const RadixRational& a, const RadixRational& b) {
        return a + (-b);
    }
    /// p^j * value (j may be negative, increasing k).
    RadixRational scaled(long j) const {
        if (j >= 0) return RadixRational(m_ * ipow(P, static_cast<unsigned long>(j)), k_);
        return RadixRational(m_, k_ + static_cast<unsigned long>(-j));
    }

    RadixRational abs() const { return m_ < 0 ? -*this : *this; }
    int sign() const { return sgn(m_); }

    friend bool operator==(const RadixRational& a, const RadixRational& b) {
        return a.m_ == b.m_ && a.k_ == b.k_;
    }
    friend bool operator<(const RadixRational& a, const RadixRational& b) {
        return (a - b).sign() < 0;
    }

    std::string str() const { return to_rational().str(); }

private:
    void normalize() {
        if (m_ == 0) {
            k_ = 0;
            return;
        }
        while (k_ > 0 && m_ % P == 0) {
            m_ /= P;
            --k_;
        }
    }

    Integer m_ = 0;
    unsigned long k_ = 0;
};

using TriadicRational = RadixRational<3>;
using DyadicRational = RadixRational<2>;

// ---------------------------------------------------------------------------
// Classical Minkowski ?(x) on [0,1] via the alternating dyadic sum over the
// regular continued fraction digits.
// ---------------------------------------------------------------------------

inline DyadicRational minkowski_q(const RcfExpansion& e) {
    Integer acc = 0;
    unsigned long shift = 0;  // current exponent a_1 + ... + a_k - 1
    int sgn_term = 1;
    for (long a : e.terms()) {
        unsigned long step = static_cast<unsigned long>(a);
        acc = acc * ipow(2, step) + Integer(sgn_term) * 1;
        shift += step;
        sgn_term = -sgn_term;
    }
    if (shift == 0) return DyadicRational(Integer(0), 0);
    return DyadicRational(acc, shift - 1);
}

inline DyadicRational minkowski_q(const Rational& x) {
    if (x.sign() < 0 || x > Rational(1)) throw std::domain_error("minkowski_q: x outside [0,1]");
    return minkowski_q(rcf_expand(x));
}

// ---------------------------------------------------------------------------
// Even question mark Q_E: exact triadic values
//   Q_E(x) = -sum_k w_k (-e_1)...(-e_k) / 3^{sum_i floor(a_i/2)},
// w_k = 2 for even digits, 1 for a final digit 1.
// ---------------------------------------------------------------------------

inline TriadicRational q_e(const EcfExpansion& e) {
    Integer acc = 0;
    unsigned long shift = 0;
    int prod = 1;  // (-e_1)...(-e_k)
    for (const auto& t : e.terms()) {
        prod *= -t.sign;
        unsigned long step = static_cast<unsigned long>(t.digit / 2);
        long w = t.digit == 1 ? 1 : 2;
        acc = acc * ipow(3, step) - Integer(w * prod);
        shift += step;
    }
    return TriadicRational(acc, shift);
}

inline TriadicRational q_e(const Rational& x) {
    if (x.sign() < 0 || x > Rational(1)) throw std::domain_error("q_e: x outside [0,1]");
    return q_e(ecf_expand(x));
}

/// Counting definition of Q_E on the level set Y_k: the rank of x among Y_k.
/// The independent oracle for q_e; requires x in Y_k.
inline Integer q_e_rank(const Rational& x, const EcfLevel& level) {
    auto it = std::lower_bound(level.ordered.begin(), level.ordered.end(), x);
    if (it == level.ordered.end() || !(*it == x))
        throw std::domain_error("q_e_rank: x is not in Y_k");
    return Integer(static_cast<long>(it - level.ordered.begin()));
}

inline Integer q_e_rank(const Rational& x, int k) {
    if (x.sign() < 0 || x > Rational(1)) throw std::domain_error("q_e_rank: x outside [0,1]");
    if (ecf_expand(x).digit_sum() > 2 * static_cast<long>(k) + 1)
        throw std::domain_error("q_e_rank: x is not in Y_k (digit sum too large)");
    return q_e_rank(x, ecf_level(k));
}

/// Exact inverse of Q_E on triadic rationals, by unwinding the linearized
/// map: iterate Fbar_E on y until it reaches {0,1}, recording branches, then
/// apply the matching inverse branches of F_E in reverse order.
inline Rational q_e_inverse(const TriadicRational& y) {
    Rational yr = y.to_rational();
    if (yr.sign() < 0 || yr > Rational(1)) throw std::domain_error("q_e_inverse: y outside [0,1]");
    TriadicRational cur = y;
    std::vector<int> branches;
    unsigned long guard = 2 * y.exponent() + 1;
    const TriadicRational one(1), two(2);
    while (!(cur.is_zero() || cur == one)) {
        if (branches.size() > guard) throw std::logic_error("q_e_inverse: branch unwinding too long");
        TriadicRational scaled = cur.scaled(1);  // 3y
        if (scaled < one || scaled == one) {
            branches.push_back(1);
            cur = scaled;
        } else if (scaled < two || scaled == two) {
            branches.push_back(2);
            cur = two - scaled;
        } else {
            branches.push_back(3);
            cur = scaled - two;
        }
    }
    Rational x = cur.to_rational();
    for (auto it = branches.rbegin(); it != branches.rend(); ++it) {
        switch (*it) {
            case 1: x = x / (Rational(1) + Rational(2) * x); break;  // inverse of x/(1-2x)
            case 2: x = (Rational(2) + x).inverse(); break;          // inverse of 1/x - 2
            default: x = (Rational(2) - x).inverse(); break;         // inverse of 2 - 1/x
        }
    }
    return x;
}

/// Exact inverse of ?(x) on dyadic rationals via the tent-map conjugacy.
inline Rational minkowski_q_inverse(const DyadicRational& y) {
    Rational yr = y.to_rational();
    if (yr.sign() < 0 || yr > Rational(1))
        throw std::domain_error("minkowski_q_inverse: y outside [0,1]");
    DyadicRational cur = y;
    std::vector<int> branches;
    const DyadicRational one(1), two(2);
    while (!(cur.is_zero() || cur == one)) {
        DyadicRational scaled = cur.scaled(1);  // 2y
        if (scaled < one || scaled == one) {
            branches.push_back(1);
            cur = scaled;
        } else {
            branches.push_back(2);
            cur = two - scaled;
        }
    }
    Rational x = cur.to_rational();
    for (auto it = branches.rbegin(); it != branches.rend(); ++it) {
        if (*it == 1)
            x = x / (Rational(1) + x);  // inverse of x/(1-x)
        else
            x = (Rational(1) + x).inverse();  // inverse of (1-x)/x
    }
    return x;
}

// ---------------------------------------------------------------------------
// Odd question mark Q_O: exact values in Q(lambda)
//   Q_O(x) = -sum_k (-e_1)...(-e_k) / lambda^{a_1+...+a_k - 1}.
// ---------------------------------------------------------------------------

inline Cubic q_o(const OcfExpansion& e) {
    if (e.digit_sum() > 1000000)
        throw std::overflow_error("q_o: digit sum too large for exact evaluation; "
                                  "use the certified enclosure instead");
    Cubic acc(0);
    Cubic inv_pow(Rational(1));  // lambda^{-S_k}, updated incrementally
    int prod = 1;
    for (const auto& t : e.terms()) {
        prod *= -t.sign;
        inv_pow = inv_pow * lambda_pow(-t.digit);
        acc = acc - Cubic(Rational(prod)) * inv_pow;
    }
    // the formula wants lambda^{1-S_k}
    return acc * Cubic::lambda();
}

namespace detail {

inline RationalInterval interval_pow_compressed(RationalInterval base, unsigned long e,
                                                unsigned long bits) {
    RationalInterval r(Rational(1));
    while (e) {
        if (e & 1) r = (r * base).compressed(bits);
        base = (base * base).compressed(bits);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

/// Certified enclosure of Q_O along an expansion without exact field
/// arithmetic: terms beyond 2^-bits are absorbed into a geometric tail bound.
/// Digits may be astronomically large (they only enter through lambda^-a).
inline RationalInterval q_o_enclosure(const OcfExpansion& e, unsigned long bits) {
    RationalInterval L = lambda_enclosure_bits(bits + 8);
    RationalInterval Linv = RationalInterval(Rational(1)) / L;  // in (0,1)
    RationalInterval acc{Rational(0)};
    RationalInterval cur{Rational(1)};  // lambda^{-S_k}
    int prod = 1;
    Rational cutoff(Integer(1), ipow(2, bits + 4));
    for (const auto& t : e.terms()) {
        prod *= -t.sign;
        cur = (cur * detail::interval_pow_compressed(Linv, static_cast<unsigned long>(t.digit),
                                                     bits + 64))
                  .compressed(bits + 64);
        acc = acc - RationalInterval(Rational(prod)) * cur;
        if (cur.hi() < cutoff) {
            // |remaining| <= cur * sum_{j>=1} lambda^{-j} = cur / (lambda - 1) < 2 cur
            Rational tb = cur.hi() * Rational(2);
            acc = RationalInterval(acc.lo() - tb, acc.hi() + tb);
            break;
        }
    }
    return (acc * L).compressed(bits);
}

inline Cubic q_o(const Rational& x) {
    if (x.sign() < 0 || x > Rational(1)) throw std::domain_error("q_o: x outside [0,1]");
    return q_o(ocf_expand(x));
}

inline DecimalApprox q_o_decimal(const Rational& x, unsigned long digits) {
    if (x.sign() < 0 || x > Rational(1)) throw std::domain_error("q_o: x outside [0,1]");
    auto e = ocf_expand(x);
    for (unsigned long bits = 8 + 4 * digits;; bits *= 2) {
        RationalInterval v = q_o_enclosure(e, bits);
        if (v.width() * Rational(Integer(ipow(10, digits) * 4)) < Rational(1))
            return detail::decimal_from_interval(v, digits);
    }
}

/// Bracketing interval of width < 10^-digits around Q_O^{-1}(y). The bracket
/// walks the Stern-Brocot tree (mediant subdivision with doubling run
/// acceleration), so a rational preimage is reached exactly and the digit
/// sums of the probe points stay proportional to the tree depth. Each probe
/// is compared against y by certified interval evaluation at escalating
/// precision, with exact Q(lambda) arithmetic as the equality fallback.
/// Q_O is strictly increasing, so the bracket pins the unique preimage.
inline RationalInterval q_o_inverse(const Cubic& y, unsigned long digits) {
    Cubic one(1);
    if (y.sign() < 0 || (y - one).sign() > 0)
        throw std::domain_error("q_o_inverse: y outside [0,1]");
    if (y.sign() == 0) return RationalInterval(Rational(0));
    if ((y - one).sign() == 0) return RationalInterval(Rational(1));

    auto cmp = [&](const Rational& x) {  // certified sign of Q_O(x) - y
        auto e = ocf_expand(x);
        for (unsigned long bits = 96; bits <= (1ul << 14); bits *= 2) {
            RationalInterval qv = q_o_enclosure(e, bits);
            RationalInterval yv = y.enclosure(bits);
            if (qv.lo() > yv.hi()) return 1;
            if (qv.hi() < yv.lo()) return -1;
        }
        return (q_o(e) - y).sign();
    };

    Integer a = 0, b = 1, c = 1, d = 1;  // unimodular bracket (a/b, c/d)
    Rational eps(Integer(1), ipow(10, digits));
    while (Rational(Integer(1), Integer(b * d)) >= eps) {
        int s = cmp(Rational(a + c, b + d));
        if (s == 0) return RationalInterval(Rational(a + c, b + d));
        if (s > 0) {
            // preimage left of the mediant: pull c/d toward a/b, doubling the
            // run length while the probe still overshoots
            Integer k = 1;
            while (true) {
                Integer k2 = 2 * k;
                Rational probe(k2 * a + c, k2 * b + d);
                if (Rational(Integer(1), Integer(b * probe.den())) < eps) break;
                int s2 = cmp(probe);
                if (s2 == 0) return RationalInterval(probe);
                if (s2 < 0) break;
                k = k2;
            }
            c = k * a + c;
            d = k * b + d;
        } else {
            Integer k = 1;
            while (true) {
                Integer k2 = 2 * k;
                Rational probe(a + k2 * c, b + k2 * d);
                if (Rational(Integer(1), Integer(probe.den() * d)) < eps) break;
                int s2 = cmp(probe);
                if (s2 == 0) return RationalInterval(probe);
                if (s2 > 0) break;
                k = k2;
            }
            a = a + k * c;
            b = b + k * d;
        }
    }
    return RationalInterval(Rational(a, b), Rational(c, d));
}

inline RationalInterval q_o_inverse(const Rational& y, unsigned long digits) {
    return q_o_inverse(Cubic(y), digits);
}

}  // namespace qmark
