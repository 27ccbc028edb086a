#pragma once

#include "quadratic.hpp"
#include "rational.hpp"

#include <vector>

namespace qmark {

/// One level of a signed continued fraction: the sign sits above the digit,
/// x = e1/(a1 + e2/(a2 + ...)).
struct SignedTerm {
    int sign;    // +1 or -1
    long digit;  // positive

    friend bool operator==(const SignedTerm&, const SignedTerm&) = default;
};

// ---------------------------------------------------------------------------
// Even continued fractions: digits even, except a final digit 1 with sign +1.
// ---------------------------------------------------------------------------

class EcfExpansion {
public:
    enum class Kind {
        canonical,  // unique finite expansion of a rational
        prefix      // truncation of an infinite all-even expansion
    };

    EcfExpansion() = default;
    EcfExpansion(std::vector<SignedTerm> terms, Kind kind = Kind::canonical)
        : terms_(std::move(terms)), kind_(kind) {
        validate();
    }

    const std::vector<SignedTerm>& terms() const { return terms_; }
    Kind kind() const { return kind_; }
    bool is_prefix() const { return kind_ == Kind::prefix; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    long digit_sum() const {
        long s = 0;
        for (const auto& t : terms_) s += t.digit;
        return s;
    }
    bool ends_in_one() const { return !terms_.empty() && terms_.back().digit == 1; }

    void validate() const {
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const auto& t = terms_[i];
            if (t.sign != 1 && t.sign != -1) throw invalid_expansion("ecf: sign must be +1 or -1");
            if (t.digit < 1) throw invalid_expansion("ecf: digit must be positive");
            bool last = i + 1 == terms_.size();
            if (kind_ == Kind::prefix) {
                if (t.digit % 2 != 0)
                    throw invalid_expansion("ecf prefix: all digits must be even");
                continue;
            }
            if (!last && t.digit % 2 != 0)
                throw invalid_expansion("ecf: non-final digit must be even");
            if (last && t.digit % 2 != 0 && t.digit != 1)
                throw invalid_expansion("ecf: final digit must be even or 1");
            // Final digit 1 carries sign +1; the single-term [(-1,1)] = -1 is the
            // one exception, where the sign is the sign of the value itself.
            if (last && t.digit == 1 && t.sign != 1 && terms_.size() > 1)
                throw invalid_expansion("ecf: final digit 1 requires sign +1");
        }
    }

    friend bool operator==(const EcfExpansion& a, const EcfExpansion& b) {
        return a.terms_ == b.terms_;
    }

private:
    std::vector<SignedTerm> terms_;
    Kind kind_ = Kind::canonical;
};

// ---------------------------------------------------------------------------
// Odd continued fractions on [0,1]: digits odd, a_i + e_{i+1} > 0.
// ---------------------------------------------------------------------------

class OcfExpansion {
public:
    OcfExpansion() = default;
    explicit OcfExpansion(std::vector<SignedTerm> terms) : terms_(std::move(terms)) { validate(); }

    const std::vector<SignedTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    long digit_sum() const {
        long s = 0;
        for (const auto& t : terms_) s += t.digit;
        return s;
    }

    void validate() const {
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            const auto& t = terms_[i];
            if (t.sign != 1 && t.sign != -1) throw invalid_expansion("ocf: sign must be +1 or -1");
            if (t.digit < 1 || t.digit % 2 == 0)
                throw invalid_expansion("ocf: digits must be positive odd integers");
            if (i == 0 && t.sign != 1) throw invalid_expansion("ocf: leading sign must be +1");
            if (i + 1 < terms_.size() && t.digit + terms_[i + 1].sign <= 0)
                throw invalid_expansion("ocf: a_i + e_{i+1} > 0 violated");
            if (i + 1 == terms_.size() && t.digit == 1 && t.sign != 1)
                throw invalid_expansion("ocf: final digit 1 requires sign +1");
        }
    }

    friend bool operator==(const OcfExpansion& a, const OcfExpansion& b) {
        return a.terms_ == b.terms_;
    }

private:
    std::vector<SignedTerm> terms_;
};

// ---------------------------------------------------------------------------
// Regular continued fractions on [0,1], canonical finite form.
// ---------------------------------------------------------------------------

class RcfExpansion {
public:
    RcfExpansion() = default;
    explicit RcfExpansion(std::vector<long> terms) : terms_(std::move(terms)) { validate(); }

    const std::vector<long>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    long digit_sum() const {
        long s = 0;
        for (long a : terms_) s += a;
        return s;
    }

    void validate() const {
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (terms_[i] < 1) throw invalid_expansion("rcf: digits must be positive");
            if (i + 1 == terms_.size() && terms_[i] < 2 && terms_.size() > 1)
                throw invalid_expansion("rcf: final digit must be at least 2");
        }
        if (terms_.size() == 1 && terms_[0] < 1) throw invalid_expansion("rcf: digits must be positive");
    }

    friend bool operator==(const RcfExpansion& a, const RcfExpansion& b) {
        return a.terms_ == b.terms_;
    }

private:
    std::vector<long> terms_;
};

// ---------------------------------------------------------------------------
// Digit extraction
// ---------------------------------------------------------------------------

namespace detail {

inline long to_long(const Integer& n) {
    if (!n.fits_slong_p()) throw std::overflow_error("continued fraction digit overflows long");
    return n.get_si();
}

}  // namespace detail

/// ECF digits of a rational in [-1,1]. Each step takes the even integer
/// nearest to 1/|t|; an odd-integer tie picks the smaller even digit so the
/// remainder is +1 and the expansion ends with a (+1,1) term.
inline EcfExpansion ecf_expand(const Rational& x) {
    if (x.abs() > Rational(1)) throw std::domain_error("ecf_expand: |x| > 1");
    std::vector<SignedTerm> terms;
    Rational t = x;
    while (!t.is_zero()) {
        int e = t.sign();
        Rational u = t.abs().inverse();  // u >= 1
        if (u == Rational(1)) {
            terms.push_back({e, 1});
            break;
        }
        Integer fl = u.floor();
        long a;
        if (u.is_integer()) {
            long ui = detail::to_long(fl);
            a = ui % 2 == 0 ? ui : ui - 1;  // odd integer: pick the smaller even digit
        } else {
            long fli = detail::to_long(fl);
            a = fli % 2 == 0 ? fli : fli + 1;
        }
        terms.push_back({e, a});
        t = u - Rational(a);  // in (-1, 1]
    }
    return EcfExpansion(std::move(terms));
}

/// OCF digits of a rational in [0,1]. Each step takes the odd integer
/// nearest to 1/t; an even-integer tie picks a = 1/t - 1 (remainder +1).
inline OcfExpansion ocf_expand(const Rational& x) {
    if (x.sign() < 0 || x > Rational(1)) throw std::domain_error("ocf_expand: x outside [0,1]");
    std::vector<SignedTerm> terms;
    Rational t = x;
    int e = 1;
    while (!t.is_zero()) {
        Rational u = t.inverse();
        Integer fl = u.floor();
        long a;
        if (u.is_integer() && detail::to_long(fl) % 2 == 0)
            a = detail::to_long(fl) - 1;
        else
            a = 2 * detail::to_long(fl / 2) + 1;
        terms.push_back({e, a});
        Rational r = u - Rational(a);
        e = r.sign();
        t = r.abs();
    }
    return OcfExpansion(std::move(terms));
}

/// Canonical RCF digits (final digit >= 2, except x = 1 -> [1]).
inline RcfExpansion rcf_expand(const Rational& x) {
    if (x.sign() < 0 || x > Rational(1)) throw std::domain_error("rcf_expand: x outside [0,1]");
    std::vector<long> terms;
    if (x == Rational(1)) return RcfExpansion({1});
    Rational t = x;
    while (!t.is_zero()) {
        Rational u = t.inverse();
        long a = detail::to_long(u.floor());
        terms.push_back(a);
        t = u - Rational(a);
    }
    return RcfExpansion(std::move(terms));
}

// ---------------------------------------------------------------------------
// Evaluation and convergents
// ---------------------------------------------------------------------------

inline Rational cf_value(const EcfExpansion& e) {
    Rational v = 0;
    for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it)
        v = Rational(it->sign) / (Rational(it->digit) + v);
    return v;
}

inline Rational cf_value(const OcfExpansion& e) {
    Rational v = 0;
    for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it)
        v = Rational(it->sign) / (Rational(it->digit) + v);
    return v;
}

inline Rational cf_value(const RcfExpansion& e) {
    Rational v = 0;
    for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it)
        v = Rational(1) / (Rational(*it) + v);
    return v;
}

/// Convergents p_k/q_k via the signed recurrence
/// p_k = a_k p_{k-1} + e_k p_{k-2}, seeds (p_0, p_-1) = (0, 1), (q_0, q_-1) = (1, 0).
struct ConvergentList {
    struct Entry {
        Integer p;
        Integer q;
        Rational value() const { return Rational(p, q); }
    };
    std::vector<Entry> entries;
};

namespace detail {

template <typename Terms>
ConvergentList convergents_from_terms(const Terms& terms) {
    ConvergentList out;
    Integer p2 = 1, p1 = 0;  // p_{k-2}, p_{k-1}
    Integer q2 = 0, q1 = 1;
    for (const auto& t : terms) {
        Integer p = Integer(t.digit) * p1 + Integer(t.sign) * p2;
        Integer q = Integer(t.digit) * q1 + Integer(t.sign) * q2;
        if (q <= 0) throw std::logic_error("continuant not positive");
        out.entries.push_back({p, q});
        p2 = p1;
        p1 = p;
        q2 = q1;
        q1 = q;
    }
    return out;
}

}  // namespace detail

/// Exact check q^2 < (1+sqrt2)^S in Z[sqrt2].
inline bool even_continuant_bound_holds(const Integer& q, long digit_sum) {
    Sqrt2 theta_pow = silver_ratio().pow(digit_sum);
    return (theta_pow - Sqrt2(Rational(Integer(q * q)))).sign() > 0;
}

inline ConvergentList convergents(const EcfExpansion& e) {
    auto out = detail::convergents_from_terms(e.terms());
    Sqrt2 theta_pow(Rational(1));  // theta^{a_1+...+a_k}, grown incrementally
    for (std::size_t k = 0; k < out.entries.size(); ++k) {
        theta_pow = theta_pow * silver_ratio().pow(e.terms()[k].digit);
        const Integer& q = out.entries[k].q;
        if (!((theta_pow - Sqrt2(Rational(Integer(q * q)))).sign() > 0))
            throw std::logic_error("even continuant bound q_n < theta^(S/2) violated");
    }
    return out;
}

inline ConvergentList convergents(const OcfExpansion& e) {
    return detail::convergents_from_terms(e.terms());
}

/// RCF convergents from a raw digit list (also accepts non-canonical
/// prefixes such as [1,1,1,1]).
inline ConvergentList rcf_convergents(const std::vector<long>& digits) {
    ConvergentList out;
    Integer p2 = 1, p1 = 0, q2 = 0, q1 = 1;
    for (long a : digits) {
        if (a < 1) throw invalid_expansion("rcf: digits must be positive");
        Integer p = Integer(a) * p1 + p2;
        Integer q = Integer(a) * q1 + q2;
        out.entries.push_back({p, q});
        p2 = p1;
        p1 = p;
        q2 = q1;
        q1 = q;
    }
    return out;
}

inline ConvergentList convergents(const RcfExpansion& e) { return rcf_convergents(e.terms()); }

// ---------------------------------------------------------------------------
// Non-canonical prefixes
// ---------------------------------------------------------------------------

/// `pattern` repeated `repetitions` times, as an ECF prefix (all digits even).
inline EcfExpansion periodic_ecf(const std::vector<SignedTerm>& pattern, unsigned repetitions) {
    if (pattern.empty()) throw std::invalid_argument("periodic_ecf: empty pattern");
    for (const auto& t : pattern)
        if (t.digit < 2 || t.digit % 2 != 0)
            throw invalid_expansion("ecf prefix: all digits must be even");
    std::vector<SignedTerm> terms;
    terms.reserve(pattern.size() * repetitions);
    for (unsigned r = 0; r < repetitions; ++r)
        terms.insert(terms.end(), pattern.begin(), pattern.end());
    return EcfExpansion(std::move(terms), EcfExpansion::Kind::prefix);
}

/// Truncation of the equivalent infinite form of an expansion ending in (1,1):
/// [..., (1,1)] -> [..., (1,2), (-1,2), (-1,2), ...] with `depth` copies of (-1,2).
inline EcfExpansion ecf_tail_equivalence(const EcfExpansion& e, unsigned depth) {
    if (e.empty() || e.terms().back().digit != 1 || e.terms().back().sign != 1)
        throw std::invalid_argument("ecf_tail_equivalence: expansion must end in (1,1)");
    std::vector<SignedTerm> terms(e.terms().begin(), e.terms().end() - 1);
    terms.push_back({1, 2});
    for (unsigned i = 0; i < depth; ++i) terms.push_back({-1, 2});
    return EcfExpansion(std::move(terms), EcfExpansion::Kind::prefix);
}

}  // namespace qmark
