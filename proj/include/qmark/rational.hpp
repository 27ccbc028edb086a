#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qmark {

using Integer = mpz_class;

/// Raised by exact operations on a zero divisor.
struct division_by_zero : std::domain_error {
    division_by_zero() : std::domain_error("division by zero") {}
};

struct invalid_expansion : std::invalid_argument {
    explicit invalid_expansion(const std::string& rule)
        : std::invalid_argument("invalid expansion: " + rule) {}
};

inline Integer ipow(Integer base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Integer fibonacci(unsigned long n) {
    Integer r;
    mpz_fib_ui(r.get_mpz_t(), n);
    return r;
}

/// Exact rational, always stored reduced with positive denominator.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(n) {}
    Rational(const Integer& n) : v_(n) {}
    Rational(const Integer& num, const Integer& den) : v_(num, den) {
        if (den == 0) throw division_by_zero();
        v_.canonicalize();
    }
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    const Integer num() const { return v_.get_num(); }
    const Integer den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational operator-() const { return Rational(mpq_class(-v_), already_canonical{}); }
    Rational abs() const { return sign() < 0 ? -*this : *this; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ + b.v_), already_canonical{});
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ - b.v_), already_canonical{});
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(mpq_class(a.v_ * b.v_), already_canonical{});
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw division_by_zero();
        return Rational(mpq_class(a.v_ / b.v_), already_canonical{});
    }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    Rational inverse() const {
        if (is_zero()) throw division_by_zero();
        Rational r;
        mpq_inv(r.v_.get_mpq_t(), v_.get_mpq_t());
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    /// Largest integer <= value.
    Integer floor() const {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return q;
    }
    Integer ceil() const {
        Integer q;
        mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
        return q;
    }

    /// "p/q", denominator always printed.
    std::string str() const {
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }
    /// "p" for integers, "p/q" otherwise (GMP default).
    std::string str_plain() const { return v_.get_str(); }

    double to_double() const { return v_.get_d(); }

private:
    struct already_canonical {};
    Rational(mpq_class q, already_canonical) : v_(std::move(q)) {}
    mpq_class v_;
};

/// Parses a base-10 integer with optional sign; nullopt on malformed input.
inline std::optional<Integer> parse_integer(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) return std::nullopt;
    for (char c : s)
        if (c < '0' || c > '9') return std::nullopt;
    Integer n(std::string(s), 10);
    return neg ? Integer(-n) : n;
}

/// Parses "p/q" or "p" with optional sign; nullopt on malformed input.
inline std::optional<Rational> parse_rational(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        auto n = parse_integer(s);
        if (!n) return std::nullopt;
        return Rational(*n, Integer(1));
    }
    auto num = parse_integer(s.substr(0, slash));
    auto den = parse_integer(s.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return Rational(*num, *den);
}

/// Mediant (p+r)/(q+s) of reduced fractions p/q, r/s. The result is not
/// reduced further; when |ps - rq| = 1 the result is automatically coprime
/// and this is asserted.
inline Rational mediant(const Rational& a, const Rational& b) {
    Integer p = a.num(), q = a.den(), r = b.num(), s = b.den();
    Integer det = p * s - r * q;
    Integer n = p + r, d = q + s;
    Rational m(n, d);
    if (det == 1 || det == -1) {
        Integer g;
        mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        if (g != 1) throw std::logic_error("mediant of adjacent fractions not coprime");
    }
    return m;
}

}  // namespace qmark
