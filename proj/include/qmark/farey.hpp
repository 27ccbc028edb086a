#pragma once

#include "expansions.hpp"

#include <algorithm>
#include <cassert>

namespace qmark {

// ---------------------------------------------------------------------------
// ECF level sets Y_k (with Z_k flags), built by double-mediant refinement.
// ---------------------------------------------------------------------------

struct EcfLevel {
    int k = 0;
    std::vector<Rational> ordered;  // Y_k, ascending
    std::vector<bool> in_z;         // Z_k membership, parallel to `ordered`

    std::size_t size() const { return ordered.size(); }
    std::size_t z_count() const {
        std::size_t c = 0;
        for (bool b : in_z) c += b;
        return c;
    }
};

namespace detail {

inline void check_ecf_level_cardinalities(const EcfLevel& lv) {
    Integer expect_y = ipow(3, static_cast<unsigned long>(lv.k)) + 1;
    Integer expect_z = (ipow(3, static_cast<unsigned long>(lv.k)) + 1) / 2;
    if (Integer(static_cast<long>(lv.size())) != expect_y)
        throw std::logic_error("ECF level: |Y_k| != 3^k + 1");
    if (Integer(static_cast<long>(lv.z_count())) != expect_z)
        throw std::logic_error("ECF level: |Z_k| != (3^k + 1)/2");
}

}  // namespace detail

/// One refinement step Y_k -> Y_{k+1}: between each adjacent pair, with z the
/// member lying in Z_k, insert the mediants m1 = z + y and m2 = z + m1
/// (weight 2 on z). m1 joins Z_{k+1}, m2 does not.
inline EcfLevel ecf_level_refine(const EcfLevel& level) {
    EcfLevel next;
    next.k = level.k + 1;
    next.ordered.reserve(3 * level.size() - 2);
    next.in_z.reserve(3 * level.size() - 2);
    for (std::size_t i = 0; i + 1 < level.size(); ++i) {
        bool zfirst = level.in_z[i];
        if (zfirst == level.in_z[i + 1])
            throw std::logic_error("ECF level: Z flags must alternate");
        const Rational& z = zfirst ? level.ordered[i] : level.ordered[i + 1];
        const Rational& y = zfirst ? level.ordered[i + 1] : level.ordered[i];
        Rational m1 = mediant(z, y);
        Rational m2 = mediant(z, m1);
        next.ordered.push_back(level.ordered[i]);
        next.in_z.push_back(level.in_z[i]);
        if (zfirst) {
            next.ordered.push_back(m2);
            next.in_z.push_back(false);
            next.ordered.push_back(m1);
            next.in_z.push_back(true);
        } else {
            next.ordered.push_back(m1);
            next.in_z.push_back(true);
            next.ordered.push_back(m2);
            next.in_z.push_back(false);
        }
    }
    next.ordered.push_back(level.ordered.back());
    next.in_z.push_back(level.in_z.back());
    detail::check_ecf_level_cardinalities(next);
    return next;
}

/// The ordered Y_k with Z_k flags, from Y_0 = {0, 1}.
inline EcfLevel ecf_level(int k) {
    if (k < 0) throw std::domain_error("ecf_level: k must be nonnegative");
    EcfLevel lv;
    lv.k = 0;
    lv.ordered = {Rational(0), Rational(1)};
    lv.in_z = {true, false};
    for (int i = 0; i < k; ++i) lv = ecf_level_refine(lv);
    detail::check_ecf_level_cardinalities(lv);
    return lv;
}

/// Independent construction of Y_k by enumerating ECF digit strings with
/// digit sum <= 2k+1 (the membership rule), used to cross-check refinement.
inline std::vector<std::pair<Rational, bool>> ecf_level_by_digit_sum(int k) {
    std::vector<std::pair<Rational, bool>> out;  // (value, in_Z)
    out.emplace_back(Rational(0), true);
    long budget = 2 * static_cast<long>(k) + 1;
    std::vector<SignedTerm> terms;
    auto emit = [&](bool allow_z) {
        EcfExpansion e(terms);
        out.emplace_back(cf_value(e), allow_z);
    };
    auto rec = [&](auto&& self, long left, bool first) -> void {
        // terminal (+1, 1) term
        if (left >= 1 && !terms.empty()) {
            terms.push_back({1, 1});
            emit(false);
            terms.pop_back();
        }
        if (left >= 1 && first) {
            terms.push_back({1, 1});  // the value 1 itself
            emit(false);
            terms.pop_back();
        }
        for (long a = 2; a <= left; a += 2) {
            for (int e : {1, -1}) {
                if (first && e != 1) continue;
                terms.push_back({e, a});
                emit(true);  // ends in an even digit: in Z
                self(self, left - a, false);
                terms.pop_back();
            }
        }
    };
    rec(rec, budget, true);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

// ---------------------------------------------------------------------------
// OCF level sets Y_n of digit sum <= n+1, with X_n flags.
// ---------------------------------------------------------------------------

struct OcfLevel {
    int n = 0;
    std::vector<Rational> ordered;
    std::vector<bool> in_x;                 // new at this level (digit sum = n+1)
    std::vector<OcfExpansion> expansions;   // parallel to `ordered`

    std::size_t size() const { return ordered.size(); }
    Integer max_denominator() const {
        Integer m = 1;
        for (const auto& r : ordered)
            if (r.den() > m) m = r.den();
        return m;
    }
};

/// All valid OCF digit strings with digit sum <= n+1, evaluated and sorted.
inline OcfLevel ocf_level(int n) {
    if (n < 0) throw std::domain_error("ocf_level: n must be nonnegative");
    long budget = static_cast<long>(n) + 1;
    std::vector<std::pair<Rational, OcfExpansion>> vals;
    vals.emplace_back(Rational(0), OcfExpansion{});
    std::vector<SignedTerm> terms;
    auto rec = [&](auto&& self, long left, bool next_sign_forced_plus) -> void {
        for (long a = 1; a <= left; a += 2) {
            for (int e : {1, -1}) {
                if (terms.empty() && e != 1) continue;             // leading sign +1
                if (next_sign_forced_plus && e != 1) continue;     // a_{i-1} = 1 forces +1
                terms.push_back({e, a});
                if (a != 1 || e == 1) {  // completion-valid: final 1 needs sign +1
                    OcfExpansion x(terms);
                    vals.emplace_back(cf_value(x), x);
                }
                self(self, left - a, a == 1);
                terms.pop_back();
            }
        }
    };
    rec(rec, budget, false);
    std::sort(vals.begin(), vals.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    OcfLevel lv;
    lv.n = n;
    for (auto& [v, e] : vals) {
        if (!lv.ordered.empty() && lv.ordered.back() == v)
            throw std::logic_error("ocf_level: duplicate value, expansions not unique");
        lv.ordered.push_back(v);
        lv.in_x.push_back(e.digit_sum() == budget);
        lv.expansions.push_back(e);
    }
    return lv;
}

// ---------------------------------------------------------------------------
// The three tree moves generating Zhabitskaya's odd Farey tree.
// ---------------------------------------------------------------------------

/// Admissible child expansions of a tree node: append (1,1); append
/// (-1,1),(1,1) when the last digit exceeds 1; or, when the last term is
/// (1,1), drop it and add 2 to the previous digit.
inline std::vector<OcfExpansion> ocf_moves(const OcfExpansion& x) {
    if (x.empty()) throw std::invalid_argument("ocf_moves: empty expansion");
    x.validate();
    std::vector<OcfExpansion> out;
    {
        auto t = x.terms();
        t.push_back({1, 1});
        out.emplace_back(std::move(t));
    }
    if (x.terms().back().digit > 1) {
        auto t = x.terms();
        t.push_back({-1, 1});
        t.push_back({1, 1});
        out.emplace_back(std::move(t));
    } else if (x.size() >= 2) {
        auto t = x.terms();
        t.pop_back();
        t.back().digit += 2;
        out.emplace_back(std::move(t));
    }
    return out;
}

}  // namespace qmark
