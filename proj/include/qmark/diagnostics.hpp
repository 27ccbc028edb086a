#pragma once

#include "maps.hpp"
#include "measures.hpp"
#include "qmaps.hpp"
#include "stern.hpp"

#include <set>

namespace qmark {

enum class Family { even, odd, rcf };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::even: return "even";
        case Family::odd: return "odd";
        case Family::rcf: return "rcf";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Symbolic digit actions of the maps (cross-checked against map_apply).
// ---------------------------------------------------------------------------

/// Gauss shift: drop the leading pair, new leading sign +1.
inline EcfExpansion symbolic_T_E(const EcfExpansion& e) {
    if (e.empty()) return e;
    std::vector<SignedTerm> t(e.terms().begin() + 1, e.terms().end());
    if (!t.empty()) t[0].sign = 1;
    return EcfExpansion(std::move(t));
}

/// Extended Gauss shift: drop the leading pair, keep the next sign.
inline EcfExpansion symbolic_T_tilde_E(const EcfExpansion& e) {
    if (e.empty()) return e;
    return EcfExpansion({e.terms().begin() + 1, e.terms().end()});
}

/// Even Farey action: subtract 2 from the leading digit, or remove the
/// leading pair when the digit is already 2.
inline EcfExpansion symbolic_F_E(const EcfExpansion& e) {
    if (e.empty()) return e;
    auto t = e.terms();
    if (t[0].digit >= 4) {
        t[0].digit -= 2;
        return EcfExpansion(std::move(t));
    }
    if (t[0].digit == 2) return symbolic_T_E(e);
    throw std::domain_error("symbolic_F_E: undefined on x = 1");
}

inline OcfExpansion symbolic_T_O(const OcfExpansion& e) {
    if (e.empty()) return e;
    std::vector<SignedTerm> t(e.terms().begin() + 1, e.terms().end());
    if (!t.empty()) t[0].sign = 1;
    return OcfExpansion(std::move(t));
}

/// Odd Farey action: subtract 2 from the leading digit unless the leading
/// pair is (a_1, e_2) in {(3,-1), (1,+1)} (or a bare final 1 or 3), in which
/// case the pair is removed.
inline OcfExpansion symbolic_F_O(const OcfExpansion& e) {
    if (e.empty()) return e;
    auto t = e.terms();
    long a1 = t[0].digit;
    int e2 = t.size() > 1 ? t[1].sign : 1;
    bool removal = (a1 == 3 && e2 == -1) || (a1 == 1 && e2 == 1);
    if (t.size() == 1) removal = a1 == 3 || a1 == 1;
    if (removal) return symbolic_T_O(e);
    t[0].digit -= 2;
    return OcfExpansion(std::move(t));
}

// ---------------------------------------------------------------------------
// Exact conjugacy checks: Q ∘ map = linearized-map ∘ Q.
// ---------------------------------------------------------------------------

struct ConjugacyPointResult {
    bool farey_ok = false;
    bool gauss_ok = false;
    bool ok() const { return farey_ok && gauss_ok; }
};

/// Exact verification at one rational point x in (0,1) (endpoints allowed).
inline ConjugacyPointResult conjugacy_check(Family family, const Rational& x) {
    ConjugacyPointResult r;
    switch (family) {
        case Family::even: {
            Rational y = q_e(x).to_rational();
            r.farey_ok = q_e(map_apply(MapId::F_E, x)).to_rational() == map_apply(MapId::Fbar_E, y);
            r.gauss_ok = q_e(map_apply(MapId::T_E, x)).to_rational() == map_apply(MapId::Tbar_E, y);
            return r;
        }
        case Family::odd: {
            Cubic y = q_o(x);
            r.farey_ok = q_o(map_apply(MapId::F_O, x)) == map_apply(MapId::Fbar_O, y);
            r.gauss_ok = q_o(map_apply(MapId::T_O, x)) == map_apply(MapId::Tbar_O, y);
            return r;
        }
        case Family::rcf: {
            Rational y = minkowski_q(x).to_rational();
            r.farey_ok = minkowski_q(map_apply(MapId::F, x)).to_rational() ==
                         map_apply(MapId::Tent, y);
            r.gauss_ok = r.farey_ok;  // only the Farey linearization is stated for ?(x)
            return r;
        }
    }
    return r;
}

/// Breakpoints of the piecewise maps involved in the family's conjugacies.
inline bool is_conjugacy_breakpoint(Family family, const Rational& x) {
    if (x.is_zero() || x == Rational(1)) return true;
    bool unit_num = x.num() == 1;
    switch (family) {
        case Family::even:
            // F_E breaks at 1/3, 1/2; T_E at odd reciprocals
            return x == Rational(1, 3) || x == Rational(1, 2) ||
                   (unit_num && x.den() % 2 == 1);
        case Family::odd:
            return x == Rational(1, 3) || x == Rational(1, 2) ||
                   (unit_num && x.den() % 2 == 0);
        case Family::rcf: return x == Rational(1, 2);
    }
    return false;
}

struct ConjugacySuiteReport {
    Family family;
    std::size_t points = 0;
    std::size_t breakpoints = 0;   // checked as well; counted separately
    std::size_t farey_failures = 0;
    std::size_t gauss_failures = 0;
    bool pass = false;
};

/// Every point of the given set, breakpoints included (the implementations
/// resolve shared branch endpoints consistently, so they must pass too).
inline ConjugacySuiteReport conjugacy_suite(Family family, const std::vector<Rational>& points) {
    ConjugacySuiteReport rep;
    rep.family = family;
    rep.points = points.size();
    for (const auto& x : points) {
        if (is_conjugacy_breakpoint(family, x)) ++rep.breakpoints;
        auto r = conjugacy_check(family, x);
        if (!r.farey_ok) ++rep.farey_failures;
        if (!r.gauss_ok) ++rep.gauss_failures;
    }
    rep.pass = rep.farey_failures == 0 && rep.gauss_failures == 0;
    return rep;
}

// ---------------------------------------------------------------------------
// Level sets via preimage iteration: Y_n = F_E^{-n}({0,1}).
// ---------------------------------------------------------------------------

struct LevelSetReport {
    int depth = 0;
    std::size_t preimage_count = 0;
    bool matches_mediant_construction = false;
};

/// Computes F_E^{-n}({0,1}) by exact branch-inverse iteration of points and
/// compares against the mediant-refinement construction of Y_n.
inline LevelSetReport verify_level_sets(int n) {
    std::set<Rational> pts{Rational(0), Rational(1)};
    const Rational one(1), two(2);
    for (int i = 0; i < n; ++i) {
        std::set<Rational> next;
        for (const auto& z : pts) {
            next.insert(z / (one + two * z));        // inverse of x/(1-2x)
            next.insert((two + z).inverse());        // inverse of 1/x - 2
            if (!(z == two)) next.insert((two - z).inverse());  // inverse of 2 - 1/x
        }
        // keep the endpoints (convention 0,1 in Y_n)
        next.insert(Rational(0));
        next.insert(Rational(1));
        pts = std::move(next);
    }
    LevelSetReport rep;
    rep.depth = n;
    rep.preimage_count = pts.size();
    auto lv = ecf_level(n);
    rep.matches_mediant_construction =
        pts.size() == lv.ordered.size() &&
        std::equal(pts.begin(), pts.end(), lv.ordered.begin());
    return rep;
}

// ---------------------------------------------------------------------------
// Hölder exponent sequences along the extremal points.
// ---------------------------------------------------------------------------

struct HolderReport {
    Family family;
    int depth = 0;
    std::vector<DecimalApprox> exponents;  // s_1 .. s_depth (decimal, 6 digits)
    DecimalApprox target;                  // the published constant
    DecimalApprox final_distance;          // |s_depth - target|, certified
    bool within_tolerance = false;         // < 0.01
};

namespace detail {

struct HolderStep {
    RationalInterval log_num;  // log |Q(x*) - Q(p_k/q_k)|
    RationalInterval log_den;  // log |x* - p_k/q_k|
};

inline RationalInterval cubic_abs_interval(const Cubic& z, unsigned long bits) {
    // certified |z| for z != 0: refine until the sign is determined
    for (unsigned long b = bits;; b *= 2) {
        RationalInterval v = z.enclosure(b);
        if (v.sign() > 0) return v;
        if (v.sign() < 0) return -v;
        if (b > (1ul << 22)) throw std::logic_error("cubic abs: value is (numerically) zero");
    }
}

template <int D>
RationalInterval quad_abs_interval(const Quad<D>& z, unsigned long bits) {
    return z.sign() >= 0 ? to_interval(z, bits) : to_interval(-z, bits);
}

}  // namespace detail

/// Exponent sequence s_k = log|Q(x*) - Q(p_k/q_k)| / log|x* - p_k/q_k| for the
/// extremal point of each family (sqrt2 - 1 for ECF, G - 1 for OCF and RCF),
/// against the published Hölder constants.
inline HolderReport holder_estimate(Family family, int depth) {
    if (depth < 1) throw std::domain_error("holder_estimate: depth must be positive");
    const unsigned long bits = 192;
    HolderReport rep;
    rep.family = family;
    rep.depth = depth;

    std::vector<detail::HolderStep> steps;
    RationalInterval target(Rational(0));

    switch (family) {
        case Family::even: {
            Sqrt2 xstar(Rational(-1), Rational(1));  // sqrt2 - 1
            Rational qe_star(1, 2);
            Integer p2 = 1, p1 = 0, q2 = 0, q1 = 1;
            std::vector<SignedTerm> prefix;
            for (int k = 1; k <= depth; ++k) {
                prefix.push_back({1, 2});
                Integer p = 2 * p1 + p2, q = 2 * q1 + q2;
                p2 = p1; p1 = p; q2 = q1; q1 = q;
                Rational num = (qe_star -
                                q_e(EcfExpansion(prefix, EcfExpansion::Kind::prefix)).to_rational())
                                   .abs();
                auto den = detail::quad_abs_interval(xstar - Sqrt2(Rational(p, q)), bits);
                steps.push_back({log_point(num, bits), log_interval(den, bits)});
            }
            RationalInterval log3 = log_point(Rational(3), bits);
            RationalInterval logtheta = log_interval(to_interval(silver_ratio(), bits), bits);
            target = log3 / (RationalInterval(Rational(2)) * logtheta);
            break;
        }
        case Family::odd:
        case Family::rcf: {
            Sqrt5 xstar(Rational(-1, 2), Rational(1, 2));  // G - 1
            Cubic L = Cubic::lambda();
            Cubic qo_star = L / (L + Cubic(1));
            std::vector<SignedTerm> prefix;
            for (int k = 1; k <= depth; ++k) {
                prefix.push_back({1, 1});
                Rational pk(fibonacci(static_cast<unsigned long>(k)),
                            fibonacci(static_cast<unsigned long>(k + 1)));
                auto den = detail::quad_abs_interval(xstar - Sqrt5(pk), bits);
                RationalInterval log_num(Rational(0));
                if (family == Family::odd) {
                    Cubic diff = qo_star - q_o(OcfExpansion(prefix));
                    log_num = log_interval(detail::cubic_abs_interval(diff, bits), bits);
                } else {
                    Rational num = (Rational(2, 3) - minkowski_q(pk).to_rational()).abs();
                    log_num = log_point(num, bits);
                }
                steps.push_back({log_num, log_interval(den, bits)});
            }
            RationalInterval logG = log_interval(to_interval(golden_ratio(), bits), bits);
            RationalInterval lognum = family == Family::odd
                                          ? log_interval(lambda_enclosure_bits(bits), bits)
                                          : log_point(Rational(2), bits);
            target = lognum / (RationalInterval(Rational(2)) * logG);
            break;
        }
    }

    RationalInterval last(Rational(0));
    for (const auto& st : steps) {
        RationalInterval s = st.log_num / st.log_den;
        rep.exponents.push_back(detail::decimal_from_interval(s, 6));
        last = s;
    }
    rep.target = detail::decimal_from_interval(target, 6);
    RationalInterval dist = (last - target).abs();
    rep.final_distance = detail::decimal_from_interval(dist, 6);
    rep.within_tolerance = dist.hi() < Rational(1, 100);
    return rep;
}

// ---------------------------------------------------------------------------
// Singularity diagnostics: two-sided tail enclosure and the r_n ratio bound.
// ---------------------------------------------------------------------------

struct SingularityReport {
    int depth = 0;
    bool enclosure_ok = false;  // 3^{-S/2} < |y - Q_E(p_n/q_n)| <= 3^{1-S/2} at each n
    bool ratio_ok = false;      // r_n/r_{n-1} < 2(a_{n+1}+2)(a_n+1)^2 / 3^{a_{n+1}/2}
    int first_enclosure_failure = -1;
    int first_ratio_failure = -1;
};

/// Exact-rational verification of the singularity bounds along an ECF prefix.
/// Requires at least depth+1 terms. All comparisons against half-integer
/// powers of 3 are done by squaring.
inline SingularityReport derivative_ratio_diagnostic(const EcfExpansion& e, int depth) {
    if (static_cast<long>(e.size()) < depth + 1)
        throw std::invalid_argument("derivative_ratio_diagnostic: needs at least depth+1 terms");
    SingularityReport rep;
    rep.depth = depth;
    rep.enclosure_ok = rep.ratio_ok = true;

    Rational x = cf_value(e);
    Rational y = q_e(e).to_rational();
    auto conv = detail::convergents_from_terms(e.terms());

    std::vector<Rational> r(depth + 1);
    long S = 0;  // digit sum through position k+1
    for (int k = 1; k <= depth; ++k) {
        EcfExpansion pre({e.terms().begin(), e.terms().begin() + k}, EcfExpansion::Kind::prefix);
        Rational num = (y - q_e(pre).to_rational()).abs();
        Rational den = (x - conv.entries[k - 1].value()).abs();
        r[k] = num / den;

        S = 0;
        for (int i = 0; i <= k; ++i) S += e.terms()[i].digit;
        // prefix digits are even >= 2, so S >= 4 here
        // 3^{-S/2} < num <= 3^{1 - S/2}, squared: num^2 3^S > 1 and num^2 3^{S-2} <= 1
        Rational n2 = num * num;
        bool enc = n2 * Rational(ipow(3, static_cast<unsigned long>(S))) > Rational(1) &&
                   n2 * Rational(ipow(3, static_cast<unsigned long>(S - 2))) <= Rational(1);
        if (!enc && rep.enclosure_ok) {
            rep.enclosure_ok = false;
            rep.first_enclosure_failure = k;
        }
        if (k >= 2) {
            long an = e.terms()[k - 1].digit;    // a_k in 1-based paper indexing
            long an1 = e.terms()[k].digit;       // a_{k+1}
            // (r_k / r_{k-1})^2 < 4 (a_{k+1}+2)^2 (a_k+1)^4 / 3^{a_{k+1}}
            Rational lhs = (r[k] / r[k - 1]);
            Rational rhs2 = Rational(4) * Rational((an1 + 2) * (an1 + 2)) *
                            Rational(ipow(Integer(an + 1), 4)) /
                            Rational(ipow(3, static_cast<unsigned long>(an1)));
            if (!(lhs * lhs < rhs2) && rep.ratio_ok) {
                rep.ratio_ok = false;
                rep.first_ratio_failure = k;
            }
        }
    }
    return rep;
}

/// Random all-even ECF prefix of the given length (digits 2..12, geometric-ish,
/// signs uniform, leading sign +1), for randomized singularity diagnostics.
inline EcfExpansion random_ecf_prefix(std::size_t length, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> sign(0, 1);
    std::geometric_distribution<int> gd(0.55);
    std::vector<SignedTerm> t;
    t.reserve(length);
    for (std::size_t i = 0; i < length; ++i) {
        long a = 2 * (1 + std::min(gd(rng), 5));
        t.push_back({i == 0 || sign(rng) ? 1 : -1, a});
    }
    return EcfExpansion(std::move(t), EcfExpansion::Kind::prefix);
}

// ---------------------------------------------------------------------------
// First return maps and their conjugacy to the extended Gauss maps.
// ---------------------------------------------------------------------------

struct ReturnMapReport {
    Family family;
    Rational x;
    bool returned = false;
    unsigned steps = 0;
    std::optional<Rational> dynamic_return;
    std::optional<Rational> symbolic_return;
    bool symbolic_matches = false;
    bool conjugacy_ok = false;
    std::string note;
};

/// First return of F_E on (1/3, 1] (resp. F_O on [1/3, 1)), checked against
/// the symbolic second-pair deletion and against phi R = T-tilde phi
/// (phi(x) = 1/x - 2 for ECF; psi for OCF).
inline ReturnMapReport return_map_check(Family family, const Rational& x, unsigned max_iters = 512) {
    ReturnMapReport rep;
    rep.family = family;
    rep.x = x;
    const Rational one(1), third(1, 3);

    if (family == Family::even) {
        detail::require(x > third && x <= one, "return_map_check: x outside (1/3, 1]");
        MapId fm = MapId::F_E;
        Rational z = map_apply(fm, x);
        rep.steps = 1;
        while (!(z > third && z <= one) && !z.is_zero() && rep.steps < max_iters) {
            z = map_apply(fm, z);
            ++rep.steps;
        }
        rep.returned = z > third && z <= one;
        if (rep.returned) rep.dynamic_return = z;

        auto e = ecf_expand(x);
        if (e.size() >= 2 && e.terms()[0] == SignedTerm{1, 2}) {
            std::vector<SignedTerm> t;
            t.push_back(e.terms()[0]);
            t.insert(t.end(), e.terms().begin() + 2, e.terms().end());
            rep.symbolic_return = cf_value(EcfExpansion(std::move(t)));
        }
        if (rep.symbolic_return && rep.dynamic_return) {
            rep.symbolic_matches = *rep.symbolic_return == *rep.dynamic_return;
            if (!rep.symbolic_matches && *rep.symbolic_return == third &&
                *rep.dynamic_return == one) {
                // deletion lands on the open boundary 1/3; one more F_E step
                // reaches the dynamic return
                rep.symbolic_matches = true;
                rep.note = "symbolic deletion lands on the excluded boundary 1/3";
            }
        }
        // phi conjugacy: T_tilde_E(phi(x)) = phi(R(x)), phi = 1/x - 2
        Rational phix = x.inverse() - Rational(2);
        Rational lhs = map_apply(MapId::T_tilde_E, phix);
        if (rep.returned) {
            rep.conjugacy_ok = lhs == rep.dynamic_return->inverse() - Rational(2);
        } else {
            rep.conjugacy_ok = lhs == phix;  // orbit dies at the T-tilde fixed point
            rep.note = "no first return; phi(x) is a fixed point of the extended Gauss map";
        }
        return rep;
    }
    if (family == Family::odd) {
        detail::require(x >= third && x < one, "return_map_check: x outside [1/3, 1)");
        Rational z = map_apply(MapId::F_O, x);
        rep.steps = 1;
        while (!(z >= third && z < one) && !z.is_zero() && rep.steps < max_iters) {
            z = map_apply(MapId::F_O, z);
            ++rep.steps;
        }
        rep.returned = z >= third && z < one;
        if (rep.returned) rep.dynamic_return = z;

        auto e = ocf_expand(x);
        if (e.size() >= 2) {
            // Drop the second pair; the head digit becomes the unique one of
            // {1, 3} compatible with the next sign (3 with -1, 1 with +1).
            // With nothing after the dropped pair, the Farey descent of
            // [(1,a_2)] bottoms out at [(1,3)] = 1/3 when a_2 >= 3, and exits
            // through [(1,1)] = 1 when a_2 = 1.
            std::vector<SignedTerm> tail(e.terms().begin() + 2, e.terms().end());
            long head;
            if (tail.empty())
                head = e.terms()[1].digit == 1 ? 1 : 3;
            else
                head = tail[0].sign == 1 ? 1 : 3;
            std::vector<SignedTerm> t;
            t.push_back({1, head});
            t.insert(t.end(), tail.begin(), tail.end());
            rep.symbolic_return = cf_value(OcfExpansion(std::move(t)));
        }
        if (rep.symbolic_return && rep.dynamic_return)
            rep.symbolic_matches = *rep.symbolic_return == *rep.dynamic_return;

        // psi conjugacy: T_tilde_O(psi(x)) = psi(R(x))
        auto psi = [&](const Rational& v) {
            return v <= Rational(1, 2) ? v.inverse() - Rational(3) : v.inverse() - one;
        };
        Rational lhs = map_apply(MapId::T_tilde_O, psi(x));
        if (rep.returned) {
            rep.conjugacy_ok = lhs == psi(*rep.dynamic_return);
        } else {
            // orbit leaves through 1: psi extends with value 0 there
            rep.conjugacy_ok = lhs.is_zero();
            rep.note = "no first return; orbit exits through 1 (psi-image 0)";
            if (rep.symbolic_return && *rep.symbolic_return == one) rep.symbolic_matches = true;
        }
        return rep;
    }
    throw std::domain_error("return_map_check: only even/odd families have stated return maps");
}

}  // namespace qmark
