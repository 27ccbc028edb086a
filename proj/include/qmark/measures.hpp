#pragma once

#include "decimal.hpp"
#include "maps.hpp"

#include <future>
#include <random>
#include <thread>

namespace qmark {

/// Invariant measures named in the ECF/OCF systems, each given by closed-form
/// antiderivatives of its density.
enum class MeasureId {
    nu_E,        // dx / (x(1-x)), infinite, F_E-invariant
    mu_E,        // (1/(1+x) + 1/(1-x)) dx, T_E-invariant
    mu_tilde_E,  // dx / (1+x) on [-1,1), T_tilde_E-invariant
    nu_O,        // dx / (x(G+1-x)), infinite, F_O-invariant
    nu_O_lemma,  // (1/x + 1/(G+1-x)) dx = (G+1) * nu_O, same invariance
    mu_O,        // (1/(G-1+x) + 1/(G+1-x)) dx, finite, T_O-invariant
    mu_tilde_O,  // (1/G^2) (dx/(x+G+1) on [-1,0], dx/(x+G-1) on (0,1))
    lebesgue
};

inline const char* measure_name(MeasureId id) {
    switch (id) {
        case MeasureId::nu_E: return "nu_E";
        case MeasureId::mu_E: return "mu_E";
        case MeasureId::mu_tilde_E: return "mu_tilde_E";
        case MeasureId::nu_O: return "nu_O";
        case MeasureId::nu_O_lemma: return "nu_O_lemma";
        case MeasureId::mu_O: return "mu_O";
        case MeasureId::mu_tilde_O: return "mu_tilde_O";
        case MeasureId::lebesgue: return "lebesgue";
    }
    return "?";
}

inline std::optional<MeasureId> measure_from_name(std::string_view s) {
    for (MeasureId id : {MeasureId::nu_E, MeasureId::mu_E, MeasureId::mu_tilde_E, MeasureId::nu_O,
                         MeasureId::nu_O_lemma, MeasureId::mu_O, MeasureId::mu_tilde_O,
                         MeasureId::lebesgue})
        if (s == measure_name(id)) return id;
    return std::nullopt;
}

namespace detail {

inline Sqrt5 gold_plus(long c) { return golden_ratio() + Sqrt5(Rational(c)); }

/// log(q + x) as a certified interval, q in Q(sqrt5).
inline RationalInterval log_shifted(const Sqrt5& q, const Rational& x, unsigned long bits) {
    return log_interval(to_interval(q + Sqrt5(x), bits), bits);
}

inline RationalInterval inv_gsq(unsigned long bits) {
    // 1/G^2 = (3 - sqrt5)/2
    return to_interval(Sqrt5(Rational(3, 2), Rational(-1, 2)), bits);
}

}  // namespace detail

/// Throws unless [a,b] is inside the measure's support, away from density
/// singularities.
inline void require_admissible(MeasureId id, const Rational& a, const Rational& b) {
    detail::require(a <= b, "measure: empty interval orientation");
    switch (id) {
        case MeasureId::nu_E:
            detail::require(a.sign() > 0 && b < Rational(1), "nu_E: interval must avoid 0 and 1");
            return;
        case MeasureId::mu_E:
            detail::require(a.sign() >= 0 && b < Rational(1), "mu_E: interval must avoid 1");
            return;
        case MeasureId::mu_tilde_E:
            detail::require(a > Rational(-1) && b <= Rational(1),
                            "mu_tilde_E: interval must avoid -1");
            return;
        case MeasureId::nu_O:
        case MeasureId::nu_O_lemma:
            detail::require(a.sign() > 0 && b <= Rational(1), "nu_O: interval must avoid 0");
            return;
        case MeasureId::mu_O:
            detail::require(a.sign() >= 0 && b <= Rational(1), "mu_O: interval outside [0,1]");
            return;
        case MeasureId::mu_tilde_O:
            detail::require(a >= Rational(-1) && b <= Rational(1),
                            "mu_tilde_O: interval outside [-1,1)");
            return;
        case MeasureId::lebesgue: return;
    }
}

/// Certified enclosure of the measure of [a,b] via antiderivative differences.
inline RationalInterval measure_mass_interval(MeasureId id, const Rational& a, const Rational& b,
                                              unsigned long bits) {
    require_admissible(id, a, b);
    if (a == b) return RationalInterval(Rational(0));
    const Rational one(1);
    switch (id) {
        case MeasureId::nu_E:
            // log(x/(1-x))
            return log_point(b / (one - b), bits) - log_point(a / (one - a), bits);
        case MeasureId::mu_E:
            // log((1+x)/(1-x))
            return log_point((one + b) / (one - b), bits) - log_point((one + a) / (one - a), bits);
        case MeasureId::mu_tilde_E:
            return log_point(one + b, bits) - log_point(one + a, bits);
        case MeasureId::nu_O: {
            // (1/(G+1)) (log x - log(G+1-x)); 1/(G+1) = (3-sqrt5)/2 = 1/G^2
            RationalInterval raw = measure_mass_interval(MeasureId::nu_O_lemma, a, b, bits);
            return raw * detail::inv_gsq(bits);
        }
        case MeasureId::nu_O_lemma: {
            RationalInterval la = detail::log_shifted(detail::gold_plus(1), -a, bits);
            RationalInterval lb = detail::log_shifted(detail::gold_plus(1), -b, bits);
            return (log_point(b, bits) - log_point(a, bits)) + (la - lb);
        }
        case MeasureId::mu_O: {
            RationalInterval t1 = detail::log_shifted(detail::gold_plus(-1), b, bits) -
                                  detail::log_shifted(detail::gold_plus(-1), a, bits);
            RationalInterval t2 = detail::log_shifted(detail::gold_plus(1), -a, bits) -
                                  detail::log_shifted(detail::gold_plus(1), -b, bits);
            return t1 + t2;
        }
        case MeasureId::mu_tilde_O: {
            if (a.sign() < 0 && b.sign() > 0)
                return measure_mass_interval(id, a, Rational(0), bits) +
                       measure_mass_interval(id, Rational(0), b, bits);
            RationalInterval piece =
                b.sign() <= 0 ? detail::log_shifted(detail::gold_plus(1), b, bits) -
                                    detail::log_shifted(detail::gold_plus(1), a, bits)
                              : detail::log_shifted(detail::gold_plus(-1), b, bits) -
                                    detail::log_shifted(detail::gold_plus(-1), a, bits);
            return piece * detail::inv_gsq(bits);
        }
        case MeasureId::lebesgue: return RationalInterval(b - a);
    }
    throw std::logic_error("unreachable");
}

/// Certified decimal mass of an interval: |true - printed| < 10^-digits.
inline DecimalApprox measure_mass(MeasureId id, const Rational& a, const Rational& b,
                                  unsigned long digits) {
    for (unsigned long bits = 8 + 4 * digits;; bits *= 2) {
        RationalInterval v = measure_mass_interval(id, a, b, bits);
        if (v.width() * Rational(Integer(ipow(10, digits) * 4)) < Rational(1))
            return detail::decimal_from_interval(v, digits);
    }
}

// ---------------------------------------------------------------------------
// Invariance: sum of branch-preimage masses against the interval's own mass.
// Gauss-type maps have countably many branches; the first `branch_count` are
// summed individually and the remainder enters through the exact telescoped
// tail of the branch series.
// ---------------------------------------------------------------------------

namespace detail {

inline RationalInterval log_ratio(const Rational& num, const Rational& den, unsigned long bits) {
    return log_point(num, bits) - log_point(den, bits);
}

inline RationalInterval log_ratio_shifted(const Sqrt5& base, const Rational& num_shift,
                                          const Rational& den_shift, unsigned long bits) {
    return log_shifted(base, num_shift, bits) - log_shifted(base, den_shift, bits);
}

/// Exact total mass of the omitted branches k > K, derived by telescoping the
/// partial-fraction expansion of the pulled-back density.
inline RationalInterval invariance_tail(MapId map, MeasureId measure, const Rational& a,
                                        const Rational& b, long K, unsigned long bits) {
    Rational twoK1(2 * K + 1), twoKm1(2 * K - 1);
    switch (map) {
        case MapId::T_E:
            detail::require(measure == MeasureId::mu_E, "invariance: T_E pairs with mu_E");
            return log_ratio(twoK1 + b, twoK1 + a, bits) + log_ratio(twoK1 - a, twoK1 - b, bits);
        case MapId::T_tilde_E:
            detail::require(measure == MeasureId::mu_tilde_E,
                            "invariance: T_tilde_E pairs with mu_tilde_E");
            return log_ratio(twoK1 + b, twoK1 + a, bits);
        case MapId::T_O:
            detail::require(measure == MeasureId::mu_O, "invariance: T_O pairs with mu_O");
            return log_ratio_shifted(gold_plus(0) + Sqrt5(twoK1), -a, -b, bits) +
                   log_ratio_shifted(gold_plus(0) + Sqrt5(twoKm1), b, a, bits);
        case MapId::T_tilde_O: {
            detail::require(measure == MeasureId::mu_tilde_O,
                            "invariance: T_tilde_O pairs with mu_tilde_O");
            // sign-homogeneous [a,b] (callers split at 0)
            Sqrt5 base = gold_plus(0) + Sqrt5(b.sign() > 0 ? twoKm1 : twoK1);
            return log_ratio_shifted(base, b, a, bits) * inv_gsq(bits);
        }
        case MapId::Tbar_E: {
            detail::require(measure == MeasureId::lebesgue,
                            "invariance: Tbar_E pairs with lebesgue");
            // branch k preimages have total length 2(b-a)/3^k; tail sums exactly
            return RationalInterval((b - a) * Rational(Integer(1), ipow(3, static_cast<unsigned long>(K))));
        }
        default: return RationalInterval(Rational(0));
    }
}

inline void require_pairable(MapId map, MeasureId measure) {
    auto ok = [&] {
        switch (map) {
            case MapId::F_E: return measure == MeasureId::nu_E;
            case MapId::T_E: return measure == MeasureId::mu_E;
            case MapId::T_tilde_E: return measure == MeasureId::mu_tilde_E;
            case MapId::F_O:
                return measure == MeasureId::nu_O || measure == MeasureId::nu_O_lemma;
            case MapId::T_O: return measure == MeasureId::mu_O;
            case MapId::T_tilde_O: return measure == MeasureId::mu_tilde_O;
            case MapId::Tent:
            case MapId::Fbar_E:
            case MapId::Tbar_E: return measure == MeasureId::lebesgue;
            default: return false;
        }
    }();
    detail::require(ok, "invariance: no stated invariant-measure pairing for this map");
}

}  // namespace detail

/// Certified |sum of branch-preimage masses - mass|. The bound is an upper
/// bound on the true discrepancy (which is 0 when the measure is invariant).
inline Rational invariance_discrepancy(MapId map, MeasureId measure, const Rational& a,
                                       const Rational& b, unsigned long digits,
                                       long branch_count = 16) {
    detail::require_pairable(map, measure);
    unsigned long bits = 4 * digits + 64;
    // T_tilde_O mixes two density pieces across 0: handle by splitting.
    if (map == MapId::T_tilde_O && a.sign() < 0 && b.sign() > 0) {
        Rational d1 = invariance_discrepancy(map, measure, a, Rational(0), digits, branch_count);
        Rational d2 = invariance_discrepancy(map, measure, Rational(0), b, digits, branch_count);
        return d1 + d2;
    }
    RationalInterval rhs = measure_mass_interval(measure, a, b, bits);
    RationalInterval lhs(Rational(0));
    // F (classical Farey) has no stated pairing in this artifact beyond Lebesgue on tent.
    long max_k = map_has_infinitely_many_branches(map) ? branch_count : 4;
    for (const auto& bp : map_branch_preimages(map, RationalInterval(a, b), max_k))
        lhs = lhs + measure_mass_interval(measure, bp.pre.lo(), bp.pre.hi(), bits);
    if (map_has_infinitely_many_branches(map))
        lhs = lhs + detail::invariance_tail(map, measure, a, b, branch_count, bits);
    RationalInterval diff = lhs - rhs;
    Rational bound = diff.lo().abs();
    if (diff.hi().abs() > bound) bound = diff.hi().abs();
    return bound;
}

struct InvarianceReport {
    MapId map;
    MeasureId measure;
    unsigned long digits = 10;
    std::size_t trials = 0;
    Rational max_discrepancy;
    bool tail_consistent = false;  // branch count K vs 2K cross-check
    bool pass = false;
};

/// Uniform-ish random subinterval of the measure's admissible range, with
/// endpoints kept 1/64 away from density singularities.
inline std::pair<Rational, Rational> random_admissible_interval(MeasureId measure,
                                                                std::mt19937_64& rng) {
    Rational lo(1, 64), hi(63, 64);
    switch (measure) {
        case MeasureId::mu_tilde_E:
        case MeasureId::mu_tilde_O: lo = Rational(-63, 64); break;
        default: break;
    }
    std::uniform_int_distribution<long> num(0, 1 << 20);
    auto draw = [&] {
        Rational t(num(rng), 1 << 20);
        return lo + t * (hi - lo);
    };
    Rational a = draw(), b = draw();
    while (a == b) b = draw();
    if (b < a) std::swap(a, b);
    return {a, b};
}

/// Runs every interval through the branch-preimage mass identity; passes when
/// each certified discrepancy bound is below 10^-digits. Fans out across a
/// thread pool.
inline InvarianceReport invariance_check(MapId map, MeasureId measure,
                                         const std::vector<std::pair<Rational, Rational>>& intervals,
                                         unsigned long digits, long branch_count = 16) {
    detail::require_pairable(map, measure);
    InvarianceReport rep;
    rep.map = map;
    rep.measure = measure;
    rep.digits = digits;
    std::size_t trials = intervals.size();
    rep.trials = trials;

    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<Rational>> futs;
    std::size_t chunk = (trials + workers - 1) / std::max<std::size_t>(1, workers);
    for (std::size_t start = 0; start < trials; start += chunk) {
        std::size_t end = std::min(trials, start + chunk);
        futs.push_back(std::async(std::launch::async, [&, start, end] {
            Rational worst(0);
            for (std::size_t i = start; i < end; ++i) {
                Rational d = invariance_discrepancy(map, measure, intervals[i].first,
                                                    intervals[i].second, digits, branch_count);
                if (d > worst) worst = d;
            }
            return worst;
        }));
    }
    Rational worst(0);
    for (auto& f : futs) {
        Rational d = f.get();
        if (d > worst) worst = d;
    }
    rep.max_discrepancy = worst;

    // Tail self-check: doubling the explicit branch count must not move the
    // result (the tail formula absorbs exactly the omitted branches).
    if (!intervals.empty()) {
        const auto& [a, b] = intervals.front();
        Rational d1 = invariance_discrepancy(map, measure, a, b, digits, branch_count);
        Rational d2 = invariance_discrepancy(map, measure, a, b, digits, 2 * branch_count);
        Rational tol(Integer(1), ipow(10, digits));
        rep.tail_consistent = d1 < tol && d2 < tol;
    } else {
        rep.tail_consistent = true;
    }

    rep.pass = worst < Rational(Integer(1), ipow(10, digits)) && rep.tail_consistent;
    return rep;
}

/// Convenience driver: `trials` seeded random admissible intervals.
inline InvarianceReport invariance_check_random(MapId map, MeasureId measure, std::size_t trials,
                                                unsigned long digits,
                                                std::uint64_t seed = 20240915,
                                                long branch_count = 16) {
    std::vector<std::pair<Rational, Rational>> intervals;
    intervals.reserve(trials);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < trials; ++i)
        intervals.push_back(random_admissible_interval(measure, rng));
    return invariance_check(map, measure, intervals, digits, branch_count);
}

}  // namespace qmark
