#pragma once

#include "cubic.hpp"
#include "expansions.hpp"
#include "interval.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qmark {

/// The interval maps of the ECF/OCF/RCF systems and their linearizations.
enum class MapId {
    F,          // classical Farey map
    G,          // classical Gauss map
    Tent,       // 2 dist(x, Z): the linearization of F under ?(x)
    F_E,        // even Farey map
    T_E,        // even Gauss map
    T_tilde_E,  // extended even Gauss map on [-1,1)
    F_O,        // odd Farey map
    T_O,        // odd Gauss map
    T_tilde_O,  // extended odd Gauss map on [-1,1)
    Fbar_E,     // triadic linearization of F_E
    Tbar_E,     // triadic linearization of T_E
    Fbar_O,     // lambda-linearization of F_O (exact in Q(lambda))
    Tbar_O      // lambda-linearization of T_O
};

inline const char* map_name(MapId id) {
    switch (id) {
        case MapId::F: return "F";
        case MapId::G: return "G";
        case MapId::Tent: return "tent";
        case MapId::F_E: return "F_E";
        case MapId::T_E: return "T_E";
        case MapId::T_tilde_E: return "T_tilde_E";
        case MapId::F_O: return "F_O";
        case MapId::T_O: return "T_O";
        case MapId::T_tilde_O: return "T_tilde_O";
        case MapId::Fbar_E: return "Fbar_E";
        case MapId::Tbar_E: return "Tbar_E";
        case MapId::Fbar_O: return "Fbar_O";
        case MapId::Tbar_O: return "Tbar_O";
    }
    return "?";
}

inline std::optional<MapId> map_from_name(std::string_view s) {
    for (MapId id : {MapId::F, MapId::G, MapId::Tent, MapId::F_E, MapId::T_E, MapId::T_tilde_E,
                     MapId::F_O, MapId::T_O, MapId::T_tilde_O, MapId::Fbar_E, MapId::Tbar_E,
                     MapId::Fbar_O, MapId::Tbar_O})
        if (s == map_name(id)) return id;
    return std::nullopt;
}

namespace detail {

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::domain_error(msg);
}

}  // namespace detail

/// Exact image of a rational point. Domain violations are rejected; at shared
/// branch endpoints all maps here agree from both sides except F_E/F_O at the
/// left breakpoint of their middle branch, which follows the closed middle
/// branch (matching the expansion conventions).
inline Rational map_apply(MapId id, const Rational& x) {
    const Rational zero(0), one(1), half(1, 2), third(1, 3);
    switch (id) {
        case MapId::F:
            detail::require(x >= zero && x <= one, "F: x outside [0,1]");
            return x <= half ? x / (one - x) : (one - x) / x;
        case MapId::G: {
            detail::require(x >= zero && x <= one, "G: x outside [0,1]");
            if (x.is_zero()) return zero;
            Rational u = x.inverse();
            return u - Rational(u.floor());
        }
        case MapId::Tent: {
            detail::require(x >= zero && x <= one, "tent: x outside [0,1]");
            Rational d1 = x, d2 = one - x;
            return Rational(2) * (d1 < d2 ? d1 : d2);
        }
        case MapId::F_E:
            detail::require(x >= zero && x <= one, "F_E: x outside [0,1]");
            if (x < third) return x / (one - Rational(2) * x);
            if (x <= half) return x.inverse() - Rational(2);
            return Rational(2) - x.inverse();
        case MapId::T_E: {
            detail::require(x >= zero && x <= one, "T_E: x outside [0,1]");
            if (x.is_zero()) return zero;
            Rational u = x.inverse();
            Integer k = ((u + one) / Rational(2)).floor();  // nearest integer-ish split
            return (u - Rational(2) * Rational(k)).abs();
        }
        case MapId::T_tilde_E: {
            detail::require(x >= Rational(-1) && x < one, "T_tilde_E: x outside [-1,1)");
            if (x.is_zero()) return zero;
            Rational u = x.abs().inverse();
            Integer k = ((u + one) / Rational(2)).floor();
            return u - Rational(2) * Rational(k);
        }
        case MapId::F_O:
            detail::require(x >= zero && x <= one, "F_O: x outside [0,1]");
            if (x < third) return x / (one - Rational(2) * x);
            if (x <= half) return Rational(3) - x.inverse();
            return x.inverse() - one;
        case MapId::T_O: {
            detail::require(x >= zero && x <= one, "T_O: x outside [0,1]");
            if (x.is_zero()) return zero;
            Rational u = x.inverse();
            Integer k = (u / Rational(2)).floor();
            return (u - Rational(2) * Rational(k) - one).abs();
        }
        case MapId::T_tilde_O: {
            detail::require(x >= Rational(-1) && x < one, "T_tilde_O: x outside [-1,1)");
            if (x.is_zero()) return zero;
            Rational u = x.abs().inverse();
            Integer k = (u / Rational(2)).floor();
            return u - Rational(2) * Rational(k) - one;
        }
        case MapId::Fbar_E:
            detail::require(x >= zero && x <= one, "Fbar_E: y outside [0,1]");
            if (x <= third) return Rational(3) * x;
            if (x <= Rational(2, 3)) return Rational(2) - Rational(3) * x;
            return Rational(3) * x - Rational(2);
        case MapId::Tbar_E: {
            detail::require(x >= zero && x <= one, "Tbar_E: y outside [0,1]");
            if (x.is_zero()) return zero;
            Rational z = x;
            while (z < one) z = Rational(3) * z;  // z = 3^k y in [1, 3)
            return z <= Rational(2) ? Rational(2) - z : z - Rational(2);
        }
        case MapId::Fbar_O:
        case MapId::Tbar_O:
            throw std::domain_error("lambda-linearized maps act on Q(lambda); use the Cubic overload");
    }
    throw std::logic_error("unreachable");
}

/// Exact image under the lambda-linearized maps, in Q(lambda).
inline Cubic map_apply(MapId id, const Cubic& y) {
    Cubic zero(0), one(1);
    Cubic L = Cubic::lambda();
    detail::require(y.sign() >= 0 && (y - one).sign() <= 0, "linearized map: y outside [0,1]");
    switch (id) {
        case MapId::Fbar_E:
        case MapId::Tbar_E:
        case MapId::F:
        case MapId::Tent: {
            // rational piecewise-linear maps lifted to Cubic arguments are not needed
            throw std::domain_error("use the Rational overload for this map");
        }
        case MapId::Fbar_O: {
            Cubic l2y = L * L * y;
            if ((l2y - one).sign() < 0) return l2y;                       // y < 1/L^2
            if ((y - (one - lambda_pow(-1))).sign() <= 0) return L * l2y - L;  // middle branch
            return L * (one - y);
        }
        case MapId::Tbar_O: {
            if (y.is_zero()) return zero;
            // Branch intervals in descending order along [0,1]:
            //   desc k:          [(L-1)/L^{2k-1}, 1/L^{2k-2}]   k >= 1
            //   asc k (k >= 2):  [1/L^{2k-2}, (L+1)/L^{2k-1}]
            // where (L+1)/L^{2k-1} = (L-1)/L^{2k-3} glues asc k to desc k-1
            // (the ascending right endpoint follows the conjugacy with T_O).
            Cubic lm1 = L - one;
            if ((y - lm1 * lambda_pow(-1)).sign() >= 0) return L - L * y;  // desc k = 1
            for (long k = 2;; ++k) {
                if ((y - lambda_pow(2 - 2 * k)).sign() >= 0)  // asc k
                    return lambda_pow(2 * k - 1) * y - L;
                if ((y - lm1 * lambda_pow(1 - 2 * k)).sign() >= 0)  // desc k
                    return L - lambda_pow(2 * k - 1) * y;
                if (k > 4096) throw std::domain_error("Tbar_O: branch search failed");
            }
        }
        default:
            throw std::domain_error("use the Rational overload for this map");
    }
}

// ---------------------------------------------------------------------------
// Branch preimages (rational-breakpoint maps).
// ---------------------------------------------------------------------------

struct BranchPreimage {
    std::string branch;
    RationalInterval pre;
};

/// Per-branch preimages of the interval I. For the Gauss-type maps, whose
/// branches are indexed k = 1, 2, ..., only branches with k <= max_k are
/// returned; the Farey-type and linearized maps have finitely many.
/// I must lie inside the map's codomain.
inline std::vector<BranchPreimage> map_branch_preimages(MapId id, const RationalInterval& I,
                                                        long max_k = 8) {
    const Rational a = I.lo(), b = I.hi();
    const Rational one(1), two(2), three(3);
    std::vector<BranchPreimage> out;
    auto push = [&out](std::string name, Rational lo, Rational hi) {
        out.push_back({std::move(name), RationalInterval(std::move(lo), std::move(hi))});
    };
    switch (id) {
        case MapId::F:
            detail::require(a.sign() >= 0 && b <= one, "F: target outside [0,1]");
            push("left", a / (one + a), b / (one + b));
            push("right", (one + b).inverse(), (one + a).inverse());
            return out;
        case MapId::Tent:
            detail::require(a.sign() >= 0 && b <= one, "tent: target outside [0,1]");
            push("left", a / two, b / two);
            push("right", one - b / two, one - a / two);
            return out;
        case MapId::F_E:
            detail::require(a.sign() >= 0 && b <= one, "F_E: target outside [0,1]");
            push("0", a / (one + two * a), b / (one + two * b));
            push("1", (two + b).inverse(), (two + a).inverse());
            push("2", (two - a).inverse(), (two - b).inverse());
            return out;
        case MapId::F_O:
            detail::require(a.sign() >= 0 && b <= one, "F_O: target outside [0,1]");
            push("0", a / (one + two * a), b / (one + two * b));
            push("1", (three - a).inverse(), (three - b).inverse());
            push("2", (one + b).inverse(), (one + a).inverse());
            return out;
        case MapId::Fbar_E:
            detail::require(a.sign() >= 0 && b <= one, "Fbar_E: target outside [0,1]");
            push("0", a / three, b / three);
            push("1", (two - b) / three, (two - a) / three);
            push("2", (two + a) / three, (two + b) / three);
            return out;
        case MapId::T_E:
            detail::require(a.sign() >= 0 && b <= one, "T_E: target outside [0,1]");
            for (long k = 1; k <= max_k; ++k) {
                Rational tk(2 * k);
                push("desc" + std::to_string(k), (tk + b).inverse(), (tk + a).inverse());
                push("asc" + std::to_string(k), (tk - a).inverse(), (tk - b).inverse());
            }
            return out;
        case MapId::Tbar_E:
            detail::require(a.sign() >= 0 && b <= one, "Tbar_E: target outside [0,1]");
            for (long k = 1; k <= max_k; ++k) {
                Rational p(ipow(3, static_cast<unsigned long>(k)));
                push("desc" + std::to_string(k), (two - b) / p, (two - a) / p);
                push("asc" + std::to_string(k), (two + a) / p, (two + b) / p);
            }
            return out;
        case MapId::T_tilde_E:
            detail::require(a >= Rational(-1) && b < one, "T_tilde_E: target outside [-1,1)");
            for (long k = 1; k <= max_k; ++k) {
                Rational tk(2 * k);
                push("pos" + std::to_string(k), (tk + b).inverse(), (tk + a).inverse());
                push("neg" + std::to_string(k), -(tk + a).inverse(), -(tk + b).inverse());
            }
            return out;
        case MapId::T_O:
            detail::require(a.sign() >= 0 && b <= one, "T_O: target outside [0,1]");
            for (long k = 1; k <= max_k; ++k) {
                Rational dk(2 * k + 1), ak(2 * k - 1);
                push("desc" + std::to_string(k), (dk - a).inverse(), (dk - b).inverse());
                push("asc" + std::to_string(k), (ak + b).inverse(), (ak + a).inverse());
            }
            return out;
        case MapId::T_tilde_O: {
            detail::require(a >= Rational(-1) && b < one, "T_tilde_O: target outside [-1,1)");
            detail::require(a.sign() * b.sign() >= 0,
                            "T_tilde_O: target must not straddle 0 (split it first)");
            bool positive = b.sign() > 0;
            for (long k = 1; k <= max_k; ++k) {
                Rational c(positive ? 2 * k - 1 : 2 * k + 1);
                push("pos" + std::to_string(k), (c + b).inverse(), (c + a).inverse());
                push("neg" + std::to_string(k), -(c + a).inverse(), -(c + b).inverse());
            }
            return out;
        }
        case MapId::G:
            detail::require(a.sign() >= 0 && b <= one, "G: target outside [0,1]");
            for (long k = 1; k <= max_k; ++k)
                push(std::to_string(k), (Rational(k) + b).inverse(), (Rational(k) + a).inverse());
            return out;
        default:
            throw std::domain_error("map_branch_preimages: unsupported map");
    }
}

inline bool map_has_infinitely_many_branches(MapId id) {
    switch (id) {
        case MapId::G:
        case MapId::T_E:
        case MapId::T_tilde_E:
        case MapId::T_O:
        case MapId::T_tilde_O:
        case MapId::Tbar_E:
        case MapId::Tbar_O: return true;
        default: return false;
    }
}

}  // namespace qmark
