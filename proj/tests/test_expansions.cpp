#include <doctest.h>

#include <qmark/expansions.hpp>

#include <numeric>

using namespace qmark;

namespace {

EcfExpansion ecf(std::vector<SignedTerm> t) { return EcfExpansion(std::move(t)); }
OcfExpansion ocf(std::vector<SignedTerm> t) { return OcfExpansion(std::move(t)); }

}  // namespace

TEST_CASE("ecf expansion worked examples") {
    CHECK(ecf_expand(Rational(3, 8)) == ecf({{1, 2}, {1, 2}, {-1, 2}}));
    CHECK(ecf_expand(Rational(5, 13)) == ecf({{1, 2}, {1, 2}, {-1, 2}, {1, 1}}));
    CHECK(ecf_expand(Rational(1, 6)) == ecf({{1, 6}}));
    CHECK(ecf_expand(Rational(1, 5)) == ecf({{1, 4}, {1, 1}}));
    // 1/2k and 1/(2k+1) families
    for (long k = 1; k <= 10; ++k) {
        CHECK(ecf_expand(Rational(1, 2 * k)) == ecf({{1, 2 * k}}));
        CHECK(ecf_expand(Rational(1, 2 * k + 1)) == ecf({{1, 2 * k}, {1, 1}}));
    }
    CHECK(ecf_expand(Rational(0)).empty());
    CHECK(ecf_expand(Rational(1)) == ecf({{1, 1}}));
    CHECK(ecf_expand(Rational(-1)) == ecf({{-1, 1}}));
    CHECK(ecf_expand(Rational(-1, 2)) == ecf({{-1, 2}}));
    CHECK_THROWS_AS(ecf_expand(Rational(3, 2)), std::domain_error);
}

TEST_CASE("ocf expansion worked examples") {
    CHECK(ocf_expand(Rational(4, 7)) == ocf({{1, 1}, {1, 1}, {1, 3}}));
    CHECK(ocf_expand(Rational(7, 12)) == ocf({{1, 1}, {1, 1}, {1, 3}, {-1, 1}, {1, 1}}));
    for (long k = 1; k <= 10; ++k) {
        CHECK(ocf_expand(Rational(1, 2 * k - 1)) == ocf({{1, 2 * k - 1}}));
        CHECK(ocf_expand(Rational(1, 2 * k)) == ocf({{1, 2 * k - 1}, {1, 1}}));
    }
    CHECK(ocf_expand(Rational(0)).empty());
    CHECK_THROWS_AS(ocf_expand(Rational(-1, 2)), std::domain_error);
}

TEST_CASE("rcf expansion") {
    CHECK(rcf_expand(Rational(2, 5)) == RcfExpansion({2, 2}));
    CHECK(rcf_expand(Rational(1, 3)) == RcfExpansion({3}));
    CHECK(rcf_expand(Rational(5, 13)) == RcfExpansion({2, 1, 1, 2}));
    CHECK(rcf_expand(Rational(1)) == RcfExpansion({1}));
    CHECK(rcf_expand(Rational(0)).empty());
}

TEST_CASE("cf_value evaluates expansions exactly") {
    CHECK(cf_value(ecf({{1, 2}, {1, 2}, {-1, 2}})) == Rational(3, 8));
    CHECK(cf_value(EcfExpansion{}) == Rational(0));
    CHECK(cf_value(ocf({{1, 1}, {1, 1}, {1, 3}})) == Rational(4, 7));
    CHECK(cf_value(RcfExpansion({2, 1, 1, 2})) == Rational(5, 13));
}

TEST_CASE("invalid expansions are rejected with named rules") {
    CHECK_THROWS_WITH_AS(ecf({{1, 3}, {1, 2}}), doctest::Contains("non-final digit must be even"),
                         invalid_expansion);
    CHECK_THROWS_WITH_AS(ecf({{1, 2}, {1, 3}}), doctest::Contains("final digit must be even or 1"),
                         invalid_expansion);
    CHECK_THROWS_WITH_AS(ecf({{1, 2}, {-1, 1}}), doctest::Contains("final digit 1 requires sign +1"),
                         invalid_expansion);
    CHECK_THROWS_WITH_AS(ocf({{1, 2}}), doctest::Contains("odd"), invalid_expansion);
    CHECK_THROWS_WITH_AS(ocf({{-1, 3}}), doctest::Contains("leading sign"), invalid_expansion);
    CHECK_THROWS_WITH_AS(ocf({{1, 1}, {-1, 1, }}), doctest::Contains("a_i + e_{i+1} > 0"),
                         invalid_expansion);
    CHECK_THROWS_WITH_AS(RcfExpansion({2, 1}), doctest::Contains("final digit must be at least 2"),
                         invalid_expansion);
}

TEST_CASE("round trips: value of expansion and expansion of value") {
    for (long q = 1; q <= 120; ++q) {
        for (long p = 0; p <= q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            Rational x(p, q);
            CHECK(cf_value(ecf_expand(x)) == x);
            CHECK(cf_value(ocf_expand(x)) == x);
            CHECK(cf_value(rcf_expand(x)) == x);
            Rational neg = -x;
            CHECK(cf_value(ecf_expand(neg)) == neg);
        }
    }
}

TEST_CASE("ecf parity law: expansion ends in 1 iff p + q is even") {
    for (long q = 2; q <= 150; ++q) {
        for (long p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            bool ends_one = ecf_expand(Rational(p, q)).ends_in_one();
            CHECK(ends_one == ((p + q) % 2 == 0));
        }
    }
}

TEST_CASE("convergents of the paper expansions") {
    auto cl = convergents(ecf_expand(Rational(5, 13)));
    REQUIRE(cl.entries.size() == 4);
    CHECK(cl.entries[0].value() == Rational(1, 2));
    CHECK(cl.entries[1].value() == Rational(2, 5));
    CHECK(cl.entries[2].value() == Rational(3, 8));
    CHECK(cl.entries[3].value() == Rational(5, 13));

    auto co = convergents(ocf_expand(Rational(4, 7)));
    REQUIRE(co.entries.size() == 3);
    CHECK(co.entries[0].value() == Rational(1, 1));
    CHECK(co.entries[1].value() == Rational(1, 2));
    CHECK(co.entries[2].value() == Rational(4, 7));

    auto cr = rcf_convergents({1, 1, 1, 1});
    REQUIRE(cr.entries.size() == 4);
    CHECK(cr.entries[0].value() == Rational(1, 1));
    CHECK(cr.entries[1].value() == Rational(1, 2));
    CHECK(cr.entries[2].value() == Rational(2, 3));
    CHECK(cr.entries[3].value() == Rational(3, 5));
}

TEST_CASE("even continuant bound holds exactly for moderate denominators") {
    for (long q = 1; q <= 200; ++q)
        for (long p = 0; p <= q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            CHECK_NOTHROW(convergents(ecf_expand(Rational(p, q))));
        }
}

TEST_CASE("periodic ecf prefixes") {
    auto pre = periodic_ecf({{1, 2}}, 4);
    CHECK(pre.terms().size() == 4);
    CHECK(pre.is_prefix());
    auto cv = detail::convergents_from_terms(pre.terms());
    // denominators follow q_k = 2 q_{k-1} + q_{k-2} from seeds (q_0, q_-1) = (1, 0)
    CHECK(cv.entries[0].q == 2);
    CHECK(cv.entries[1].q == 5);
    CHECK(cv.entries[2].q == 12);
    CHECK(cv.entries[3].q == 29);
    // the bound q_n < theta^n is approached from below for the all-2 pattern
    for (std::size_t k = 0; k < 4; ++k)
        CHECK(even_continuant_bound_holds(cv.entries[k].q, 2 * (static_cast<long>(k) + 1)));

    CHECK(cf_value(periodic_ecf({{1, 2}}, 1)) == Rational(1, 2));
    auto two = periodic_ecf({{1, 4}, {-1, 2}}, 2);
    CHECK(two.terms().size() == 4);
    CHECK(cf_value(two) == Rational(1) / (Rational(4) - Rational(1) / (Rational(2) + Rational(1) / (Rational(4) - Rational(1, 2)))));
    CHECK_THROWS_AS(periodic_ecf({{1, 3}}, 2), invalid_expansion);
}

TEST_CASE("ecf tail equivalence") {
    auto t = ecf_tail_equivalence(ecf({{1, 2}, {1, 1}}), 2);
    CHECK(t == EcfExpansion({{1, 2}, {1, 2}, {-1, 2}, {-1, 2}}, EcfExpansion::Kind::prefix));
    auto t0 = ecf_tail_equivalence(ecf({{1, 1}}), 0);
    CHECK(t0 == EcfExpansion({{1, 2}}, EcfExpansion::Kind::prefix));
    auto t3 = ecf_tail_equivalence(ecf({{1, 4}, {1, 1}}), 3);
    CHECK(t3 == EcfExpansion({{1, 4}, {1, 2}, {-1, 2}, {-1, 2}, {-1, 2}},
                             EcfExpansion::Kind::prefix));
    // values converge to the original: 1/5 here
    Rational target(1, 5);
    Rational prev = (cf_value(ecf_tail_equivalence(ecf({{1, 4}, {1, 1}}), 0)) - target).abs();
    for (unsigned d = 1; d <= 6; ++d) {
        Rational cur = (cf_value(ecf_tail_equivalence(ecf({{1, 4}, {1, 1}}), d)) - target).abs();
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK_THROWS_AS(ecf_tail_equivalence(ecf({{1, 2}}), 1), std::invalid_argument);
}

TEST_CASE("ocf digit sums obey the Fibonacci continuant bound") {
    // q <= G^{S+1} exactly in Z[sqrt5]: compare 4 q^2 against (1+sqrt5)^... via Quad
    for (long q = 1; q <= 150; ++q)
        for (long p = 0; p <= q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            auto e = ocf_expand(Rational(p, q));
            auto cv = convergents(e);
            long s = 0;
            for (std::size_t k = 0; k < cv.entries.size(); ++k) {
                s += e.terms()[k].digit;
                Sqrt5 bound = golden_ratio().pow(s + 1);
                CHECK((bound - Sqrt5(Rational(cv.entries[k].q))).sign() >= 0);
            }
        }
}
