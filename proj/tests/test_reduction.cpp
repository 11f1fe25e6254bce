#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "annulus/reduction.hpp"
#include "wallis_oracle.hpp"

using namespace annulus;
using annulus_test::wallis_Iij;

namespace {

HPoly scale_rat(const HPoly& p, const Rational& r) {
    return p.scaled(SurdScalar::from_rational(r));
}

// h * p
HPoly times_h(const HPoly& p) { return p.shifted(1); }

} // namespace

TEST_CASE("base integrals match their closed forms") {
    for (Rational lam : {Rational(1, 2), Rational(1, 3), Rational(3, 4)}) {
        ReductionTable t = base_integrals(lam);
        Rational s_sq = lam * (1 - lam);
        Rational om = 1 - lam;

        auto surd1 = [&](const Rational& c, int pow) {
            return HPoly::monomial(SurdScalar::from_surd(c, s_sq, 1), pow);
        };

        CHECK(t.reduce(0, 1) == surd1(-2 / om, 1));
        CHECK(t.reduce(1, 1).is_zero());
        CHECK(t.reduce(0, 2) == surd1(2 * lam / (om * om), 2));
        CHECK(t.reduce(1, 2) == t.reduce(0, 2));
        CHECK(t.reduce(1, 3) == surd1(-6 * lam * lam / (om * om * om), 3));

        // I_{0,3} = -3 pi s L/(1-L)^3 (L h^3 + (1-L) h^2)
        HPoly i03 = surd1(-3 * lam * lam / (om * om * om), 3) + surd1(-3 * lam / (om * om), 2);
        CHECK(t.reduce(0, 3) == i03);

        // I_{2,1} = -(1/(2 lambda)) I_{0,2}
        CHECK(t.reduce(2, 1) == scale_rat(t.reduce(0, 2), Rational(-1) / (2 * lam)));
    }
}

TEST_CASE("lambda=1/2 spot values") {
    ReductionTable t(ExactField(Rational(1, 2)), 4);
    // I_{0,2}(1) = 2 pi
    CHECK(t.reduce(0, 2).eval(1.0) == doctest::Approx(2 * M_PI).epsilon(1e-14));
    // I_{0,4} = pi (5 h^4 + 8 h^3)
    Rational q(1, 4);
    HPoly expect({SurdScalar(), SurdScalar(), SurdScalar(),
                  SurdScalar::from_surd(rat(16), q, 1), SurdScalar::from_surd(rat(10), q, 1)});
    CHECK(t.reduce(0, 4) == expect);
}

TEST_CASE("moment integrals agree with the direct oracle and the table") {
    for (Rational lam : {Rational(1, 2), Rational(2, 7)}) {
        ReductionTable t(ExactField(lam), 9);
        for (int m = 0; m <= 3; ++m) {
            HPoly mom = moment_integral(2 * m, lam);
            CHECK(mom == wallis_Iij(2 * m, 1, lam));
            CHECK(mom == t.reduce(2 * m, 1));
            CHECK(mom.degree() == m + 1);
        }
        CHECK_THROWS_AS(moment_integral(3, lam), MathError);
    }
}

TEST_CASE("every reduced integral matches the independent expansion oracle") {
    for (Rational lam : {Rational(1, 2), Rational(1, 3)}) {
        ReductionTable t(ExactField(lam), 8);
        for (int i = 0; i <= 7; ++i)
            for (int j = 1; i + j <= 7; ++j)
                CHECK(t.reduce(i, j) == wallis_Iij(i, j, lam));
        // a few entries past the i+j budget that the generator level still covers
        CHECK(t.reduce(8, 2) == wallis_Iij(8, 2, lam));
        CHECK(t.reduce(10, 1) == wallis_Iij(10, 1, lam));
    }
}

TEST_CASE("table invariants: zero constant term, exact generator degrees, grade purity") {
    for (Rational lam : {Rational(1, 2), Rational(2, 5), Rational(4, 5)}) {
        ReductionTable t(ExactField(lam), 12);
        CHECK(t.grade_pure());
        for (int k = 1; k <= 12; ++k) {
            if (k >= 2) {
                CHECK(t.gen(0, k).degree() == k);
                CHECK(t.gen(1, k).degree() == k);
                CHECK(!t.gen(1, k).lead().is_zero());
            }
            CHECK(scalar_is_zero(t.gen(0, k).constant_term()));
            CHECK(scalar_is_zero(t.gen(1, k).constant_term()));
        }
        for (int i = 0; i <= 6; ++i)
            for (int j = 0; i + j <= 6; ++j)
                CHECK(scalar_is_zero(t.reduce(i, j).constant_term()));

        // deep entries at the full budget, against the independent oracle
        for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 12}, {1, 11}, {3, 8}, {5, 7}, {12, 1}})
            CHECK(t.reduce(i, j) == wallis_Iij(i, j, lam));
    }
}

TEST_CASE("explicit five-relation block") {
    for (Rational lam : {Rational(1, 2), Rational(1, 3), Rational(2, 7)}) {
        ReductionTable t(ExactField(lam), 5);
        const HPoly& i01 = t.reduce(0, 1);
        const HPoly& i02 = t.reduce(0, 2);
        const HPoly& i03 = t.reduce(0, 3);
        const HPoly& i04 = t.reduce(0, 4);
        const HPoly& i12 = t.reduce(1, 2);
        const HPoly& i13 = t.reduce(1, 3);

        CHECK(t.reduce(2, 1) == scale_rat(i02, -1 / (2 * lam)));

        CHECK(t.reduce(2, 2) == scale_rat(times_h(i01), Rational(1, 7)) +
                                    scale_rat(i02, -(lam + 6) / (7 * lam)) +
                                    scale_rat(i03, Rational(-2) / (3 * lam)));

        CHECK(t.reduce(3, 2) == scale_rat(times_h(i01), Rational(-3, 14)) +
                                    scale_rat(i02, Rational(-3) / (14 * lam)) +
                                    scale_rat(i03, Rational(2) / (3 * lam)) +
                                    scale_rat(i12, (3 * lam + 14) / (14 * lam)) +
                                    scale_rat(i13, Rational(-2) / (3 * lam)));

        CHECK(t.reduce(4, 1) == scale_rat(times_h(i01), -1 / (28 * lam)) +
                                    scale_rat(i02, Rational(3) / (14 * lam * lam)) +
                                    scale_rat(i03, Rational(1) / (3 * lam * lam)) +
                                    scale_rat(i12, (lam + 7) / (28 * lam * lam)));

        HPoly i23 = scale_rat(times_h(i01), (42 * lam - 37) / 210) +
                    scale_rat(times_h(i02), 28 * lam / (210 * lam)) +
                    scale_rat(i02, (42 * lam - 37) / (210 * lam)) +
                    scale_rat(i03, Rational(-28) * (lam - 1) / (45 * lam)) +
                    scale_rat(i04, Rational(-3) / (4 * lam)) +
                    scale_rat(i13, (2 * lam - 7) / (5 * lam)) +
                    scale_rat(times_h(i12), -504 * lam / (210 * lam)) +
                    scale_rat(i12, -(42 * lam * lam + 159 * lam - 196) / (210 * lam));
        CHECK(t.reduce(2, 3) == i23);
    }
}

TEST_CASE("recurrence consistency holds on the explicit polynomials") {
    std::mt19937_64 rng(31);
    for (Rational lam : {Rational(1, 2), Rational(3, 7)}) {
        ReductionTable t(ExactField(lam), 9);
        const SurdScalar L = SurdScalar::from_rational(lam);

        // first-index reduction, i >= 3
        for (int trial = 0; trial < 12; ++trial) {
            int i = 3 + static_cast<int>(rng() % 4);
            int j = 1 + static_cast<int>(rng() % (7 - i > 0 ? 7 - i : 1));
            auto I = [&](int a, int b) { return a >= 0 ? t.reduce(a, b) : HPoly(); };
            Rational pref = Rational(1) / (lam * (i + 2 * j + 1));
            HPoly rhs = scale_rat(times_h(I(i - 4, j)), pref * 2 * (i - 3)) +
                        scale_rat(I(i - 2, j), -pref * (i + j - 1)) +
                        scale_rat(I(i - 1, j), -pref * lam * (2 * i + 3 * j)) +
                        scale_rat(I(i - 2, j + 1), -pref * Rational(j * (i + 2 * j + 1), j + 1)) +
                        scale_rat(I(i - 3, j + 1), -pref * Rational(j * (i + j - 1), j + 1));
            CHECK(t.reduce(i, j) == rhs);
        }

        // the independently printed second recurrence (not used in construction), i >= 2
        for (int trial = 0; trial < 12; ++trial) {
            int i = 2 + static_cast<int>(rng() % 4);
            int j = 1 + static_cast<int>(rng() % 3);
            auto I = [&](int a, int b) { return a >= 0 ? t.reduce(a, b) : HPoly(); };
            Rational c = lam * (j + 1) * (i + j) * (i + 2 * j + 1);
            HPoly sum =
                scale_rat(times_h(I(i - 1, j - 1)), Rational(4) * lam * j * (j + 1) * (i + 2 * j + 1)) +
                scale_rat(times_h(I(i - 3, j)), Rational(-2) * (i - 2) * (j + 1) * (i + 2 * j + 1)) +
                scale_rat(I(i - 2, j + 1), Rational(j * (i + j) * (i + 2 * j + 1))) +
                scale_rat(I(i - 1, j), Rational(j + 1) * (i + j) * (Rational(i + 2 * j + 1) + lam * j - lam)) +
                scale_rat(I(i + 1, j - 1),
                          -lam * j * (j + 1) * (Rational(i + 2 * j + 1) - lam * (2 * i) - lam * (3 * j) - lam)) +
                scale_rat(times_h(I(i - 2, j - 1)), Rational(-2) * lam * j * (i - 1) * (j + 1)) +
                scale_rat(I(i, j - 1), lam * j * (j + 1) * (i + j));
            CHECK(t.reduce(i, j) == scale_rat(sum, Rational(-1) / c));
        }
    }
}

TEST_CASE("structural degree bounds of the generator expressions") {
    ReductionTable t(ExactField(Rational(1, 3)), 9);
    for (int i = 2; i <= 6; ++i)
        for (int j = 1; i + j <= 8; ++j) {
            int total = i + j;
            const auto& expr = t.generator_expression(i, j);
            for (const auto& [key, coeff] : expr.terms) {
                int bound = (total + 1 - key.second + 3) / 4; // ceil((n+1-k)/4)
                CHECK(coeff.degree() <= bound);
            }
        }
}

TEST_CASE("level bookkeeping") {
    ReductionTable t = base_integrals(Rational(1, 2));
    CHECK(t.level() == 3);
    CHECK(t.reduce(5, 0).is_zero());
    CHECK_THROWS_AS(t.reduce(0, 4), LevelExceeded);
    t.extend_level();
    CHECK(t.level() == 4);
    CHECK(t.reduce(0, 4).degree() == 4);
    CHECK_THROWS_AS(t.reduce(2, 4), LevelExceeded);
}

TEST_CASE("float table tracks the exact table at rational lambda") {
    Rational lam(1, 2);
    ReductionTable exact(ExactField(lam), 8);
    FloatReductionTable approx(FloatField(0.5), 8);
    for (int i = 0; i <= 5; ++i)
        for (int j = 1; i + j <= 6; ++j) {
            double at_1 = exact.reduce(i, j).eval(1.0);
            double at_13 = exact.reduce(i, j).eval(1.3);
            CHECK(approx.reduce(i, j).eval(1.0) == doctest::Approx(at_1).epsilon(1e-11));
            CHECK(approx.reduce(i, j).eval(1.3) == doctest::Approx(at_13).epsilon(1e-11));
        }
}
