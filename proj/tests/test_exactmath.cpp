#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "annulus/exact_linear.hpp"
#include "annulus/io.hpp"
#include "annulus/poly.hpp"
#include "annulus/sturm.hpp"

using namespace annulus;

namespace {

Rational lam_half(1, 2);
Rational s_sq_half = lam_half * (1 - lam_half); // 1/4, a rational square

Rational s_sq_third = Rational(1, 3) * Rational(2, 3); // 2/9, irrational s

SurdScalar rs(long p, long q = 1) { return SurdScalar::from_rational(rat(p, q)); }

SurdScalar random_scalar(std::mt19937_64& rng, const Rational& s_sq) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
    return SurdScalar::make(rat(num(rng), den(rng)), rat(num(rng), den(rng)), s_sq);
}

} // namespace

TEST_CASE("surd arithmetic basics") {
    SurdScalar one = rs(1);
    SurdScalar s = SurdScalar::from_surd(rat(1), s_sq_third);

    CHECK(one * s == s);
    CHECK((s * s).rat_part() == s_sq_third);
    CHECK((s * s).surd_part() == 0);

    // lambda = 1/2: s^2 = 1/4
    SurdScalar s_half = SurdScalar::from_surd(rat(1), s_sq_half);
    CHECK((s_half * s_half).rat_part() == Rational(1, 4));

    SurdScalar pi_s = SurdScalar::from_surd(rat(1), s_sq_half, 1);
    SurdScalar sum = pi_s + pi_s;
    CHECK(sum.surd_part() == 2);
    CHECK(sum.pi_power() == 1);

    CHECK_THROWS_AS(pi_s * pi_s, GradeError);
    CHECK_THROWS_AS(one / SurdScalar(), DivideByZero);
}

TEST_CASE("surd equality substitutes rational square roots") {
    // s = 1/2 exactly at lambda = 1/2, so 1/2 + 0*s == 0 + 1*s
    SurdScalar a = rs(1, 2);
    SurdScalar b = SurdScalar::from_surd(rat(1), s_sq_half);
    CHECK(a == b);
    CHECK((a - b).is_zero());

    // and at irrational s they differ
    SurdScalar c = SurdScalar::from_surd(rat(1), s_sq_third);
    CHECK(a != c);
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const Rational& ctx = trial % 2 ? s_sq_third : s_sq_half;
        SurdScalar x = random_scalar(rng, ctx);
        SurdScalar y = random_scalar(rng, ctx);
        SurdScalar z = random_scalar(rng, ctx);
        CHECK((x + y) + z == x + (y + z));
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        if (!y.is_zero()) CHECK((x / y) * y == x);
    }
}

TEST_CASE("poly arithmetic and calculus") {
    HPoly h = HPoly::monomial(rs(1), 1);
    HPoly h2 = HPoly::monomial(rs(1), 2);
    CHECK((h + h2).degree() == 2);

    HPoly p = HPoly::monomial(rs(3), 2); // 3h^2
    CHECK(p.antiderivative() == HPoly::monomial(rs(1), 3));
    CHECK(HPoly().antiderivative().is_zero());
    CHECK(HPoly::constant(rs(5)).antiderivative() == HPoly::monomial(rs(5), 1));

    CHECK(HPoly::monomial(rs(1), 3).derivative() == HPoly::monomial(rs(3), 2));
    CHECK(HPoly::constant(rs(4)).derivative().is_zero());
    CHECK(h.derivative() == HPoly::constant(rs(1)));

    CHECK(HPoly::constant(rs(1)).shifted(1) == h);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<SurdScalar> c;
        for (int k = 0; k < 6; ++k) c.push_back(random_scalar(rng, s_sq_third));
        HPoly q(c);
        CHECK(q.antiderivative().derivative() == q);
    }
}

TEST_CASE("solve_exact identity and diagonal") {
    ExactMatrix eye(3, 3);
    for (int i = 0; i < 3; ++i) eye.at(i, i) = rs(1);
    std::vector<SurdScalar> r = {rs(2), rs(-1), rs(5, 3)};
    auto x = solve_exact(eye, r);
    CHECK(x == r);

    ExactMatrix d(2, 2);
    d.at(0, 0) = rs(2);
    d.at(1, 1) = SurdScalar::from_surd(rat(1), s_sq_third);
    auto y = solve_exact(d, {rs(2), SurdScalar::from_surd(rat(1), s_sq_third)});
    CHECK(y[0] == rs(1));
    CHECK(y[1] == rs(1));
}

TEST_CASE("solve_exact round trip and singular detection") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + static_cast<int>(rng() % 3);
        ExactMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = random_scalar(rng, s_sq_third);
        std::vector<SurdScalar> x_true;
        for (int i = 0; i < n; ++i) x_true.push_back(random_scalar(rng, s_sq_third));
        std::vector<SurdScalar> rhs(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rhs[i] += m.at(i, j) * x_true[j];
        if (determinant_exact(m).is_zero()) continue;
        CHECK(solve_exact(m, rhs) == x_true);
    }

    ExactMatrix sing(2, 2);
    sing.at(0, 0) = rs(1);
    sing.at(0, 1) = rs(2);
    sing.at(1, 0) = rs(2);
    sing.at(1, 1) = rs(4);
    CHECK(determinant_exact(sing).is_zero());
    CHECK_THROWS_AS(solve_exact(sing, {rs(1), rs(1)}), SingularMatrix);
}

TEST_CASE("count_positive_roots on the worked examples") {
    // pi*s * h (h - 1/2)(h - 1/3): roots 1/3, 1/2
    auto c = [&](long p, long q) {
        return SurdScalar::from_surd(rat(p, q), s_sq_half, 1);
    };
    HPoly p({SurdScalar(), c(1, 6), c(-5, 6), c(1, 1)});
    auto rc = count_positive_roots(p);
    REQUIRE(rc.distinct == 2);
    CHECK(rc.roots[0].contains(Rational(1, 3)));
    CHECK(rc.roots[1].contains(Rational(1, 2)));
    CHECK(rc.roots[0].hi - rc.roots[0].lo <= Rational(1, 1000000));

    // pi*s * h: root at the boundary is excluded
    HPoly ph = HPoly::monomial(c(1, 1), 1);
    CHECK(count_positive_roots(ph).distinct == 0);

    // pi*s*(125 h^4 - 325/2 h^3 + 55 h^2 - 4h): roots 1/10, 2/5, 4/5
    HPoly quartic({SurdScalar(), c(-4, 1), c(55, 1), c(-325, 2), c(125, 1)});
    auto rq = count_positive_roots(quartic);
    REQUIRE(rq.distinct == 3);
    CHECK(rq.roots[0].contains(Rational(1, 10)));
    CHECK(rq.roots[1].contains(Rational(2, 5)));
    CHECK(rq.roots[2].contains(Rational(4, 5)));
}

TEST_CASE("count_positive_roots reports multiplicity") {
    // h(h-1)^2 (h-3): distinct 2, with multiplicity 3 on (0, inf)
    RatPoly p = {Rational(0), Rational(-3), Rational(7), Rational(-5), Rational(1)};
    auto rc = count_positive_roots(p);
    CHECK(rc.distinct == 2);
    CHECK(rc.with_multiplicity == 3);
    bool saw_double = false;
    for (auto& r : rc.roots)
        if (r.multiplicity == 2) {
            saw_double = true;
            CHECK(r.contains(Rational(1)));
        }
    CHECK(saw_double);
}

TEST_CASE("count agrees with naive sign scan on random polynomials") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<long> coeff(-20, 20);
    int tested = 0;
    while (tested < 120) {
        int deg = 2 + static_cast<int>(rng() % 7);
        RatPoly p(deg + 1);
        for (auto& c : p) c = coeff(rng);
        while (!p.empty() && p.back() == 0) p.pop_back();
        if (static_cast<int>(p.size()) - 1 < 2) continue;

        RootCount rc;
        try {
            rc = count_positive_roots(p);
        } catch (const MathError&) {
            continue;
        }
        if (rc.with_multiplicity != rc.distinct) continue; // keep squarefree samples

        // skip samples whose roots the fixed grid cannot resolve
        bool resolvable = true;
        Rational bound(0);
        for (size_t k = 0; k + 1 < p.size(); ++k) {
            Rational m = abs(p[k] / p.back());
            if (m > bound) bound = m;
        }
        bound += 1;
        Rational spacing = bound / 10000;
        for (size_t k = 0; k + 1 < rc.roots.size(); ++k)
            if (rc.roots[k + 1].lo - rc.roots[k].hi < spacing * 2) resolvable = false;
        if (!rc.roots.empty() && rc.roots.front().lo < spacing * 2) resolvable = false;
        if (!resolvable) continue;

        int scans = 0;
        int prev = 0;
        for (int g = 0; g <= 10000; ++g) {
            Rational x = bound * g / 10000;
            int s = sign(rat_poly_eval(p, x));
            if (s == 0) continue;
            if (prev != 0 && s != prev && g > 0) ++scans;
            prev = s;
        }
        CHECK(scans == rc.distinct);
        // every isolating interval shows the sign change directly
        for (auto& r : rc.roots) {
            if (r.is_exact()) {
                CHECK(rat_poly_eval(p, r.lo) == 0);
            } else {
                CHECK(sign(rat_poly_eval(p, r.lo)) * sign(rat_poly_eval(p, r.hi)) == -1);
            }
        }
        ++tested;
    }
}

TEST_CASE("mixed grade polynomials are rejected unless s is rational") {
    SurdScalar mixed = SurdScalar::make(rat(1), rat(1), s_sq_third);
    HPoly p({SurdScalar(), mixed});
    CHECK_THROWS_AS(count_positive_roots(p), MixedGrade);

    // at lambda = 4/5 the surd collapses to 2/5 and mixing is fine
    Rational s_sq = Rational(4, 5) * Rational(1, 5);
    SurdScalar ok = SurdScalar::make(rat(1), rat(1), s_sq); // = 7/5
    HPoly q({-ok * rat(1, 2), ok});                         // root at 1/2
    auto rc = count_positive_roots(q);
    CHECK(rc.distinct == 1);
    CHECK(rc.roots[0].contains(Rational(1, 2)));
}

TEST_CASE("surd serialization round trip") {
    SurdScalar x = SurdScalar::make(rat(-3, 7), rat(5, 2), s_sq_third, 1);
    std::string s = to_string(x);
    CHECK(s == "-3/7 + 5/2*s [pi^1]");
    CHECK(parse_surd(s, s_sq_third) == x);

    HPoly p({x, SurdScalar(), x * rat(2, 9)});
    CHECK(hpoly_from_json(hpoly_to_json(p), s_sq_third) == p);
}
