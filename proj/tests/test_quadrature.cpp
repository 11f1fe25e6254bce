#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "annulus/abelian.hpp"
#include "annulus/quadrature.hpp"

using namespace annulus;

TEST_CASE("adaptive gauss sanity") {
    double v = adaptive_gauss([](double t) { return std::sin(t) * std::sin(t); }, 0.0,
                              2.0 * M_PI, 1e-12);
    CHECK(v == doctest::Approx(M_PI).epsilon(1e-12));

    // rapidly varying integrand forces panel splitting
    double w = adaptive_gauss([](double t) { return std::cos(40.0 * t) * std::cos(40.0 * t); },
                              0.0, 2.0 * M_PI, 1e-11);
    CHECK(w == doctest::Approx(M_PI).epsilon(1e-9));
}

TEST_CASE("oval points lie on the level curve, closed, turning point as printed") {
    for (double lam : {0.25, 0.5, 0.75})
        for (double h : {0.1, 1.0, 5.0}) {
            auto pts = oval_points(lam, h, 257);
            CHECK(pts.front() == pts.back());
            for (auto& [x, y] : pts)
                CHECK(std::fabs(hamiltonian(lam, x, y) - h) <= 1e-12 * std::max(1.0, h));

            // rightmost point: ( sqrt(2h/(1-L)), -L X - 2 L h/(1-L) )
            double X = std::sqrt(2.0 * h / (1.0 - lam));
            CHECK(pts[0].first == doctest::Approx(X).epsilon(1e-13));
            CHECK(pts[0].second ==
                  doctest::Approx(-lam * X - 2.0 * lam * h / (1.0 - lam)).epsilon(1e-12));

            // the two arcs meet the parametrization
            OvalParametrization oval(lam, h);
            CHECK(oval.upper_arc(0.3 * X) ==
                  doctest::Approx(oval.parabola(0.3 * X) +
                                  std::sqrt(oval.radicand(0.3 * X))).epsilon(1e-14));
        }
}

TEST_CASE("loop integral spot values") {
    // exact one-form: I_{i,0} = 0
    for (int i = 0; i <= 4; ++i)
        CHECK(std::fabs(quad_Iij(0.5, 1.0, {i, 0}, 1e-10)) <= 1e-12);
    // odd moment vanishes
    CHECK(std::fabs(quad_Iij(0.5, 1.0, {1, 1}, 1e-10)) <= 1e-10);
    // I_{0,2}(1) = 2 pi at lambda = 1/2
    CHECK(quad_Iij(0.5, 1.0, {0, 2}, 1e-11) == doctest::Approx(2 * M_PI).epsilon(1e-10));
    // orientation: I_{0,1} < 0 everywhere
    for (double lam : {0.2, 0.5, 0.8})
        for (double h : {0.3, 2.0}) CHECK(quad_Iij(lam, h, {0, 1}, 1e-10) < 0.0);
    // below the resolution floor
    auto tiny = quad_Iij_full(0.5, 1e-9, {0, 2}, 1e-10);
    CHECK(tiny.below_resolution);
    CHECK(tiny.value == 0.0);
}

TEST_CASE("symbolic table against quadrature on the verification grid") {
    auto entries = symbolic_vs_quadrature_grid(
        {Rational(1, 4), Rational(1, 2), Rational(3, 4)}, {0.1, 1.0, 5.0}, 4, 1e-11, true);
    double worst = 0.0;
    for (const auto& e : entries) worst = std::max(worst, e.rel_error);
    CHECK(worst <= 1e-8);
}

TEST_CASE("recurrence families hold on pure quadrature values") {
    for (double h : {0.5, 2.0}) {
        auto residuals = recurrence_residuals(0.5, h, 6, 1e-11);
        CHECK(residuals.size() > 50);
        for (const auto& r : residuals) {
            INFO(r.family << " at (" << r.i << "," << r.j << ") h=" << h);
            CHECK(r.residual <= 1e-6);
        }
    }
}

TEST_CASE("derivative kernel matches centered differences") {
    double lam = 0.5, h = 1.0, dh = 1e-5;
    for (int i = 0; i <= 2; ++i)
        for (int j = 1; i + j <= 4; ++j) {
            double direct = quad_Iij_deriv(lam, h, {i, j}, 1e-11);
            double fd = (quad_Iij(lam, h + dh, {i, j}, 1e-12) -
                         quad_Iij(lam, h - dh, {i, j}, 1e-12)) /
                        (2 * dh);
            CHECK(direct == doctest::Approx(fd).epsilon(1e-5));
        }
}

TEST_CASE("corrected closure identity on quadrature values") {
    // I_{i,j} = (1/(i+2j+1)) [4h I'_{i,j} - I'_{i+2,j} - L I'_{i+3,j} - (j/(j+1)) I'_{i+1,j+1}];
    // the 1/(i+2j+1) normalization is what the induction machinery relies on.
    for (double lam : {0.5, 0.3})
        for (double h : {0.7, 1.5})
            for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 2}, {2, 2}}) {
                auto dI = [&](int a, int b) { return quad_Iij_deriv(lam, h, {a, b}, 1e-11); };
                double rhs = (4 * h * dI(i, j) - dI(i + 2, j) - lam * dI(i + 3, j) -
                              (double)j / (j + 1) * dI(i + 1, j + 1)) /
                             (i + 2 * j + 1);
                double lhs = quad_Iij(lam, h, {i, j}, 1e-11);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
            }
}

TEST_CASE("abelian quadrature") {
    Perturbation zero;
    zero.n = 2;
    zero.lambda = Rational(1, 2);
    CHECK(std::fabs(quad_abelian(0.5, 1.0, zero, 1e-10)) <= 1e-12);

    Perturbation b01;
    b01.n = 1;
    b01.lambda = Rational(1, 2);
    b01.set_b(0, 1, rat(1));
    CHECK(quad_abelian(0.5, 1.0, b01, 1e-11) == doctest::Approx(-2 * M_PI).epsilon(1e-10));

    // the worked system vanishes at its middle zero h = 2/5
    Perturbation sys = example_system_31();
    CHECK(std::fabs(quad_abelian(0.5, 0.4, sys, 1e-11)) <= 1e-6);

    // and tracks the symbolic assembly elsewhere
    HPoly I = assemble_abelian(sys);
    for (double h : {0.2, 0.7, 1.3})
        CHECK(quad_abelian(0.5, h, sys, 1e-11) == doctest::Approx(I.eval(h)).epsilon(1e-9));
}

TEST_CASE("float pipeline at irrational lambda agrees with quadrature") {
    double lam = 1.0 / std::sqrt(2.0); // no exact representation
    FloatReductionTable t(FloatField(lam), 12); // full default budget, consistency checks inside
    for (int i = 0; i <= 3; ++i)
        for (int j = 1; i + j <= 5; ++j)
            for (double h : {0.5, 1.0}) {
                double sym = t.reduce(i, j).eval(h);
                double num = quad_Iij(lam, h, {i, j}, 1e-11);
                CHECK(sym == doctest::Approx(num).epsilon(1e-8));
            }
}

TEST_CASE("green identity on quadrature values") {
    for (int i = 1; i <= 4; ++i)
        for (int j = 0; i + j <= 5; ++j) {
            double lhs = quad_moment_dy(0.5, 1.0, i, j, 1e-11);
            double rhs = -(double)i / (j + 1) * quad_Iij(0.5, 1.0, {i - 1, j + 1}, 1e-11);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
        }
}
