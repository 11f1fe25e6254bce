#ifndef ANNULUS_TESTS_WALLIS_ORACLE_HPP
#define ANNULUS_TESTS_WALLIS_ORACLE_HPP

// Test-only oracle: evaluates I_{i,j}(h) = oint x^i y^j dx by expanding the
// two arcs y = u(x) -/+ R(x) binomially and integrating each even monomial
// x^{2a} R^{2b+1} in closed form (trigonometric substitution, Wallis values).
// Independent of the recurrence engine: no recurrences, no induction.

#include <vector>

#include "annulus/poly.hpp"

namespace annulus_test {

using annulus::HPoly;
using annulus::Rational;
using annulus::SurdScalar;

inline Rational binomial(int n, int k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

inline Rational double_fact(int n) {
    Rational r(1);
    for (int k = n; k >= 2; k -= 2) r *= k;
    return r;
}

inline Rational pow_rat(const Rational& x, int e) {
    Rational r(1);
    for (int k = 0; k < e; ++k) r *= x;
    return r;
}

// oint x^i y^j dx with the orientation that makes I_{0,1} < 0.
inline HPoly wallis_Iij(int i, int j, const Rational& lambda) {
    Rational s_sq = lambda * (1 - lambda);
    Rational one_minus = 1 - lambda;

    // coefficient of h^d, as a rational multiple of pi*s
    std::vector<Rational> coeff;
    auto bump = [&](size_t d, const Rational& v) {
        if (coeff.size() <= d) coeff.resize(d + 1, Rational(0));
        coeff[d] += v;
    };

    for (int k = 1; k <= j; k += 2) {
        int p = j - k;
        int b = (k - 1) / 2;
        Rational base = Rational(-2) * binomial(j, k) * pow_rat(-lambda, p);
        // R^k = R^{2b+1}; R^2 = 2*lambda*h - s_sq*x^2 since lambda - lambda^2 = s^2.
        // Expand R^{2b} binomially and keep one bare R factor.
        for (int t = 0; t <= b; ++t) {
            Rational rpow =
                binomial(b, t) * pow_rat(Rational(2) * lambda, b - t) * pow_rat(-s_sq, t);
            for (int m = 0; m <= p; ++m) {
                int e = i + p + m + 2 * t; // power of x alongside one bare R
                if (e % 2 != 0) continue;
                int a = e / 2;
                // int_{-X}^{X} x^{2a} R dx = 2^{a+2} (1-L)^{-(a+1)} V(a,1) s h^{a+1},
                // V(a,c) = (pi/2)(2a-1)!!(2c-1)!!/(2a+2c)!!
                Rational v = double_fact(2 * a - 1) * double_fact(1) / double_fact(2 * a + 2);
                Rational integral = pow_rat(Rational(2), a + 2) / pow_rat(one_minus, a + 1) * v /
                                    2; // the pi stays in the grade
                int hpow = a + 1 + (b - t); // h^{b-t} from the R^2 expansion
                bump(hpow, base * binomial(p, m) * rpow * integral);
            }
        }
    }

    std::vector<SurdScalar> out(coeff.size());
    for (size_t d = 0; d < coeff.size(); ++d)
        if (coeff[d] != 0) out[d] = SurdScalar::from_surd(coeff[d], s_sq, 1);
    return HPoly(std::move(out));
}

} // namespace annulus_test

#endif
