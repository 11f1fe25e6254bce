#ifndef ANNULUS_FIELD_HPP
#define ANNULUS_FIELD_HPP

#include <cmath>

#include "annulus/poly.hpp"

namespace annulus {

// Coefficient field for the symbolic pipeline at a fixed rational lambda.
// Scalars are SurdScalar over s = sqrt(lambda*(1-lambda)); recurrence
// coefficients live in the Numeric type (here exact rationals).
struct ExactField {
    using Scalar = SurdScalar;
    using Numeric = Rational;
    using P = Poly<Scalar>;
    static constexpr bool is_exact = true;

    Rational lambda;
    Rational s_sq;

    explicit ExactField(Rational lam) : lambda(std::move(lam)) {
        lambda.canonicalize();
        s_sq = lambda * (1 - lambda);
        if (!(lambda > 0 && lambda < 1)) throw MathError("lambda must lie in (0,1)");
    }

    Scalar of(const Numeric& v, int pi_pow = 0) const {
        return SurdScalar::from_rational(v, pi_pow);
    }
    Scalar surd(const Numeric& v, int pi_pow = 0) const {
        return SurdScalar::from_surd(v, s_sq, pi_pow);
    }
    static Numeric num(long v) { return Rational(v); }
    static Numeric from_ratio(const Rational& r) { return r; }
    static double approx(const Numeric& v) { return to_double(v); }

    bool negligible(const Scalar& x, double) const { return x.is_zero(); }
    bool nonzero(const Scalar& x, double) const { return !x.is_zero(); }
};

// Double-precision twin for irrational lambda; same pipeline, no exactness
// guarantees, equality tests replaced by tolerances.
struct FloatField {
    using Scalar = double;
    using Numeric = double;
    using P = Poly<double>;
    static constexpr bool is_exact = false;

    double lambda;

    explicit FloatField(double lam) : lambda(lam) {
        if (!(lambda > 0.0 && lambda < 1.0)) throw MathError("lambda must lie in (0,1)");
    }

    Scalar of(Numeric v, int pi_pow = 0) const { return pi_pow ? v * M_PI : v; }
    Scalar surd(Numeric v, int pi_pow = 0) const {
        double x = v * std::sqrt(lambda * (1.0 - lambda));
        return pi_pow ? x * M_PI : x;
    }
    static Numeric num(long v) { return static_cast<double>(v); }
    static Numeric from_ratio(const Rational& r) { return to_double(r); }
    static double approx(Numeric v) { return v; }

    bool negligible(Scalar x, double scale) const { return std::fabs(x) <= 1e-9 * scale; }
    bool nonzero(Scalar x, double scale) const { return std::fabs(x) > 1e-9 * scale; }
};

} // namespace annulus

#endif
