#ifndef ANNULUS_ABELIAN_HPP
#define ANNULUS_ABELIAN_HPP

#include <array>
#include <vector>

#include "annulus/exact_linear.hpp"
#include "annulus/perturbation.hpp"
#include "annulus/sturm.hpp"

namespace annulus {

// I(h) = sum b_ij I_{i,j} + sum a_ij (i/(j+1)) I_{i-1,j+1}: the line integral
// of g dx - f dy over the oval, reduced through the table. Degree <= n, zero
// constant term.
template <class F>
typename F::P assemble_abelian_t(ReductionTableT<F>& table, const Perturbation& pert);

HPoly assemble_abelian(ReductionTable& table, const Perturbation& pert);
DPoly assemble_abelian(FloatReductionTable& table, const Perturbation& pert);

// Convenience: builds a table of the right level first.
HPoly assemble_abelian(const Perturbation& pert);

// Free-parameter weights: the coefficient of I_{i,j} in I(h) as a function of
// the raw (a, b) tables. For b-only perturbations xi_ij = b_ij.
std::map<MonomialIndex, Rational> xi_coefficients(const Perturbation& pert);

// The printed closed-form coefficient formulas for n <= 4, alpha_i as
// SurdScalars (pi-graded). Cross-checks assemble_abelian.
std::array<SurdScalar, 4> abelian_coefficients_n4(const Rational& lambda,
                                                  const Perturbation& pert);

// Jacobian d(alpha_1..alpha_n)/d(xi_{0,1}..xi_{0,n}) with the pi grade stripped
// (every entry of the actual Jacobian carries pi^1).
ExactMatrix prop_jacobian_pi_stripped(ReductionTable& table, int n);

struct SynthesisResult {
    Perturbation pert;
    std::vector<MonomialIndex> pivots; // which xi columns were used, pivots[d-1] drives h^d
};

// Builds a degree-n perturbation (n = |zeros| + 1) whose Abelian integral is
// pi*s * h * prod (h - z). Primary pivots are the b_{0,k} coefficients; if the
// pivot matrix were ever singular the xi_{1,k} columns are pulled in.
SynthesisResult synthesize(const std::vector<Rational>& target_zeros, const Rational& lambda);

struct CMVParameters {
    Rational k1, k2, k3, k4;
};

struct NormalizedSystem {
    Rational lambda;
    Rational time_scale; // t_new = time_scale * t
    Rational x_scale;    // x_new = x_scale * x
    Rational y_scale;    // y_new = y_scale * y
};

// Change of variables taking the quadratic-form Hamiltonian system with
// parameters (k1..k4) to the lambda normal form; all four parameters must be
// nonzero for the substitution to make sense.
NormalizedSystem normalize_cmv(const CMVParameters& k);

} // namespace annulus

#endif
