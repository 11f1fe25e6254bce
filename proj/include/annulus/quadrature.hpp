#ifndef ANNULUS_QUADRATURE_HPP
#define ANNULUS_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "annulus/oval.hpp"
#include "annulus/perturbation.hpp"

namespace annulus {

struct QuadResult {
    double value = 0.0;
    double est_error = 0.0;
    double mass = 0.0;             // Gauss estimate of oint |integrand|, the natural scale
    bool below_resolution = false; // oval shrank under the h floor
};

// Adaptive Gauss-Legendre with panel bisection on [a, b]; relative tolerance
// against a Gauss estimate of the L1 mass. Throws NonConvergence past max depth.
double adaptive_gauss(const std::function<double(double)>& f, double a, double b, double tol,
                      int max_depth = 30, double* est_error = nullptr, double* mass_out = nullptr);

// oint x^i y^j dx over the oval (counterclockwise; I_{0,1} < 0).
QuadResult quad_Iij_full(double lambda, double h, MonomialIndex idx, double tol);
double quad_Iij(double lambda, double h, MonomialIndex idx, double tol);

// oint x^i y^j dy
double quad_moment_dy(double lambda, double h, int i, int j, double tol);

// d/dh of I_{i,j}, via the level-set derivative (the 1/H_y kernel is analytic
// in the phi parametrization)
double quad_Iij_deriv(double lambda, double h, MonomialIndex idx, double tol);

// oint g dx - f dy for the perturbation
QuadResult quad_abelian_full(double lambda, double h, const Perturbation& pert, double tol);
double quad_abelian(double lambda, double h, const Perturbation& pert, double tol);

// Cache of quadrature values I_{i,j} at one (lambda, h); the recurrence
// residual checks reuse entries heavily.
class QuadCache {
public:
    QuadCache(double lambda, double h, double tol) : lambda_(lambda), h_(h), tol_(tol) {}
    double operator()(int i, int j);
    double lambda() const { return lambda_; }
    double h() const { return h_; }

private:
    double lambda_, h_, tol_;
    std::map<MonomialIndex, double> cache_;
};

// Residuals of the printed recurrence families evaluated on pure quadrature
// values (no symbolic input), normalized by the largest participating term.
// Family tags: "green", "deriv-x", "energy", "lower-i", "second", "ladder".
struct RecurrenceResidual {
    std::string family;
    int i, j;
    double residual;
};
std::vector<RecurrenceResidual> recurrence_residuals(double lambda, double h, int max_total_degree,
                                                     double tol);

// Symbolic-vs-quadrature sweep. Entries carry the relative error of
// reduce(i,j) against quad_Iij on the grid; embarrassingly parallel.
struct SweepEntry {
    Rational lambda;
    double h;
    int i, j;
    double symbolic, quad, mass, est_error, rel_error;
};
std::vector<SweepEntry> symbolic_vs_quadrature_grid(const std::vector<Rational>& lambdas,
                                                    const std::vector<double>& hs,
                                                    int max_total_degree, double tol,
                                                    bool parallel);

} // namespace annulus

#endif
