#ifndef ANNULUS_POINCARE_HPP
#define ANNULUS_POINCARE_HPP

#include "annulus/ode.hpp"
#include "annulus/perturbation.hpp"

namespace annulus {

struct SimParams {
    double lambda = 0.5;
    double epsilon = 0.0;
    const Perturbation* pert = nullptr; // ignored when epsilon == 0
    OdeOptions ode;
    double escape_radius = 1e3;
    double max_periods = 10.0;          // NoReturn beyond this many linear periods
    double noise_floor = 1e-7;          // displacement magnitudes below this count as zero
};

// Right-hand side of the perturbed system:
//   dx/dt = -y/lambda - x - x^2            + eps * f(x,y)
//   dy/dt = x + y + 2xy + 3Lx^2 + 2Lx^3    + eps * g(x,y)
Vec2 vector_field(const PhaseState& s, const SimParams& p);

// Period of the linearization at the center: 2 pi sqrt(lambda/(1-lambda));
// the center is isochronous so this is the return time everywhere.
double linear_period(double lambda);

// Positive section abscissa with H(x,0) = h (H is strictly increasing on x>0).
double section_x_for_energy(double lambda, double h);

// Sampled trajectory from start to start.t + duration.
std::vector<PhaseState> integrate_orbit(const PhaseState& start, const SimParams& p,
                                        double duration, double sample_dt = 0.0);

// Next crossing of {y = 0, x > 0} in the upward direction, located on the
// dense interpolant. Throws Escaped / NoReturn.
double poincare_return(double x0, const SimParams& p);

struct CycleReport {
    double section_x = 0.0; // crossing abscissa on {y=0, x>0}
    double energy = 0.0;    // H(section_x, 0)
    int stability = 0;      // sign(return-map slope - 1): -1 stable, +1 unstable
    double bracket_lo = 0.0, bracket_hi = 0.0;
};

struct ScanPoint {
    double x0 = 0.0, h = 0.0, displacement = 0.0;
};

// Displacement scan over a uniform energy grid; one return map evaluation per
// grid point, independent across points.
std::vector<ScanPoint> displacement_scan(const SimParams& p, double h_min, double h_max, int grid,
                                         bool parallel);

// Sign changes of the scan refined by bisection to bracket width 1e-8.
std::vector<CycleReport> locate_cycles(const SimParams& p, double h_min, double h_max, int grid,
                                       const std::vector<ScanPoint>* precomputed = nullptr,
                                       bool parallel = true);

} // namespace annulus

#endif
