#ifndef ANNULUS_OVAL_HPP
#define ANNULUS_OVAL_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "annulus/errors.hpp"

namespace annulus {

inline double hamiltonian(double lambda, double x, double y) {
    return 0.5 * x * x + lambda * x * x * x + 0.5 * lambda * x * x * x * x +
           0.5 * y * y / lambda + x * y + x * x * y;
}

// The level oval H = h, split by the parabola y = -lambda x^2 - lambda x into
// an upper and a lower arc. phi parametrizes the oval smoothly and
// counterclockwise: x = X cos(phi), y = parabola(x) + W sin(phi), which makes
// every loop integrand analytic in phi (no square-root endpoints).
struct OvalParametrization {
    double lambda, h;
    double X; // turning abscissa sqrt(2h/(1-lambda))
    double W; // sheared half-height sqrt(2 lambda h)

    OvalParametrization(double lambda_, double h_) : lambda(lambda_), h(h_) {
        if (!(lambda > 0.0 && lambda < 1.0)) throw MathError("lambda must lie in (0,1)");
        if (!(h > 0.0)) throw MathError("oval requires h > 0");
        X = std::sqrt(2.0 * h / (1.0 - lambda));
        W = std::sqrt(2.0 * lambda * h);
    }

    double parabola(double x) const { return -lambda * x * x - lambda * x; }
    double radicand(double x) const { return (lambda * lambda - lambda) * x * x + 2.0 * lambda * h; }
    double upper_arc(double x) const { return parabola(x) + std::sqrt(std::max(0.0, radicand(x))); }
    double lower_arc(double x) const { return parabola(x) - std::sqrt(std::max(0.0, radicand(x))); }

    double x_at(double phi) const { return X * std::cos(phi); }
    double y_at(double phi) const { return parabola(x_at(phi)) + W * std::sin(phi); }
    double dx_at(double phi) const { return -X * std::sin(phi); }
    double dy_at(double phi) const {
        double x = x_at(phi);
        return (-2.0 * lambda * x - lambda) * dx_at(phi) + W * std::cos(phi);
    }
};

// count points tracing the oval once, counterclockwise, first == last.
std::vector<std::pair<double, double>> oval_points(double lambda, double h, int count);

} // namespace annulus

#endif
