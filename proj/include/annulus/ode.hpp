#ifndef ANNULUS_ODE_HPP
#define ANNULUS_ODE_HPP

#include <array>
#include <functional>
#include <vector>

#include "annulus/errors.hpp"

namespace annulus {

struct PhaseState {
    double x = 0.0, y = 0.0, t = 0.0;
};

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double initial_step = 1e-3;
    double max_step = 0.5;
    long max_steps = 50000000;
};

using Vec2 = std::array<double, 2>;
using Rhs = std::function<Vec2(double x, double y)>;

// One accepted embedded 5(4) step with the dense-output coefficients kept so
// the solution can be evaluated anywhere inside the step.
struct DenseStep {
    double t0 = 0.0, dt = 0.0;
    std::array<Vec2, 5> rcont{};

    Vec2 eval(double theta) const {
        double th1 = 1.0 - theta;
        Vec2 out;
        for (int c = 0; c < 2; ++c)
            out[c] = rcont[0][c] +
                     theta * (rcont[1][c] +
                              th1 * (rcont[2][c] + theta * (rcont[3][c] + th1 * rcont[4][c])));
        return out;
    }
};

// Dormand-Prince 5(4) with PI-free classic step control and 4th-order dense
// output; first-same-as-last evaluation reused across steps.
class Dopri5 {
public:
    Dopri5(Rhs rhs, OdeOptions opts = {}) : rhs_(std::move(rhs)), opts_(opts) {}

    void start(const PhaseState& s);
    // advances one accepted step; returns the dense interpolant for it
    const DenseStep& step();

    const PhaseState& state() const { return state_; }
    long steps_taken() const { return steps_; }

private:
    Rhs rhs_;
    OdeOptions opts_;
    PhaseState state_;
    Vec2 k1_{}; // FSAL slot
    double h_ = 0.0;
    long steps_ = 0;
    DenseStep dense_;
};

} // namespace annulus

#endif
