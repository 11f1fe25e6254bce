#include "annulus/ode.hpp"

#include <algorithm>
#include <cmath>

namespace annulus {

namespace {

// Dormand-Prince tableau
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// y5 - y4 error weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output weights
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

} // namespace

void Dopri5::start(const PhaseState& s) {
    state_ = s;
    k1_ = rhs_(s.x, s.y);
    h_ = opts_.initial_step;
    steps_ = 0;
}

const DenseStep& Dopri5::step() {
    while (true) {
        if (++steps_ > opts_.max_steps) throw NoReturn("step budget exhausted");
        h_ = std::min(h_, opts_.max_step);
        if (h_ < 1e-14 * (1.0 + std::fabs(state_.t)))
            throw StepUnderflow("step size underflow");

        const double x0 = state_.x, y0 = state_.y;
        const Vec2 k1 = k1_;
        auto at = [&](double cx, double cy) { return rhs_(x0 + cx, y0 + cy); };

        Vec2 k2 = at(h_ * a21 * k1[0], h_ * a21 * k1[1]);
        Vec2 k3 = at(h_ * (a31 * k1[0] + a32 * k2[0]), h_ * (a31 * k1[1] + a32 * k2[1]));
        Vec2 k4 = at(h_ * (a41 * k1[0] + a42 * k2[0] + a43 * k3[0]),
                     h_ * (a41 * k1[1] + a42 * k2[1] + a43 * k3[1]));
        Vec2 k5 = at(h_ * (a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]),
                     h_ * (a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1]));
        Vec2 k6 = at(h_ * (a61 * k1[0] + a62 * k2[0] + a63 * k3[0] + a64 * k4[0] + a65 * k5[0]),
                     h_ * (a61 * k1[1] + a62 * k2[1] + a63 * k3[1] + a64 * k4[1] + a65 * k5[1]));

        Vec2 ynew;
        for (int c = 0; c < 2; ++c) {
            double inc = b1 * k1[c] + b3 * k3[c] + b4 * k4[c] + b5 * k5[c] + b6 * k6[c];
            ynew[c] = (c == 0 ? x0 : y0) + h_ * inc;
        }
        Vec2 k7 = rhs_(ynew[0], ynew[1]); // FSAL

        double err = 0.0;
        for (int c = 0; c < 2; ++c) {
            double e = h_ * (e1 * k1[c] + e3 * k3[c] + e4 * k4[c] + e5 * k5[c] + e6 * k6[c] +
                             e7 * k7[c]);
            double sc = opts_.atol +
                        opts_.rtol * std::max(std::fabs(c == 0 ? x0 : y0), std::fabs(ynew[c]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / 2.0);

        if (err <= 1.0) {
            dense_.t0 = state_.t;
            dense_.dt = h_;
            for (int c = 0; c < 2; ++c) {
                double old = c == 0 ? x0 : y0;
                double diff = ynew[c] - old;
                double bspl = h_ * k1[c] - diff;
                dense_.rcont[0][c] = old;
                dense_.rcont[1][c] = diff;
                dense_.rcont[2][c] = bspl;
                dense_.rcont[3][c] = diff - h_ * k7[c] - bspl;
                dense_.rcont[4][c] = h_ * (d1 * k1[c] + d3 * k3[c] + d4 * k4[c] + d5 * k5[c] +
                                           d6 * k6[c] + d7 * k7[c]);
            }
            state_.t += h_;
            state_.x = ynew[0];
            state_.y = ynew[1];
            k1_ = k7;
            double grow = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h_ *= std::clamp(grow, 0.2, 5.0);
            return dense_;
        }
        h_ *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
    }
}

} // namespace annulus
