#include "annulus/poincare.hpp"

#include <algorithm>
#include <cmath>

#include "annulus/oval.hpp"

namespace annulus {

Vec2 vector_field(const PhaseState& s, const SimParams& p) {
    const double L = p.lambda;
    const double x = s.x, y = s.y;
    double fx = -y / L - x - x * x;
    double fy = x + y + 2 * x * y + 3 * L * x * x + 2 * L * x * x * x;
    if (p.epsilon != 0.0 && p.pert) {
        fx += p.epsilon * p.pert->eval_f(x, y);
        fy += p.epsilon * p.pert->eval_g(x, y);
    }
    return {fx, fy};
}

double linear_period(double lambda) { return 2.0 * M_PI * std::sqrt(lambda / (1.0 - lambda)); }

double section_x_for_energy(double lambda, double h) {
    if (!(h > 0)) throw MathError("section energy must be positive");
    auto H = [&](double x) { return hamiltonian(lambda, x, 0.0); };
    double hi = 1.0;
    while (H(hi) < h) hi *= 2.0;
    double lo = 0.0;
    for (int k = 0; k < 200; ++k) {
        double mid = 0.5 * (lo + hi);
        if (H(mid) < h) lo = mid;
        else hi = mid;
        if (hi - lo < 1e-16 * hi) break;
    }
    return 0.5 * (lo + hi);
}

namespace {

Rhs make_rhs(const SimParams& p) {
    return [&p](double x, double y) {
        PhaseState s{x, y, 0.0};
        return vector_field(s, p);
    };
}

// root of the dense y-interpolant on [th_lo, th_hi]; y changes sign there
double bisect_dense_y(const DenseStep& d, double th_lo, double th_hi) {
    double y_lo = d.eval(th_lo)[1];
    for (int k = 0; k < 80; ++k) {
        double mid = 0.5 * (th_lo + th_hi);
        double y_mid = d.eval(mid)[1];
        if ((y_lo <= 0.0) == (y_mid <= 0.0)) {
            th_lo = mid;
            y_lo = y_mid;
        } else {
            th_hi = mid;
        }
        if (th_hi - th_lo < 1e-15) break;
    }
    return 0.5 * (th_lo + th_hi);
}

} // namespace

std::vector<PhaseState> integrate_orbit(const PhaseState& start, const SimParams& p,
                                        double duration, double sample_dt) {
    Dopri5 solver(make_rhs(p), p.ode);
    solver.start(start);
    std::vector<PhaseState> out{start};
    const double t_end = start.t + duration;
    double next_sample = sample_dt > 0 ? start.t + sample_dt : 0.0;

    while (solver.state().t < t_end) {
        const DenseStep& d = solver.step();
        const PhaseState& s = solver.state();
        if (std::fabs(s.x) > p.escape_radius || std::fabs(s.y) > p.escape_radius)
            throw Escaped("orbit left the bounding box");
        if (sample_dt > 0) {
            while (next_sample <= std::min(s.t, t_end)) {
                double theta = (next_sample - d.t0) / d.dt;
                Vec2 v = d.eval(theta);
                out.push_back({v[0], v[1], next_sample});
                next_sample += sample_dt;
            }
        } else if (s.t <= t_end) {
            out.push_back(s);
        }
        if (s.t >= t_end) {
            double theta = (t_end - d.t0) / d.dt;
            Vec2 v = d.eval(theta);
            if (out.back().t < t_end) out.push_back({v[0], v[1], t_end});
            break;
        }
    }
    return out;
}

double poincare_return(double x0, const SimParams& p) {
    if (!(x0 > 0)) throw MathError("section requires x0 > 0");
    Dopri5 solver(make_rhs(p), p.ode);
    solver.start({x0, 0.0, 0.0});

    const double t_max = p.max_periods * linear_period(p.lambda);
    double prev_y = 0.0; // starting on the section, moving upward

    while (true) {
        const DenseStep& d = solver.step();
        const PhaseState& s = solver.state();
        if (std::fabs(s.x) > p.escape_radius || std::fabs(s.y) > p.escape_radius)
            throw Escaped("orbit left the bounding box");
        if (s.t > t_max) throw NoReturn("no section return within the time budget");

        if (prev_y < 0.0 && s.y >= 0.0) {
            double theta = bisect_dense_y(d, 0.0, 1.0);
            Vec2 v = d.eval(theta);
            if (v[0] > 0.0) return v[0];
        }
        prev_y = s.y;
    }
}

std::vector<ScanPoint> displacement_scan(const SimParams& p, double h_min, double h_max, int grid,
                                         bool parallel) {
    if (grid < 2) throw MathError("scan grid must have at least 2 points");
    std::vector<ScanPoint> scan(grid);
    for (int g = 0; g < grid; ++g) {
        double h = h_min + (h_max - h_min) * g / (grid - 1);
        scan[g].h = h;
        scan[g].x0 = section_x_for_energy(p.lambda, h);
    }
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int g = 0; g < grid; ++g)
        scan[g].displacement = poincare_return(scan[g].x0, p) - scan[g].x0;
    return scan;
}

std::vector<CycleReport> locate_cycles(const SimParams& p, double h_min, double h_max, int grid,
                                       const std::vector<ScanPoint>* precomputed, bool parallel) {
    if (grid < 16) throw MathError("cycle scan needs a grid of at least 16");
    std::vector<ScanPoint> scan =
        precomputed ? *precomputed : displacement_scan(p, h_min, h_max, grid, parallel);

    auto effective_sign = [&](double d) {
        return std::fabs(d) <= p.noise_floor ? 0 : (d > 0 ? 1 : -1);
    };

    std::vector<CycleReport> found;
    long last_idx = -1;
    int last_sign = 0;
    for (size_t g = 0; g < scan.size(); ++g) {
        int s = effective_sign(scan[g].displacement);
        if (s == 0) continue; // below the noise floor; a bracket may span it
        if (last_sign == 0 || s == last_sign) {
            last_idx = static_cast<long>(g);
            last_sign = s;
            continue;
        }

        double lo = scan[last_idx].x0, hi = scan[g].x0;
        double d_lo = scan[last_idx].displacement, d_hi = scan[g].displacement;
        last_idx = static_cast<long>(g);
        last_sign = s;
        while (hi - lo > 1e-8) {
            double mid = 0.5 * (lo + hi);
            double d_mid = poincare_return(mid, p) - mid;
            if ((d_mid > 0) == (d_lo > 0)) {
                lo = mid;
                d_lo = d_mid;
            } else {
                hi = mid;
                d_hi = d_mid;
            }
        }

        CycleReport r;
        r.bracket_lo = lo;
        r.bracket_hi = hi;
        r.section_x = 0.5 * (lo + hi);
        r.energy = hamiltonian(p.lambda, r.section_x, 0.0);
        r.stability = (d_hi - d_lo) / (hi - lo) < 0 ? -1 : 1;
        found.push_back(r);
    }

    std::sort(found.begin(), found.end(),
              [](const CycleReport& a, const CycleReport& b) { return a.section_x < b.section_x; });
    return found;
}

} // namespace annulus
