#include "annulus/quadrature.hpp"

#include <cmath>

#include "annulus/reduction.hpp"

namespace annulus {

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1], positive half
constexpr int kHalf = 8;
constexpr double kNode[kHalf] = {0.0,
                                 0.2011940939974345,
                                 0.3941513470775634,
                                 0.5709721726085388,
                                 0.7244177313601701,
                                 0.8482065834104272,
                                 0.9372733924007060,
                                 0.9879925180204854};
constexpr double kWeight[kHalf] = {0.2025782419255613, 0.1984314853271116, 0.1861610000155622,
                                   0.1662692058169939, 0.1395706779261543, 0.1071592204671719,
                                   0.0703660474881081, 0.0307532419961173};

double gauss15(const std::function<double(double)>& f, double a, double b) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = kWeight[0] * f(mid);
    for (int k = 1; k < kHalf; ++k) {
        double dx = half * kNode[k];
        acc += kWeight[k] * (f(mid + dx) + f(mid - dx));
    }
    return acc * half;
}

double ipow(double x, int e) {
    double r = 1.0;
    for (int k = 0; k < e; ++k) r *= x;
    return r;
}

double adaptive_panel(const std::function<double(double)>& f, double a, double b, double whole,
                      double tol_abs, int depth, int max_depth, double& err_acc) {
    double mid = 0.5 * (a + b);
    double left = gauss15(f, a, mid);
    double right = gauss15(f, mid, b);
    double delta = left + right - whole;
    if (std::fabs(delta) <= tol_abs || depth >= max_depth) {
        if (depth >= max_depth && std::fabs(delta) > tol_abs * 1e3)
            throw NonConvergence("adaptive quadrature did not reach tolerance");
        err_acc += std::fabs(delta);
        return left + right;
    }
    return adaptive_panel(f, a, mid, left, 0.5 * tol_abs, depth + 1, max_depth, err_acc) +
           adaptive_panel(f, mid, b, right, 0.5 * tol_abs, depth + 1, max_depth, err_acc);
}

} // namespace

double adaptive_gauss(const std::function<double(double)>& f, double a, double b, double tol,
                      int max_depth, double* est_error, double* mass_out) {
    double mass = gauss15([&](double t) { return std::fabs(f(t)); }, a, b);
    if (mass_out) *mass_out = mass;
    double tol_abs = tol * std::max(mass, 1e-14);
    double whole = gauss15(f, a, b);
    double err = 0.0;
    double value = adaptive_panel(f, a, b, whole, tol_abs, 0, max_depth, err);
    if (est_error) *est_error = err;
    return value;
}

QuadResult quad_Iij_full(double lambda, double h, MonomialIndex idx, double tol) {
    QuadResult out;
    if (h < 1e-8) { // oval below resolution; every I_{i,j}(0) = 0
        out.below_resolution = true;
        return out;
    }
    if (idx.j == 0) return out; // exact one-form
    OvalParametrization oval(lambda, h);
    auto f = [&](double phi) {
        double x = oval.x_at(phi);
        return ipow(x, idx.i) * ipow(oval.y_at(phi), idx.j) * oval.dx_at(phi);
    };
    out.value = adaptive_gauss(f, 0.0, 2.0 * M_PI, tol, 30, &out.est_error, &out.mass);
    return out;
}

double quad_Iij(double lambda, double h, MonomialIndex idx, double tol) {
    return quad_Iij_full(lambda, h, idx, tol).value;
}

double quad_moment_dy(double lambda, double h, int i, int j, double tol) {
    if (h < 1e-8) return 0.0;
    OvalParametrization oval(lambda, h);
    auto f = [&](double phi) {
        double x = oval.x_at(phi);
        return ipow(x, i) * ipow(oval.y_at(phi), j) * oval.dy_at(phi);
    };
    return adaptive_gauss(f, 0.0, 2.0 * M_PI, tol);
}

// I'_{i,j}(h) = j oint x^i y^{j-1} / (x + x^2 + y/lambda) dx; on the oval the
// denominator equals (W/lambda) sin(phi) and dx carries the matching sin(phi),
// so the kernel reduces to -(j lambda X / W) x^i y^{j-1} d phi.
double quad_Iij_deriv(double lambda, double h, MonomialIndex idx, double tol) {
    if (idx.j == 0) return 0.0;
    if (h < 1e-8) return 0.0;
    OvalParametrization oval(lambda, h);
    double scale = -idx.j * lambda * oval.X / oval.W;
    auto f = [&](double phi) {
        double x = oval.x_at(phi);
        return ipow(x, idx.i) * ipow(oval.y_at(phi), idx.j - 1);
    };
    return scale * adaptive_gauss(f, 0.0, 2.0 * M_PI, tol);
}

QuadResult quad_abelian_full(double lambda, double h, const Perturbation& pert, double tol) {
    QuadResult out;
    if (h < 1e-8) {
        out.below_resolution = true;
        return out;
    }
    OvalParametrization oval(lambda, h);
    auto f = [&](double phi) {
        double x = oval.x_at(phi);
        double y = oval.y_at(phi);
        return pert.eval_g(x, y) * oval.dx_at(phi) - pert.eval_f(x, y) * oval.dy_at(phi);
    };
    out.value = adaptive_gauss(f, 0.0, 2.0 * M_PI, tol, 30, &out.est_error);
    return out;
}

double quad_abelian(double lambda, double h, const Perturbation& pert, double tol) {
    return quad_abelian_full(lambda, h, pert, tol).value;
}

std::vector<std::pair<double, double>> oval_points(double lambda, double h, int count) {
    if (count < 4) throw MathError("oval_points needs count >= 4");
    OvalParametrization oval(lambda, h);
    std::vector<std::pair<double, double>> pts(count);
    for (int k = 0; k + 1 < count; ++k) {
        double phi = 2.0 * M_PI * k / (count - 1);
        pts[k] = {oval.x_at(phi), oval.y_at(phi)};
    }
    pts[count - 1] = pts[0];
    return pts;
}

double QuadCache::operator()(int i, int j) {
    if (i < 0 || j < 0) return 0.0;
    MonomialIndex idx{i, j};
    auto it = cache_.find(idx);
    if (it != cache_.end()) return it->second;
    double v = quad_Iij(lambda_, h_, idx, tol_);
    return cache_.emplace(idx, v).first->second;
}

namespace {

void push_residual(std::vector<RecurrenceResidual>& out, const char* family, int i, int j,
                   double lhs, double rhs, double scale) {
    out.push_back({family, i, j, std::fabs(lhs - rhs) / std::max({1.0, std::fabs(lhs), scale})});
}

} // namespace

// Every printed recurrence family, evaluated on raw quadrature values only.
std::vector<RecurrenceResidual> recurrence_residuals(double lambda, double h,
                                                     int max_total_degree, double tol) {
    std::vector<RecurrenceResidual> out;
    QuadCache I(lambda, h, tol);
    const double L = lambda;

    for (int i = 0; i <= max_total_degree; ++i) {
        for (int j = 0; i + j <= max_total_degree; ++j) {
            // Green identity: oint x^i y^j dy = -(i/(j+1)) I_{i-1,j+1}
            if (i >= 1) {
                double lhs = quad_moment_dy(lambda, h, i, j, tol);
                double rhs = -(double)i / (j + 1) * I(i - 1, j + 1);
                push_residual(out, "green", i, j, lhs, rhs, std::fabs(rhs));
            }

            // derivative of the level equation in x, integrated against x^{i-3} y^j
            if (i >= 3 && j >= 0) {
                double rhs = (1.0 / (2 * L)) *
                             ((i - 3) / (L * (j + 2)) * I(i - 4, j + 2) - I(i - 2, j) +
                              (double)(i - 2 * j - 3) / (j + 1) * I(i - 2, j + 1) -
                              3 * L * I(i - 1, j) + (double)(i - j - 3) / (j + 1) * I(i - 3, j + 1));
                push_residual(out, "deriv-x", i, j, I(i, j), rhs, std::fabs(rhs));
            }

            // the level equation itself, integrated against x^i y^{j-2}
            if (j >= 2) {
                double rhs = 2 * L * h * I(i, j - 2) - L * I(i + 2, j - 2) -
                             2 * L * I(i + 2, j - 1) - L * L * I(i + 4, j - 2) -
                             2 * L * I(i + 1, j - 1) - 2 * L * L * I(i + 3, j - 2);
                push_residual(out, "energy", i, j, I(i, j), rhs, std::fabs(rhs));
            }

            // first-index reduction
            if (i >= 3 && j >= 1) {
                double rhs = (1.0 / (L * (i + 2 * j + 1))) *
                             (2.0 * (i - 3) * h * I(i - 4, j) - (i + j - 1) * I(i - 2, j) -
                              L * (2 * i + 3 * j) * I(i - 1, j) -
                              (double)(j * (i + 2 * j + 1)) / (j + 1) * I(i - 2, j + 1) -
                              (double)(j * (i + j - 1)) / (j + 1) * I(i - 3, j + 1));
                push_residual(out, "lower-i", i, j, I(i, j), rhs, std::fabs(rhs));
            }

            // the second recurrence
            if (i >= 2 && j >= 1) {
                double c = L * (j + 1) * (i + j) * (i + 2 * j + 1);
                double sum =
                    4 * L * j * (j + 1) * (i + 2 * j + 1) * h * I(i - 1, j - 1) -
                    2.0 * (i - 2) * (j + 1) * (i + 2 * j + 1) * h * I(i - 3, j) +
                    (double)(j * (i + j) * (i + 2 * j + 1)) * I(i - 2, j + 1) +
                    (j + 1) * (i + j) * ((i + 2 * j + 1) + L * j - L) * I(i - 1, j) -
                    L * j * (j + 1) * ((i + 2 * j + 1) - 2 * L * i - 3 * L * j - L) *
                        I(i + 1, j - 1) -
                    2 * L * j * (i - 1) * (j + 1) * h * I(i - 2, j - 1) +
                    L * j * (j + 1) * (i + j) * I(i, j - 1);
                push_residual(out, "second", i, j, I(i, j), -sum / c, std::fabs(sum / c));
            }
        }
    }

    // second-index ladder steps
    for (int n = 1; n + 3 <= max_total_degree + 1; ++n) {
        double den = 2.0 * (n + 3) * (2 * n + 5);
        double a = (n + 1) * (L * (9 * n + 24) - (8 * n + 21)) / den;
        double b = 2.0 * (n + 1) / ((n + 3) * (2 * n + 5));
        double c = n * (L * (3 * n + 8) - (2 * n + 5)) / (L * den);
        double d = -(n + 1.0) / (L * (n + 2));
        double e1 = -(n + 1.0) * (16 * n + 40) / den;
        double e0 = (n + 1.0) * (L * (3 * n + 8) - (2 * n + 5)) / (L * den);
        double g = (L * n - (2 * n + 3)) / (L * (n + 3));
        double rhs = a * I(2, n) + b * h * I(0, n) + c * I(0, n + 1) + d * I(0, n + 2) +
                     (e1 * h + e0) * I(1, n) + g * I(1, n + 1);
        push_residual(out, "ladder", 2, n + 1, I(2, n + 1), rhs, std::fabs(rhs));
    }

    return out;
}

std::vector<SweepEntry> symbolic_vs_quadrature_grid(const std::vector<Rational>& lambdas,
                                                    const std::vector<double>& hs,
                                                    int max_total_degree, double tol,
                                                    bool parallel) {
    std::vector<SweepEntry> entries;
    for (const Rational& lam : lambdas) {
        ReductionTable table(ExactField(lam), std::max(3, max_total_degree));
        for (int i = 0; i <= max_total_degree; ++i)
            for (int j = 0; i + j <= max_total_degree; ++j)
                for (double h : hs) {
                    SweepEntry e;
                    e.lambda = lam;
                    e.h = h;
                    e.i = i;
                    e.j = j;
                    e.symbolic = table.reduce(i, j).eval(h);
                    entries.push_back(e);
                }
    }

    const long total = static_cast<long>(entries.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long k = 0; k < total; ++k) {
        SweepEntry& e = entries[k];
        QuadResult q = quad_Iij_full(to_double(e.lambda), e.h, MonomialIndex{e.i, e.j}, tol);
        e.quad = q.value;
        e.mass = q.mass;
        e.est_error = q.est_error;
        // relative to the integral scale, floored by the loop's L1 mass so the
        // identically-vanishing entries (odd moments, closed forms) are judged
        // against the size of what was integrated rather than against zero
        double denom = std::max({std::fabs(e.symbolic), std::fabs(e.quad), 1e-3 * e.mass, 1e-300});
        e.rel_error = std::fabs(e.symbolic - e.quad) / denom;
    }
    return entries;
}

} // namespace annulus
