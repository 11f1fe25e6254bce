// Compares the serial reference kernels against their OpenMP counterparts:
// the symbolic-vs-quadrature sweep and the displacement scan.

#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "annulus/abelian.hpp"
#include "annulus/poincare.hpp"
#include "annulus/quadrature.hpp"

using namespace annulus;

namespace {

double now() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return static_cast<double>(clock()) / CLOCKS_PER_SEC;
#endif
}

template <class Fn>
double timed(Fn&& fn) {
    double t0 = now();
    fn();
    return now() - t0;
}

} // namespace

int main(int argc, char** argv) {
    int threads = 0;
    for (int k = 1; k < argc; ++k)
        if (std::string(argv[k]) == "--threads" && k + 1 < argc) threads = std::atoi(argv[k + 1]);
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    std::printf("threads: %d\n", threads > 0 ? threads : omp_get_max_threads());
#else
    std::printf("built without OpenMP; both runs are serial\n");
#endif

    std::vector<Rational> lambdas = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    std::vector<double> hs = {0.1, 0.5, 1.0, 2.0, 5.0};

    double quad_serial = timed([&] { symbolic_vs_quadrature_grid(lambdas, hs, 7, 1e-11, false); });
    double quad_par = timed([&] { symbolic_vs_quadrature_grid(lambdas, hs, 7, 1e-11, true); });
    std::printf("quadrature sweep   serial %.3fs   parallel %.3fs   speedup %.2fx\n", quad_serial,
                quad_par, quad_serial / quad_par);

    Perturbation sys = example_system_31();
    SimParams p;
    p.lambda = 0.5;
    p.epsilon = 1e-4;
    p.pert = &sys;
    double scan_serial = timed([&] { displacement_scan(p, 0.01, 1.2, 160, false); });
    double scan_par = timed([&] { displacement_scan(p, 0.01, 1.2, 160, true); });
    std::printf("displacement scan  serial %.3fs   parallel %.3fs   speedup %.2fx\n", scan_serial,
                scan_par, scan_serial / scan_par);

    // the parallel kernels must agree with the serial reference bit for bit
    auto a = symbolic_vs_quadrature_grid(lambdas, {0.5}, 5, 1e-10, false);
    auto b = symbolic_vs_quadrature_grid(lambdas, {0.5}, 5, 1e-10, true);
    bool same = a.size() == b.size();
    for (size_t k = 0; same && k < a.size(); ++k) same = a[k].quad == b[k].quad;
    std::printf("serial/parallel agreement: %s\n", same ? "identical" : "MISMATCH");
    return same ? 0 : 1;
}
