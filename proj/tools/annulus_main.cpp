#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "annulus/abelian.hpp"
#include "annulus/io.hpp"
#include "annulus/poincare.hpp"
#include "annulus/quadrature.hpp"

using namespace annulus;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitMath = 3;
constexpr int kExitVerify = 4;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw UsageError("cannot open output file " + out_path);
    f << text;
    if (text.empty() || text.back() != '\n') f << '\n';
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open input file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

bool is_exact_lambda(const std::string& s) { return s.find('/') != std::string::npos; }

double parse_double(const std::string& s) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw UsageError("bad numeric literal: " + s);
        return v;
    } catch (const std::invalid_argument&) {
        throw UsageError("bad numeric literal: " + s);
    }
}

double lambda_as_double(const std::string& s) {
    return is_exact_lambda(s) ? to_double(parse_rational(s)) : parse_double(s);
}

json roots_to_json(const RootCount& rc) {
    json arr = json::array();
    for (const auto& r : rc.roots) {
        json item;
        item["lo"] = to_string(r.lo);
        item["hi"] = to_string(r.hi);
        item["multiplicity"] = r.multiplicity;
        item["exact"] = r.is_exact();
        arr.push_back(item);
    }
    return arr;
}

json poly_json(const HPoly& p) {
    json arr = json::array();
    for (const auto& s : hpoly_to_strings(p)) arr.push_back(s);
    return arr;
}

json poly_json(const DPoly& p) {
    json arr = json::array();
    for (int k = 0; k <= p.degree(); ++k) arr.push_back(p.coeff(k));
    return arr;
}

// sign-change scan for the float pipeline (no exact certificates)
std::vector<double> scan_positive_roots(const DPoly& p) {
    std::vector<double> roots;
    if (p.is_zero()) return roots;
    double bound = 0.0;
    for (int k = 0; k < p.degree(); ++k)
        bound = std::max(bound, std::fabs(p.coeff(k) / p.lead()));
    bound += 1.0;
    const int grid = 10000;
    double prev = 0.0;
    double prev_x = 0.0;
    for (int g = 1; g <= grid; ++g) {
        double x = bound * g / grid;
        double v = p.eval(x);
        if (prev != 0.0 && v != 0.0 && (prev > 0) != (v > 0)) {
            double lo = prev_x, hi = x;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                if ((p.eval(mid) > 0) == (prev > 0)) lo = mid;
                else hi = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        if (v != 0.0) {
            prev = v;
            prev_x = x;
        }
    }
    return roots;
}

int cmd_normalize(const std::string& k1, const std::string& k2, const std::string& k3,
                  const std::string& k4, const std::string& out) {
    CMVParameters k{parse_rational(k1), parse_rational(k2), parse_rational(k3),
                    parse_rational(k4)};
    NormalizedSystem n = normalize_cmv(k);
    json j;
    j["lambda"] = to_string(n.lambda);
    j["time_scale"] = to_string(n.time_scale);
    j["x_scale"] = to_string(n.x_scale);
    j["y_scale"] = to_string(n.y_scale);
    emit(out, j.dump(2));
    return 0;
}

int cmd_reduce(const std::string& lambda, int i, int j, int level, const std::string& out) {
    if (i < 0 || j < 0) throw UsageError("indices must be nonnegative");
    json result;
    result["i"] = i;
    result["j"] = j;
    if (is_exact_lambda(lambda)) {
        Rational lam = parse_rational(lambda);
        int need = std::max({3, j + (i >= 2 ? i / 2 : 0), level});
        ReductionTable t(ExactField(lam), need);
        result["lambda"] = to_string(lam);
        result["poly"] = poly_json(t.reduce(i, j));
    } else {
        double lam = parse_double(lambda);
        int need = std::max({3, j + (i >= 2 ? i / 2 : 0), level});
        FloatReductionTable t(FloatField(lam), need);
        result["lambda"] = lam;
        result["poly"] = poly_json(t.reduce(i, j));
    }
    emit(out, result.dump(2));
    return 0;
}

int cmd_abelian(const std::string& pert_path, const std::string& out, bool with_roots) {
    Perturbation p = perturbation_from_json(slurp(pert_path));
    ReductionTable t(ExactField(p.lambda), std::max(3, p.n));
    HPoly I = assemble_abelian(t, p);

    json j;
    j["lambda"] = to_string(p.lambda);
    j["n"] = p.n;
    json alpha = json::array();
    for (int k = 1; k <= p.n; ++k) alpha.push_back(to_string(I.coeff(k)));
    j["alpha"] = alpha;
    j["poly"] = poly_json(I);
    if (with_roots) {
        if (I.is_zero()) {
            j["count"] = 0;
            j["roots"] = json::array();
        } else {
            RootCount rc = count_positive_roots(I);
            j["count"] = rc.distinct;
            j["count_with_multiplicity"] = rc.with_multiplicity;
            j["roots"] = roots_to_json(rc);
        }
    }
    emit(out, j.dump(2));
    return 0;
}

int cmd_zeros(const std::string& pert_path, const std::string& lambda_override,
              const std::string& out) {
    Perturbation p = perturbation_from_json(slurp(pert_path));
    json j;
    j["n"] = p.n;

    if (!lambda_override.empty() && !is_exact_lambda(lambda_override)) {
        // float pipeline: approximate sign-scan count, no exact certificates
        double lam = parse_double(lambda_override);
        FloatReductionTable t(FloatField(lam), std::max(3, p.n));
        DPoly I = assemble_abelian(t, p);
        auto roots = scan_positive_roots(I);
        j["lambda"] = lam;
        j["mode"] = "float";
        j["count"] = roots.size();
        json arr = json::array();
        for (double r : roots) arr.push_back(r);
        j["roots"] = arr;
        emit(out, j.dump(2));
        return 0;
    }

    ReductionTable t(ExactField(p.lambda), std::max(3, p.n));
    HPoly I = assemble_abelian(t, p);
    j["lambda"] = to_string(p.lambda);
    if (I.is_zero()) {
        j["count"] = 0;
        j["roots"] = json::array();
    } else {
        RootCount rc = count_positive_roots(I);
        j["count"] = rc.distinct;
        j["count_with_multiplicity"] = rc.with_multiplicity;
        j["roots"] = roots_to_json(rc);
    }
    emit(out, j.dump(2));
    return 0;
}

int cmd_synth(const std::string& lambda, const std::string& zeros_csv, const std::string& out) {
    if (!is_exact_lambda(lambda))
        throw UsageError("synth requires exact mode: pass lambda as p/q");
    std::vector<Rational> zeros;
    std::stringstream ss(zeros_csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) zeros.push_back(parse_rational(item));
    if (zeros.empty()) throw UsageError("no target zeros given");

    SynthesisResult r = synthesize(zeros, parse_rational(lambda));
    std::ostringstream pivots;
    for (const auto& p : r.pivots) pivots << " xi_{" << p.i << "," << p.j << "}";
    std::cerr << "pivots:" << pivots.str() << "\n";
    emit(out, perturbation_to_json(r.pert));
    return 0;
}

int cmd_verify(double tol, int grid_degree, unsigned long seed, int samples,
               const std::string& format, const std::string& csv_path, const std::string& out) {
    std::vector<Rational> lambdas = {Rational(1, 4), Rational(1, 2), Rational(3, 4)};
    std::vector<double> hs = {0.1, 1.0, 5.0};

    auto entries = symbolic_vs_quadrature_grid(lambdas, hs, grid_degree, 1e-11, true);
    double grid_max = 0.0;
    for (const auto& e : entries) grid_max = std::max(grid_max, e.rel_error);
    if (!csv_path.empty()) {
        std::ostringstream csv;
        csv << "lambda,h,i,j,value,est_error\n";
        for (const auto& e : entries)
            csv << to_string(e.lambda) << "," << format_double(e.h) << "," << e.i << "," << e.j
                << "," << format_double(e.quad) << "," << format_double(e.est_error) << "\n";
        emit(csv_path, csv.str());
    }

    double rec_max = 0.0;
    for (double h : {0.5, 2.0})
        for (const auto& r : recurrence_residuals(0.5, h, grid_degree, 1e-11))
            rec_max = std::max(rec_max, r.residual);

    // randomized perturbations against direct quadrature of g dx - f dy
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 9);
    double pert_max = 0.0;
    for (int s = 0; s < samples; ++s) {
        int n = 2 + static_cast<int>(rng() % 5);
        Perturbation p;
        p.n = n;
        p.lambda = Rational(1, 2);
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j) {
                if (rng() % 2) p.set_a(i, j, rat(num(rng), den(rng)));
                if (rng() % 2) p.set_b(i, j, rat(num(rng), den(rng)));
            }
        ReductionTable t(ExactField(p.lambda), std::max(3, n));
        HPoly I = assemble_abelian(t, p);
        for (double h : {0.5, 1.0, 2.0}) {
            double sym = I.eval(h);
            double q = quad_abelian(0.5, h, p, 1e-11);
            double denom = std::max({1.0, std::fabs(sym), std::fabs(q)});
            pert_max = std::max(pert_max, std::fabs(sym - q) / denom);
        }
    }

    bool pass = grid_max <= tol && rec_max <= 1e-6 && pert_max <= tol;
    std::ostringstream report;
    if (format == "json") {
        json j;
        j["grid_max_rel_error"] = grid_max;
        j["recurrence_max_residual"] = rec_max;
        j["perturbation_max_rel_error"] = pert_max;
        j["tolerance"] = tol;
        j["pass"] = pass;
        report << j.dump(2);
    } else {
        report << "grid (3 lambda x 3 h x i+j<=" << grid_degree
               << "): max rel error = " << format_double(grid_max) << "  [tol "
               << format_double(tol) << "]\n";
        report << "recurrences at lambda=1/2: max residual = " << format_double(rec_max)
               << "  [tol 1e-06]\n";
        report << "random perturbations (" << samples
               << " samples): max rel error = " << format_double(pert_max) << "  [tol "
               << format_double(tol) << "]\n";
        report << (pass ? "PASS" : "FAIL");
    }
    emit(out, report.str());
    return pass ? 0 : kExitVerify;
}

int cmd_simulate(const std::string& pert_path, double eps, double h_min, double h_max, int grid,
                 const std::string& scan_path, const std::string& orbit_path, double orbit_h,
                 double orbit_periods, const std::string& out) {
    Perturbation p = perturbation_from_json(slurp(pert_path));
    SimParams params;
    params.lambda = to_double(p.lambda);
    params.epsilon = eps;
    params.pert = &p;

    if (h_max <= 0) {
        // default range: past the largest zero of the symbolic integral
        h_max = 1.2;
        ReductionTable t(ExactField(p.lambda), std::max(3, p.n));
        HPoly I = assemble_abelian(t, p);
        if (!I.is_zero()) {
            RootCount rc = count_positive_roots(I);
            if (!rc.roots.empty())
                h_max = 1.5 * to_double(rc.roots.back().hi);
        }
    }

    if (!orbit_path.empty()) {
        double h0 = orbit_h > 0 ? orbit_h : 0.5 * (h_min + h_max);
        double x0 = section_x_for_energy(params.lambda, h0);
        double period = linear_period(params.lambda);
        auto orbit = integrate_orbit({x0, 0.0, 0.0}, params, orbit_periods * period, period / 512);
        std::ostringstream csv;
        csv << "t,x,y\n";
        for (const auto& s : orbit)
            csv << format_double(s.t) << "," << format_double(s.x) << "," << format_double(s.y)
                << "\n";
        emit(orbit_path, csv.str());
    }

    auto scan = displacement_scan(params, h_min, h_max, grid, true);
    if (!scan_path.empty()) {
        std::ostringstream csv;
        csv << "x0,h,displacement\n";
        for (const auto& s : scan)
            csv << format_double(s.x0) << "," << format_double(s.h) << ","
                << format_double(s.displacement) << "\n";
        emit(scan_path, csv.str());
    }
    auto cycles = locate_cycles(params, h_min, h_max, grid, &scan, true);

    json j;
    j["lambda"] = params.lambda;
    j["epsilon"] = eps;
    j["h_min"] = h_min;
    j["h_max"] = h_max;
    j["grid"] = grid;
    json arr = json::array();
    for (const auto& c : cycles) {
        json item;
        item["section_x"] = c.section_x;
        item["energy"] = c.energy;
        item["stability"] = c.stability;
        item["bracket"] = json::array({c.bracket_lo, c.bracket_hi});
        arr.push_back(item);
    }
    j["cycles"] = arr;
    emit(out, j.dump(2));
    return 0;
}

int cmd_oval(const std::string& lambda, double h, int count, const std::string& format,
             const std::string& out) {
    auto pts = oval_points(lambda_as_double(lambda), h, count);
    if (format == "csv") {
        std::ostringstream csv;
        csv << "x,y\n";
        for (auto& [x, y] : pts) csv << format_double(x) << "," << format_double(y) << "\n";
        emit(out, csv.str());
    } else {
        json arr = json::array();
        for (auto& [x, y] : pts) arr.push_back(json::array({x, y}));
        emit(out, arr.dump());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Abelian integrals and limit-cycle verification for the cubic "
                 "isochronous center"};
    app.require_subcommand(1);

    int threads = 0;
    unsigned long seed = 1;
    app.add_option("--threads", threads, "worker threads for sweeps (0 = hardware)");
    app.add_option("--seed", seed, "seed for randomized sweeps");

    std::string lambda = "1/2", out, format = "json", pert_path, zeros_csv;
    std::string k1 = "1", k2 = "1", k3 = "1", k4 = "1";
    int idx_i = 0, idx_j = 0, level = 3, grid = 200, count = 256, grid_degree = 6;
    double tol = 1e-8, eps = 1e-4, h_min = 0.01, h_max = 0.0, h_val = 1.0;
    int samples = 5;

    auto* normalize = app.add_subcommand("normalize", "map quadratic-form parameters to lambda");
    normalize->add_option("--k1", k1)->required();
    normalize->add_option("--k2", k2)->required();
    normalize->add_option("--k3", k3)->required();
    normalize->add_option("--k4", k4)->required();
    normalize->add_option("--out", out);

    auto* reduce = app.add_subcommand("reduce", "closed form of one loop integral I_{i,j}");
    reduce->add_option("--lambda", lambda);
    reduce->add_option("--i", idx_i)->required();
    reduce->add_option("--j", idx_j)->required();
    reduce->add_option("--level,--n", level);
    reduce->add_option("--out", out);

    auto* abelian = app.add_subcommand("abelian", "assemble I(h) for a perturbation file");
    abelian->add_option("--pert", pert_path)->required();
    abelian->add_option("--out", out);

    auto* zeros = app.add_subcommand("zeros", "count and isolate the positive zeros of I(h)");
    zeros->add_option("--pert", pert_path)->required();
    std::string zeros_lambda;
    zeros->add_option("--lambda", zeros_lambda, "override: float value switches to the scan pipeline");
    zeros->add_option("--out", out);

    auto* synth = app.add_subcommand("synth", "build a perturbation with prescribed zeros");
    synth->add_option("--lambda", lambda);
    synth->add_option("--zeros", zeros_csv)->required();
    synth->add_option("--out", out);

    auto* verify = app.add_subcommand("verify", "symbolic-vs-quadrature verification sweep");
    verify->add_option("--tol", tol);
    verify->add_option("--grid-degree", grid_degree);
    verify->add_option("--samples", samples);
    verify->add_option("--format", format);
    std::string verify_csv;
    verify->add_option("--csv", verify_csv, "dump the quadrature sweep as lambda,h,i,j,value,est_error");
    verify->add_option("--out", out);

    auto* simulate = app.add_subcommand("simulate", "locate limit cycles of the perturbed flow");
    simulate->add_option("--pert", pert_path)->required();
    simulate->add_option("--eps", eps);
    simulate->add_option("--h-min", h_min);
    simulate->add_option("--h-max", h_max);
    simulate->add_option("--grid", grid);
    std::string scan_path, orbit_path;
    double orbit_h = 0.0, orbit_periods = 1.0;
    simulate->add_option("--scan", scan_path, "also dump the displacement scan CSV here");
    simulate->add_option("--orbit", orbit_path, "dump one sampled orbit as t,x,y");
    simulate->add_option("--orbit-h", orbit_h, "energy of the dumped orbit");
    simulate->add_option("--orbit-periods", orbit_periods);
    simulate->add_option("--out", out);

    auto* oval = app.add_subcommand("oval", "emit points tracing one level oval");
    oval->set_help_flag("--help");
    oval->add_option("--lambda", lambda);
    oval->add_option("--h", h_val);
    oval->add_option("--count", count);
    oval->add_option("--format", format);
    oval->add_option("--out", out);

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        if (normalize->parsed()) return cmd_normalize(k1, k2, k3, k4, out);
        if (reduce->parsed()) return cmd_reduce(lambda, idx_i, idx_j, level, out);
        if (abelian->parsed()) return cmd_abelian(pert_path, out, true);
        if (zeros->parsed()) return cmd_zeros(pert_path, zeros_lambda, out);
        if (synth->parsed()) return cmd_synth(lambda, zeros_csv, out);
        if (verify->parsed()) return cmd_verify(tol, grid_degree, seed, samples, format, verify_csv, out);
        if (simulate->parsed())
            return cmd_simulate(pert_path, eps, h_min, h_max, grid, scan_path, orbit_path,
                                orbit_h, orbit_periods, out);
        if (oval->parsed()) return cmd_oval(lambda, h_val, count, format, out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const MathError& e) {
        std::cerr << "math error: " << e.what() << "\n";
        return kExitMath;
    }
    return kExitUsage;
}
