#ifndef ANNULUS_PERTURBATION_HPP
#define ANNULUS_PERTURBATION_HPP

#include <map>
#include <string>

#include "annulus/reduction.hpp"

namespace annulus {

// Coefficient tables of the degree-n perturbing polynomials: f = sum a_ij x^i y^j
// enters dx/dt, g = sum b_ij x^i y^j enters dy/dt.
struct Perturbation {
    int n = 0;
    Rational lambda;
    std::map<MonomialIndex, Rational> a, b;

    void set_a(int i, int j, const Rational& v) { set(a, i, j, v); }
    void set_b(int i, int j, const Rational& v) { set(b, i, j, v); }

    Rational get_a(int i, int j) const { return get(a, i, j); }
    Rational get_b(int i, int j) const { return get(b, i, j); }

    // f and g evaluated at a phase point
    double eval_f(double x, double y) const { return eval(a, x, y); }
    double eval_g(double x, double y) const { return eval(b, x, y); }

private:
    void set(std::map<MonomialIndex, Rational>& m, int i, int j, const Rational& v) {
        if (i < 0 || j < 0 || i + j > n)
            throw MathError("perturbation index out of range for degree " + std::to_string(n));
        if (v == 0) m.erase(MonomialIndex{i, j});
        else m[MonomialIndex{i, j}] = v;
    }
    static Rational get(const std::map<MonomialIndex, Rational>& m, int i, int j) {
        auto it = m.find(MonomialIndex{i, j});
        return it == m.end() ? Rational(0) : it->second;
    }
    static double eval(const std::map<MonomialIndex, Rational>& m, double x, double y);
};

std::string perturbation_to_json(const Perturbation& p);
Perturbation perturbation_from_json(const std::string& text);

// The worked degree-4 example system at lambda = 1/2.
Perturbation example_system_31();

} // namespace annulus

#endif
