#ifndef ANNULUS_STURM_HPP
#define ANNULUS_STURM_HPP

#include <vector>

#include "annulus/poly.hpp"

namespace annulus {

struct RootInterval {
    Rational lo, hi; // lo <= root <= hi; lo == hi certifies an exact rational root
    int multiplicity = 1;

    bool is_exact() const { return lo == hi; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
};

struct RootCount {
    std::vector<RootInterval> roots; // ascending by midpoint
    int distinct = 0;
    int with_multiplicity = 0;
};

// Rational polynomial as dense ascending coefficients (no trailing zeros).
using RatPoly = std::vector<Rational>;

// Strips the common pi*s grade (or substitutes s when lambda*(1-lambda) is a
// rational square) and returns the rational polynomial with the same positive
// roots. Throws MixedGrade when no common grade exists.
RatPoly rationalize_grade(const HPoly& p);

// Exact count and isolation of the distinct real roots of p on (0, +inf),
// multiplicities from the squarefree decomposition, intervals refined below
// max_width. Roots at h = 0 are excluded.
RootCount count_positive_roots(const HPoly& p, const Rational& max_width = Rational(1, 1000000));

RootCount count_positive_roots(const RatPoly& p, const Rational& max_width = Rational(1, 1000000));

// Number of sign variations in the Sturm chain difference on (0, inf); exposed
// for the property tests.
int sturm_distinct_positive_roots(const RatPoly& squarefree);

RatPoly rat_poly_derivative(const RatPoly& p);
Rational rat_poly_eval(const RatPoly& p, const Rational& x);

} // namespace annulus

#endif
