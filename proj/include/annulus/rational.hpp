#ifndef ANNULUS_RATIONAL_HPP
#define ANNULUS_RATIONAL_HPP

#include <gmpxx.h>
#include <string>
#include <cstdint>

#include "annulus/errors.hpp"

namespace annulus {

// Arbitrary-precision rational, canonical form (gcd 1, denominator > 0).
// mpq_class maintains the canonical form for us.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw DivideByZero();
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "p/q", and plain decimals like "-0.125".
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.get_d(); }

inline int sign(const Rational& r) { return sgn(r); }

// If r = (p/q)^2 for some rational p/q >= 0, returns true and sets root.
bool rational_sqrt(const Rational& r, Rational& root);

} // namespace annulus

#endif
