#ifndef ANNULUS_IO_HPP
#define ANNULUS_IO_HPP

#include <string>
#include <vector>

#include "annulus/poly.hpp"

namespace annulus {

// Wire format: "p/q + p'/q'*s [pi^k]"
std::string to_string(const SurdScalar& x);
SurdScalar parse_surd(const std::string& text, const Rational& s_sq);

// HPoly <-> JSON array of surd strings, ascending powers of h
std::string hpoly_to_json(const HPoly& p);
HPoly hpoly_from_json(const std::string& json_text, const Rational& s_sq);

std::vector<std::string> hpoly_to_strings(const HPoly& p);

// shortest round-trip decimal
std::string format_double(double v);

} // namespace annulus

#endif
