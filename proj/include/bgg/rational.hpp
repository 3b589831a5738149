#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

namespace bgg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Exact conversion; every finite double is a dyadic rational.
Rat rat_of_double(double x);

double rat_to_double(const Rat& q);

// Accepts "p/q", integer literals and (when allow_decimal) decimal/scientific
// notation ("0.75", "1e-3"). Throws std::invalid_argument on anything else.
Rat parse_rational(std::string_view text, bool allow_decimal = true);

// Exact decimal rendering with `sig` significant digits, round half away from
// zero. Positional form for moderate exponents, "d.dde-9" style otherwise.
// Deterministic across platforms (integer arithmetic only).
std::string rat_to_decimal(const Rat& q, int sig);

// Round to `sig` significant decimal digits, returned exactly.
Rat snap_decimal(const Rat& q, int sig);

// Fast path of snap_decimal for values already held as doubles (%.{sig}g
// formatting, parsed back exactly). sig <= 17.
Rat snap_double(double x, int sig);

// "p/q" (just "p" for integers).
std::string rat_to_fraction(const Rat& q);

// printf %.{sig}g, used for doubles that never were rationals.
std::string double_to_string(double x, int sig);

// Nearest double with `sig` significant decimal digits (output contract for
// solver values).
double round_sig(double x, int sig);

Int pow10(unsigned k);

} // namespace bgg
