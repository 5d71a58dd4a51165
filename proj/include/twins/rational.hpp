#pragma once

#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace twins {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using HighPrecision = boost::multiprecision::cpp_bin_float_50;

/// Decimal rendering with `places` digits after the point, rounding half to
/// even. Exact for rationals.
std::string render_fixed(const Rational& value, int places);
std::string render_fixed(const HighPrecision& value, int places);

/// "p/q" in lowest terms.
std::string to_fraction_string(const Rational& value);

}  // namespace twins
