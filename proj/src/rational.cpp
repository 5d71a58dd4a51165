#include "twins/rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace twins {

namespace {

BigInt pow10(int places) {
  BigInt p = 1;
  for (int i = 0; i < places; ++i) p *= 10;
  return p;
}

std::string format_scaled(bool negative, const BigInt& scaled, int places) {
  std::string digits = scaled.str();
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places)) {
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  if (negative && scaled != 0) digits.insert(0, "-");
  return digits;
}

// Rounds num/den (both non-negative, den > 0) half to even.
BigInt round_half_even(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  const BigInt twice_rem = 2 * (num - q * den);
  if (twice_rem > den || (twice_rem == den && (q & 1) != 0)) ++q;
  return q;
}

}  // namespace

std::string render_fixed(const Rational& value, int places) {
  const bool negative = value < 0;
  const Rational mag = negative ? Rational(-value) : value;
  const BigInt scaled =
      round_half_even(numerator(mag) * pow10(places), denominator(mag));
  return format_scaled(negative, scaled, places);
}

std::string render_fixed(const HighPrecision& value, int places) {
  const bool negative = value < 0;
  HighPrecision mag = negative ? HighPrecision(-value) : value;
  mag *= HighPrecision(pow10(places));
  const HighPrecision fl = floor(mag);
  BigInt q = fl.convert_to<BigInt>();
  const HighPrecision frac = mag - fl;
  if (frac > 0.5 || (frac == 0.5 && (q & 1) != 0)) ++q;
  return format_scaled(negative, q, places);
}

std::string to_fraction_string(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

}  // namespace twins
