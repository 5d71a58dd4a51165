#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "twins/core.hpp"
#include "twins/rational.hpp"

namespace twins::fixtures {

// 27-letter ternary word carrying 3-twins "aabcc" at the positions below.
inline constexpr const char* kBoostingExampleWord = "baacacbbabcacacabbcbacccbab";

inline TwinWitness boosting_example_witness() {
  return TwinWitness{3,
                     {{2, 3, 8, 11, 19}, {5, 9, 10, 13, 23}, {12, 16, 20, 22, 24}}};
}

// The same word with a fourth letter 'd' inserted into the bins right after
// positions 2, 5 and 12.
inline constexpr const char* kBoostingExampleExtended = "badacadcbbabcadcacabbcbacccbab";

// Word with index `value` in base-k lexicographic order (most significant
// letter first).
inline Word word_from_index(std::uint64_t value, int k, std::size_t length) {
  std::vector<Letter> letters(length);
  for (std::size_t i = length; i-- > 0;) {
    letters[i] = static_cast<Letter>(value % k);
    value /= k;
  }
  return Word(Alphabet(k), std::move(letters));
}

// Ternary lambda_1..lambda_{s/2} for s = 6..14, as printed.
inline const std::map<std::size_t, std::vector<std::uint64_t>>& printed_ternary_lambdas() {
  static const std::map<std::size_t, std::vector<std::uint64_t>> table{
      {6, {42, 594, 93}},
      {7, {6, 1086, 1095}},
      {8, {0, 822, 5118, 621}},
      {9, {0, 288, 11010, 8385}},
      {10, {0, 42, 10806, 43776, 4425}},
      {11, {0, 0, 5292, 106032, 65823}},
      {12, {0, 0, 1350, 123750, 373638, 32703}},
      {13, {0, 0, 162, 75810, 992244, 526107}},
      {14, {0, 0, 0, 24894, 1312530, 3196644, 248901}},
  };
  return table;
}

struct PrintedBound {
  const char* name;
  int r;
  int k_exponent_of_ten;  // k = 10^e when > 0, else k = k_value
  long k_value;
  const char* printed;
  bool allow_mismatch;    // printed digit known to disagree with the formula
};

// Both comparison tables cell by cell.
inline const std::vector<PrintedBound>& printed_bounds() {
  static const std::vector<PrintedBound> cells{
      {"bz2", 2, 0, 3, "0.333", false},     {"bz2", 2, 0, 4, "0.367", false},
      {"bz2", 2, 0, 5, "0.395", false},     {"bz2", 2, 0, 10, "0.498", false},
      {"bz2", 2, 0, 50, "0.851", false},    {"bz2", 2, 0, 100, "1.073", false},
      {"bz2", 2, 0, 200, "1.352", false},   {"bz2", 2, 0, 400, "1.703", false},
      {"thm12", 2, 0, 3, "1.230", false},   {"thm12", 2, 0, 4, "1.312", false},
      {"thm12", 2, 0, 5, "1.367", false},   {"thm12", 2, 0, 10, "1.491", false},
      {"thm12", 2, 0, 50, "1.608", false},  {"thm12", 2, 0, 100, "1.624", false},
      {"thm12", 2, 0, 200, "1.632", false}, {"thm12", 2, 0, 400, "1.636", false},
      {"bzr", 3, 0, 4, "0.196", false},     {"bzr", 3, 0, 10, "0.214", false},
      // Formula gives 0.270; the printed value breaks monotonicity in k.
      {"bzr", 3, 0, 100, "1.036", true},    {"bzr", 3, 0, 1000, "0.340", false},
      {"bzr", 3, 10, 0, "1.703", false},    {"bzr", 4, 10, 0, "0.261", false},
      {"bzr", 4, 40, 0, "1.878", false},
      {"pi", 3, 0, 4, "1.016", false},      {"pi", 3, 0, 10, "1.036", false},
      {"pi", 3, 0, 100, "1.041", false},    {"pi", 3, 0, 1000, "1.041", false},
      {"pi", 3, 10, 0, "1.041", false},
      // Formula gives 1.00358 for r = 4 and large k, which rounds to 1.004.
      {"pi", 4, 10, 0, "1.003", true},      {"pi", 4, 40, 0, "1.003", true},
  };
  return cells;
}

inline BigInt printed_k(const PrintedBound& cell) {
  return cell.k_exponent_of_ten > 0 ? BigInt(pow(BigInt(10), static_cast<unsigned>(cell.k_exponent_of_ten)))
                                    : BigInt(cell.k_value);
}

}  // namespace twins::fixtures
