#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twins/rational.hpp"

namespace twins {

/// Coefficients c with bounds of the form c * n/k:
///   bz1    1.02
///   bz2    (k/81)^(1/3)
///   thm12  1.64 k/(k+1)
///   bzr    C_r k^(1/b), b = binom(2r-1, r), C_r = (1/(2r-1))^(1+1/b)
///   pi     prod_{j=r+1}^{k} j^r/(j^r - 1)
enum class BoundName { bz1, bz2, thm12, bzr, pi };

std::string to_string(BoundName name);
BoundName parse_bound_name(const std::string& name);

struct BoundValue {
  BoundName name = BoundName::bz1;
  BigInt k;
  int r = 2;
  std::optional<Rational> exact;  // when the coefficient is rational and computed exactly
  HighPrecision value;
  std::string rendered;           // 3 decimals, half to even
};

/// pi is exact up to this k; beyond it the product runs in 50-digit floating
/// point to kPiDirectLimit and the remaining factors are summed in log space.
inline constexpr long kPiExactLimit = 2000;
inline constexpr long kPiDirectLimit = 100000;

BoundValue bound_coefficient(BoundName name, const BigInt& k, int r = 2);

struct CrossoverResult {
  std::optional<long long> k;  // largest k with A >= B, if any
  bool hit_limit = false;      // A >= B still held at the scan limit
  long long limit = 0;
};

/// Scans k = max(2, r)..limit (skipping values invalid for either bound).
CrossoverResult crossover_k(BoundName a, BoundName b, int r = 2, long long limit = 100000000);

struct BinomRatio {
  Rational exact;            // C(N-l, M-l)/C(N, M)
  Rational approx;           // (M/N)^l
  double rel_error = 0;      // |exact - approx| / exact
  double deviation = 0;      // |exact - approx| / approx
};

BinomRatio binom_ratio(long long n, long long m, long long l);

/// (r, k) columns of the two comparison tables.
std::vector<std::pair<int, BigInt>> table_columns(int table);
/// Names shown in a table's rows.
std::vector<BoundName> table_rows(int table);

}  // namespace twins
