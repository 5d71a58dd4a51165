#include "twins/bounds.hpp"

#include <cmath>

#include "twins/core.hpp"

namespace twins {

namespace {

BigInt binomial(int n, int k) {
  BigInt out = 1;
  for (int i = 0; i < k; ++i) out = out * (n - i) / (i + 1);
  return out;
}

void check_domain(BoundName name, const BigInt& k, int r) {
  if (k < 2) throw DomainError("k must be at least 2");
  if (name == BoundName::bzr && !(r >= 3 && k > r)) throw DomainError("bzr needs k > r >= 3");
  if (name == BoundName::pi && (r < 2 || k < r)) throw DomainError("pi needs k >= r >= 2");
}

HighPrecision pi_high_precision(const BigInt& k, int r) {
  const long direct = k > kPiDirectLimit ? kPiDirectLimit : k.convert_to<long>();
  HighPrecision prod = 1;
  for (long j = r + 1; j <= direct; ++j) {
    const HighPrecision jr = pow(HighPrecision(j), r);
    prod *= jr / (jr - 1);
  }
  if (k <= direct) return prod;
  // log of the remaining factors: sum_{j=a}^{b} -log(1 - j^-r), with
  // -log(1 - x) = x + x^2/2 + O(x^3), summed by Euler-Maclaurin.
  const HighPrecision a = direct + 1;
  const HighPrecision b = HighPrecision(k);
  auto term = [&](int p, const HighPrecision& scale) {
    // scale * sum_{j=a}^{b} j^-p
    const auto f = [&](const HighPrecision& x) { return pow(x, -p); };
    const auto df = [&](const HighPrecision& x) { return -p * pow(x, -p - 1); };
    const HighPrecision integral = (pow(a, 1 - p) - pow(b, 1 - p)) / (p - 1);
    return scale * (integral + (f(a) + f(b)) / 2 + (df(b) - df(a)) / 12);
  };
  const HighPrecision log_tail = term(r, 1) + term(2 * r, HighPrecision(1) / 2);
  return prod * exp(log_tail);
}

// Double-precision values for scanning; the boundary is re-checked in
// 50 digits afterwards. pi is carried incrementally.
struct FastEvaluator {
  BoundName name;
  int r;
  double pi = 1;
  bool pi_settled = false;  // remaining factors round to 1
  double binom_inv = 0;
  double c_r = 0;

  FastEvaluator(BoundName n, int rr) : name(n), r(rr) {
    if (name == BoundName::bzr) {
      binom_inv = 1.0 / binomial(2 * r - 1, r).convert_to<double>();
      c_r = std::pow(1.0 / (2 * r - 1), 1.0 + binom_inv);
    }
  }

  // Must be called for consecutive k.
  double at(long long k) {
    switch (name) {
      case BoundName::bz1: return 1.02;
      case BoundName::bz2: return std::cbrt(static_cast<double>(k) / 81.0);
      case BoundName::thm12: return 1.64 * static_cast<double>(k) / static_cast<double>(k + 1);
      case BoundName::bzr: return c_r * std::pow(static_cast<double>(k), binom_inv);
      case BoundName::pi:
        if (k > r && !pi_settled) {
          const double jr = std::pow(static_cast<double>(k), r);
          const double factor = jr / (jr - 1);
          pi_settled = factor == 1.0;
          pi *= factor;
        }
        return pi;
    }
    return 0;
  }
};

bool valid_for(BoundName name, long long k, int r) {
  if (k < 2) return false;
  if (name == BoundName::bzr) return r >= 3 && k > r;
  if (name == BoundName::pi) return k >= r;
  return true;
}

bool at_least(BoundName a, BoundName b, long long k, int r) {
  return bound_coefficient(a, k, r).value >= bound_coefficient(b, k, r).value;
}

}  // namespace

std::string to_string(BoundName name) {
  switch (name) {
    case BoundName::bz1: return "bz1";
    case BoundName::bz2: return "bz2";
    case BoundName::thm12: return "thm12";
    case BoundName::bzr: return "bzr";
    case BoundName::pi: return "pi";
  }
  return "unknown";
}

BoundName parse_bound_name(const std::string& name) {
  for (auto n : {BoundName::bz1, BoundName::bz2, BoundName::thm12, BoundName::bzr, BoundName::pi}) {
    if (to_string(n) == name) return n;
  }
  throw ParseError("unknown bound name: " + name);
}

BoundValue bound_coefficient(BoundName name, const BigInt& k, int r) {
  check_domain(name, k, r);
  BoundValue out;
  out.name = name;
  out.k = k;
  out.r = r;
  switch (name) {
    case BoundName::bz1:
      out.exact = Rational(51, 50);
      break;
    case BoundName::bz2:
      out.value = cbrt(HighPrecision(k) / 81);
      break;
    case BoundName::thm12:
      out.exact = Rational(BigInt(41) * k, BigInt(25) * (k + 1));
      break;
    case BoundName::bzr: {
      const HighPrecision b = HighPrecision(binomial(2 * r - 1, r));
      const HighPrecision c_r = pow(HighPrecision(1) / (2 * r - 1), 1 + 1 / b);
      out.value = c_r * exp(log(HighPrecision(k)) / b);
      break;
    }
    case BoundName::pi:
      if (k <= kPiExactLimit) {
        Rational prod = 1;
        for (long j = r + 1; j <= k.convert_to<long>(); ++j) {
          const BigInt jr = pow(BigInt(j), static_cast<unsigned>(r));
          prod *= Rational(jr, jr - 1);
        }
        out.exact = prod;
      } else {
        out.value = pi_high_precision(k, r);
      }
      break;
  }
  if (out.exact) {
    out.value = HighPrecision(numerator(*out.exact)) / HighPrecision(denominator(*out.exact));
    out.rendered = render_fixed(*out.exact, 3);
  } else {
    out.rendered = render_fixed(out.value, 3);
  }
  return out;
}

CrossoverResult crossover_k(BoundName a, BoundName b, int r, long long limit) {
  CrossoverResult out;
  out.limit = limit;
  FastEvaluator fa(a, r), fb(b, r);
  std::optional<long long> last;
  for (long long k = 2; k <= limit; ++k) {
    const double va = fa.at(k);
    const double vb = fb.at(k);
    if (!valid_for(a, k, r) || !valid_for(b, k, r)) continue;
    if (va >= vb) last = k;
  }
  if (!last) return out;
  // Settle the boundary in 50-digit arithmetic.
  long long k = *last;
  while (k >= 2 && valid_for(a, k, r) && valid_for(b, k, r) && !at_least(a, b, k, r)) --k;
  while (k < limit && at_least(a, b, k + 1, r)) ++k;
  if (!valid_for(a, k, r) || !valid_for(b, k, r)) return out;
  out.k = k;
  out.hit_limit = k == limit;
  return out;
}

BinomRatio binom_ratio(long long n, long long m, long long l) {
  if (!(0 <= l && l <= m && m <= n) || n == 0) throw DomainError("need 0 <= l <= M <= N, N > 0");
  BinomRatio out;
  out.exact = 1;
  for (long long i = 0; i < l; ++i) out.exact *= Rational(m - i, n - i);
  out.approx = pow(BigInt(m), static_cast<unsigned>(l));
  out.approx /= pow(BigInt(n), static_cast<unsigned>(l));
  Rational diff = out.exact - out.approx;
  if (diff < 0) diff = -diff;
  if (out.exact != 0) out.rel_error = Rational(diff / out.exact).convert_to<double>();
  if (out.approx != 0) out.deviation = Rational(diff / out.approx).convert_to<double>();
  return out;
}

std::vector<std::pair<int, BigInt>> table_columns(int table) {
  if (table == 1) {
    std::vector<std::pair<int, BigInt>> cols;
    for (int k : {3, 4, 5, 10, 50, 100, 200, 400}) cols.emplace_back(2, k);
    return cols;
  }
  if (table == 2) {
    const BigInt e10 = pow(BigInt(10), 10);
    const BigInt e40 = pow(BigInt(10), 40);
    return {{3, 4}, {3, 10}, {3, 100}, {3, 1000}, {3, e10}, {4, e10}, {4, e40}};
  }
  throw ParseError("table must be 1 or 2");
}

std::vector<BoundName> table_rows(int table) {
  if (table == 1) return {BoundName::bz2, BoundName::thm12};
  if (table == 2) return {BoundName::bzr, BoundName::pi};
  throw ParseError("table must be 1 or 2");
}

}  // namespace twins
