#include "twins/constructions.hpp"

#include <algorithm>
#include <exception>
#include <thread>

namespace twins {

SegmentPlan segment_concat(const Word& word, std::size_t s, const SegmentOptions& options) {
  if (s < 2) throw DomainError("segment length must be at least 2");
  const int r = options.r;
  SegmentPlan plan;
  plan.segment_length = s;
  plan.segment_count = word.size() / s;
  plan.per_segment.resize(plan.segment_count);

  auto solve = [&](std::size_t j) {
    const auto letters = word.letters().subspan(j * s, s);
    const Word segment(word.alphabet(), std::vector<Letter>(letters.begin(), letters.end()));
    plan.per_segment[j] = options.solver == SegmentSolver::exact
                              ? longest_twins_oracle(segment, r)
                              : longest_twins_fast(segment, r);
  };
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(1, options.workers)), plan.segment_count);
  if (workers <= 1) {
    for (std::size_t j = 0; j < plan.segment_count; ++j) solve(j);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (std::size_t j = w; j < plan.segment_count; j += workers) solve(j);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  plan.witness = TwinWitness::empty(r);
  for (std::size_t j = 0; j < plan.segment_count; ++j) {
    const auto& local = plan.per_segment[j].witness;
    for (int i = 0; i < r; ++i) {
      for (std::size_t p : local.index_sets[i]) plan.witness.index_sets[i].push_back(p + j * s);
    }
  }
  return plan;
}

std::size_t interlace_covered_bound(std::size_t m, int r, int k, std::size_t mu) {
  if (m + 1 < static_cast<std::size_t>(r)) return 0;
  return (m - static_cast<std::size_t>(r) + 1) * static_cast<std::size_t>(k) * mu;
}

InterlaceResult interlace(const Word& word, int r, std::size_t m) {
  const int k = word.alphabet().size();
  if (k < 2 || r < k) throw DomainError("interlace needs r >= k >= 2");
  if (m < static_cast<std::size_t>(r)) throw DomainError("interlace needs m >= r segments");
  InterlaceResult out;
  out.witness = TwinWitness::empty(r);
  out.segment_length = word.size() / m;
  const std::size_t len = out.segment_length;

  // positions[j][c]: 1-based positions of letter c inside segment j.
  std::vector<std::vector<std::vector<std::size_t>>> positions(
      m, std::vector<std::vector<std::size_t>>(static_cast<std::size_t>(k)));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = j * len; i < (j + 1) * len; ++i) positions[j][word[i]].push_back(i + 1);
  }
  std::size_t mu = len;
  for (const auto& seg : positions) {
    for (const auto& occ : seg) mu = std::min(mu, occ.size());
  }
  out.mu = mu;
  if (mu == 0) return out;

  // Block q of twin l (1-based) lives in segment l + r*floor(q/k) + q mod k.
  // Every twin gets the blocks that the last twin can still fit.
  const auto segment_of = [&](int twin, std::size_t q) {
    return static_cast<std::size_t>(twin) + static_cast<std::size_t>(r) * (q / k) + q % k;
  };
  std::size_t blocks = 0;
  while (segment_of(r, blocks) <= m) ++blocks;
  for (int twin = 1; twin <= r; ++twin) {
    auto& set = out.witness.index_sets[twin - 1];
    for (std::size_t q = 0; q < blocks; ++q) {
      const auto& occ = positions[segment_of(twin, q) - 1][q % k];
      set.insert(set.end(), occ.begin(), occ.begin() + static_cast<std::ptrdiff_t>(mu));
    }
  }
  out.covered = static_cast<std::size_t>(r) * blocks * mu;
  return out;
}

std::size_t ProviderProfile::total_provided() const {
  std::size_t total = 0;
  for (const auto& b : bins) total += b.provided;
  return total;
}

namespace {

// base_to_extended[i] = 1-based position in the extended word of the i-th
// (1-based) letter that is not the new letter; runs[i] = new letters after it.
struct BinLayout {
  std::vector<std::size_t> base_to_extended{0};
  std::vector<std::size_t> runs{0};
};

BinLayout layout(const Word& extended) {
  const Letter fresh = static_cast<Letter>(extended.alphabet().size() - 1);
  BinLayout out;
  for (std::size_t i = 0; i < extended.size(); ++i) {
    if (extended[i] == fresh) {
      ++out.runs.back();
    } else {
      out.base_to_extended.push_back(i + 1);
      out.runs.push_back(0);
    }
  }
  return out;
}

}  // namespace

ProviderProfile provider_profile(const Word& extended, const TwinWitness& base) {
  if (extended.alphabet().size() < 2) throw DomainError("extended word needs at least 2 letters");
  const Word restricted = restrict_to_prefix_alphabet(extended, extended.alphabet().size() - 1);
  const VerifyResult check = verify_twins(restricted, base);
  if (!check.valid) {
    throw InvalidWitnessError("base witness is not valid on the restricted word: " +
                              std::string(to_string(check.reason)));
  }
  const BinLayout bins = layout(extended);
  ProviderProfile profile;
  profile.r = base.r;
  for (std::size_t l = 0; l < base.length(); ++l) {
    ProviderBins b;
    for (const auto& set : base.index_sets) {
      b.base_positions.push_back(set[l]);
      b.ball_counts.push_back(bins.runs[set[l]]);
    }
    b.provided = *std::min_element(b.ball_counts.begin(), b.ball_counts.end());
    profile.bins.push_back(std::move(b));
  }
  return profile;
}

TwinWitness boost(const Word& extended, const TwinWitness& base) {
  const ProviderProfile profile = provider_profile(extended, base);
  const BinLayout bins = layout(extended);
  TwinWitness out = TwinWitness::empty(base.r);
  for (std::size_t i = 0; i < base.index_sets.size(); ++i) {
    auto& set = out.index_sets[i];
    for (std::size_t l = 0; l < base.length(); ++l) {
      const std::size_t at = bins.base_to_extended[base.index_sets[i][l]];
      set.push_back(at);
      for (std::size_t b = 1; b <= profile.bins[l].provided; ++b) set.push_back(at + b);
    }
  }
  return out;
}

namespace {

TwinWitness solve_base(const Word& word, int r, const BaseSolver& solver) {
  switch (solver.kind) {
    case BaseSolverKind::segment_concat:
      return segment_concat(word, solver.segment_length, SegmentOptions{r, solver.segment_solver, 1})
          .witness;
    case BaseSolverKind::interlace:
      return interlace(word, r, solver.segments).witness;
    case BaseSolverKind::lag_bounded:
      return longest_twins_fast(word, r, FastOptions{solver.max_lag}).witness;
    case BaseSolverKind::exact:
      return longest_twins_fast(word, r).witness;
  }
  throw DomainError("unknown base solver");
}

}  // namespace

PipelineResult boost_pipeline(const Word& word, int start_alphabet, int r, const BaseSolver& solver) {
  const int k = word.alphabet().size();
  if (start_alphabet < 2 || start_alphabet > k) throw DomainError("need 2 <= k' <= k");
  if (r < 2) throw DomainError("r must be at least 2");
  PipelineResult out;
  out.base = solve_base(restrict_to_prefix_alphabet(word, start_alphabet), r, solver);
  out.witness = out.base;
  out.length_after_step.push_back(out.base.length());
  for (int c = start_alphabet; c < k; ++c) {
    out.witness = boost(restrict_to_prefix_alphabet(word, c + 1), out.witness);
    out.length_after_step.push_back(out.witness.length());
  }
  return out;
}

Rational theoretical_boost_factor(int k, int r, BoostVariant variant) {
  if (k < 2 || r < 2) throw DomainError("need k >= 2 and r >= 2");
  const BigInt power = pow(BigInt(k + 1), static_cast<unsigned>(r));
  const Rational extra = variant == BoostVariant::exact ? Rational(1, power - 1) : Rational(1, power);
  return (1 + extra) * Rational(k, k + 1);
}

Rational iterated_boost_ratio(Rational start_ratio, int from, int to, int r, BoostVariant variant) {
  for (int k = from; k < to; ++k) start_ratio *= theoretical_boost_factor(k, r, variant);
  return start_ratio;
}

}  // namespace twins
