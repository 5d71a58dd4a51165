#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "twins/constructions.hpp"
#include "twins/core.hpp"
#include "twins/rational.hpp"

namespace twins {

// Thresholds used by the statistical checks, kept in one place.
namespace thresholds {
inline constexpr double chi_square_significance = 0.001;
inline constexpr double frequency_tolerance = 0.01;
inline constexpr double concentration_failure_limit = 0.01;
}  // namespace thresholds

/// Counter-based stream: output i is SplitMix64 finalization of
/// key + i * golden, with key mixed from (seed, stream index). Streams with
/// different indices are independent, and nothing is shared between them.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_index);

  std::uint64_t next();
  /// Uniform in [0, bound), bound >= 1. Lemire's multiply-shift with
  /// rejection, so exactly uniform.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_index() const noexcept { return stream_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct BinomialModel {
  std::size_t n = 0;
  int k = 2;
};

struct FixedCountsModel {
  LetterCounts counts;
};

using ModelSpec = std::variant<BinomialModel, FixedCountsModel>;

std::size_t model_length(const ModelSpec& model);
int model_alphabet(const ModelSpec& model);

// The samplers only call source.below(bound), so any object offering that
// (a RandomStream, or the exhaustive ChoiceEnumerator below) can drive them.

template <class Source>
Word sample_binomial_with(std::size_t n, int k, Source& source) {
  if (k < 1) throw DomainError("alphabet size must be at least 1");
  std::vector<Letter> letters(n);
  for (auto& c : letters) c = static_cast<Letter>(source.below(static_cast<std::uint64_t>(k)));
  return Word(Alphabet(k), std::move(letters));
}

/// Fisher-Yates shuffle of the sorted expansion of the counts.
template <class Source>
Word sample_fixed_counts_with(const LetterCounts& counts, Source& source) {
  if (counts.counts.empty()) throw DomainError("letter counts need at least one letter");
  std::vector<Letter> letters;
  letters.reserve(counts.total());
  for (std::size_t c = 0; c < counts.counts.size(); ++c) {
    letters.insert(letters.end(), counts.counts[c], static_cast<Letter>(c));
  }
  for (std::size_t i = letters.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(source.below(i));
    std::swap(letters[i - 1], letters[j]);
  }
  return Word(Alphabet(static_cast<int>(counts.counts.size())), std::move(letters));
}

/// Places M copies of a new letter (index k) at a uniform M-subset of the
/// n + M final positions (Floyd's subset sampling); the base letters fill
/// the remaining positions in order.
template <class Source>
Word insert_letter_phase2_with(const Word& base, std::size_t m, Source& source) {
  const std::size_t total = base.size() + m;
  std::vector<bool> fresh(total, false);
  for (std::size_t j = total - m; j < total; ++j) {
    const auto t = static_cast<std::size_t>(source.below(j + 1));
    fresh[fresh[t] ? j : t] = true;
  }
  const int k = base.alphabet().size();
  std::vector<Letter> letters(total);
  std::size_t next = 0;
  for (std::size_t i = 0; i < total; ++i) {
    letters[i] = fresh[i] ? static_cast<Letter>(k) : base[next++];
  }
  return Word(Alphabet(k + 1), std::move(letters));
}

Word sample_binomial(std::size_t n, int k, RandomStream& stream);
Word sample_fixed_counts(const LetterCounts& counts, RandomStream& stream);
Word insert_letter_phase2(const Word& base, std::size_t m, RandomStream& stream);
Word sample(const ModelSpec& model, RandomStream& stream);

/// Walks every sequence of choices a sampler can make. Each run replays a
/// prefix and extends it with zeros; advance() moves to the next leaf.
class ChoiceEnumerator {
 public:
  std::uint64_t below(std::uint64_t bound);
  /// Probability of the path taken in the current run.
  Rational probability() const;
  /// False once every path has been visited.
  bool advance();

 private:
  std::vector<std::pair<std::uint64_t, std::uint64_t>> path_;  // (choice, bound)
  std::size_t depth_ = 0;
};

using Distribution = std::map<std::string, Rational>;

/// Exact output distribution of a sampler, by enumerating all its choices.
Distribution exact_distribution(const std::function<Word(ChoiceEnumerator&)>& sampler);

/// Uniform distribution over all arrangements of the counts.
Distribution multiset_uniform_distribution(const LetterCounts& counts);

Rational total_variation(const Distribution& a, const Distribution& b);

struct ChiSquareResult {
  double statistic = 0;
  std::size_t degrees_of_freedom = 0;
  double p_value = 1;
};

/// Goodness of fit of observed counts against expected probabilities over
/// the same categories (keys of `expected`; unknown observations count as a
/// failure with p = 0).
ChiSquareResult chi_square(const std::map<std::string, std::uint64_t>& observed,
                           const Distribution& expected);

enum class StatisticKind { segment_concat_ratio, boost_pipeline_ratio, fast_solver_ratio, interlace_ratio };

std::string to_string(StatisticKind kind);
StatisticKind parse_statistic(const std::string& name);

struct StatisticSpec {
  StatisticKind kind = StatisticKind::segment_concat_ratio;
  int r = 2;
  std::size_t segment_length = 14;  // segment_concat_ratio
  int start_alphabet = 2;           // boost_pipeline_ratio
  BaseSolver base;                  // boost_pipeline_ratio
  std::size_t segments = 10;        // interlace_ratio
  std::size_t max_lag = 0;          // fast_solver_ratio, 0 = exact
};

/// Twin length divided by the word length.
double evaluate_statistic(const StatisticSpec& statistic, const Word& word);

struct Histogram {
  double lo = 0;
  double hi = 0;
  std::vector<std::uint64_t> counts;
};

struct ExperimentSummary {
  std::size_t trials = 0;
  std::string statistic;
  double mean = 0;
  double sd = 0;  // sample standard deviation, 0 for one trial
  double min = 0;
  double max = 0;
  Histogram histogram;
  std::vector<double> values;  // per trial, in trial order
};

struct ExperimentOptions {
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  int workers = 1;
  std::size_t histogram_buckets = 20;
};

/// Trial i samples from RandomStream(seed, i); the summary is computed from
/// the trial-ordered values, so it does not depend on the worker count.
ExperimentSummary run_experiment(const ModelSpec& model, const StatisticSpec& statistic,
                                 const ExperimentOptions& options);

Histogram make_histogram(const std::vector<double>& values, std::size_t buckets);

struct ConcentrationReport {
  std::size_t trials = 0;
  std::size_t failures = 0;
  double failure_fraction = 0;
  double epsilon = 0;
  double threshold = 0;       // (1 - epsilon) * N / k
  std::size_t segment_length = 0;
};

/// Samples binomial words and checks that every letter occurs at least
/// (1 - eps) N / k times in each of the m segments of length N = floor(n/m),
/// with eps = k n^(-1/3) sqrt(2 ln n). Trailing n mod m letters are ignored.
ConcentrationReport concentration_check(int k, std::size_t n, std::size_t m, std::size_t trials,
                                        std::uint64_t seed);

}  // namespace twins
