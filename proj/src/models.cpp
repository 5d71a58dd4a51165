#include "twins/models.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include <boost/math/distributions/chi_squared.hpp>

#include "twins/solver.hpp"

namespace twins {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_index)
    : seed_(seed), stream_(stream_index), key_(splitmix(splitmix(seed) ^ (stream_index * kGolden + 1))) {}

std::uint64_t RandomStream::next() { return splitmix(key_ + ++counter_ * kGolden); }

std::uint64_t RandomStream::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("bound must be positive");
  unsigned __int128 product = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t floor = (0 - bound) % bound;
    while (low < floor) {
      product = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

double RandomStream::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::size_t model_length(const ModelSpec& model) {
  if (const auto* b = std::get_if<BinomialModel>(&model)) return b->n;
  return std::get<FixedCountsModel>(model).counts.total();
}

int model_alphabet(const ModelSpec& model) {
  if (const auto* b = std::get_if<BinomialModel>(&model)) return b->k;
  return static_cast<int>(std::get<FixedCountsModel>(model).counts.counts.size());
}

Word sample_binomial(std::size_t n, int k, RandomStream& stream) {
  return sample_binomial_with(n, k, stream);
}

Word sample_fixed_counts(const LetterCounts& counts, RandomStream& stream) {
  return sample_fixed_counts_with(counts, stream);
}

Word insert_letter_phase2(const Word& base, std::size_t m, RandomStream& stream) {
  return insert_letter_phase2_with(base, m, stream);
}

Word sample(const ModelSpec& model, RandomStream& stream) {
  if (const auto* b = std::get_if<BinomialModel>(&model)) return sample_binomial(b->n, b->k, stream);
  return sample_fixed_counts(std::get<FixedCountsModel>(model).counts, stream);
}

std::uint64_t ChoiceEnumerator::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("bound must be positive");
  if (depth_ < path_.size()) {
    if (path_[depth_].second != bound) throw DomainError("sampler is not deterministic in its choices");
  } else {
    path_.emplace_back(0, bound);
  }
  return path_[depth_++].first;
}

Rational ChoiceEnumerator::probability() const {
  BigInt denominator = 1;
  for (std::size_t i = 0; i < depth_; ++i) denominator *= path_[i].second;
  return Rational(1, denominator);
}

bool ChoiceEnumerator::advance() {
  path_.resize(depth_);
  depth_ = 0;
  while (!path_.empty() && path_.back().first + 1 == path_.back().second) path_.pop_back();
  if (path_.empty()) return false;
  ++path_.back().first;
  return true;
}

Distribution exact_distribution(const std::function<Word(ChoiceEnumerator&)>& sampler) {
  Distribution out;
  ChoiceEnumerator choices;
  do {
    const Word w = sampler(choices);
    out[w.to_string()] += choices.probability();
  } while (choices.advance());
  return out;
}

Distribution multiset_uniform_distribution(const LetterCounts& counts) {
  std::vector<Letter> letters;
  for (std::size_t c = 0; c < counts.counts.size(); ++c) {
    letters.insert(letters.end(), counts.counts[c], static_cast<Letter>(c));
  }
  const Alphabet alphabet(static_cast<int>(counts.counts.size()));
  std::vector<std::string> words;
  do {
    words.push_back(Word(alphabet, letters).to_string());
  } while (std::next_permutation(letters.begin(), letters.end()));
  Distribution out;
  const Rational p(1, static_cast<long long>(words.size()));
  for (const auto& w : words) out[w] = p;
  return out;
}

Rational total_variation(const Distribution& a, const Distribution& b) {
  Rational sum = 0;
  for (const auto& [word, p] : a) {
    const auto it = b.find(word);
    const Rational diff = p - (it == b.end() ? Rational(0) : it->second);
    sum += diff < 0 ? Rational(-diff) : diff;
  }
  for (const auto& [word, q] : b) {
    if (!a.count(word)) sum += q;
  }
  return sum / 2;
}

ChiSquareResult chi_square(const std::map<std::string, std::uint64_t>& observed,
                           const Distribution& expected) {
  ChiSquareResult out;
  std::uint64_t n = 0;
  for (const auto& [word, count] : observed) {
    if (!expected.count(word)) return ChiSquareResult{0, 0, 0};
    n += count;
  }
  for (const auto& [word, p] : expected) {
    const double e = static_cast<double>(n) * p.convert_to<double>();
    const auto it = observed.find(word);
    const double o = it == observed.end() ? 0.0 : static_cast<double>(it->second);
    out.statistic += (o - e) * (o - e) / e;
  }
  out.degrees_of_freedom = expected.size() - 1;
  if (out.degrees_of_freedom == 0) return out;
  const boost::math::chi_squared dist(static_cast<double>(out.degrees_of_freedom));
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.statistic));
  return out;
}

std::string to_string(StatisticKind kind) {
  switch (kind) {
    case StatisticKind::segment_concat_ratio: return "segment_concat_ratio";
    case StatisticKind::boost_pipeline_ratio: return "boost_pipeline_ratio";
    case StatisticKind::fast_solver_ratio: return "fast_solver_ratio";
    case StatisticKind::interlace_ratio: return "interlace_ratio";
  }
  return "unknown";
}

StatisticKind parse_statistic(const std::string& name) {
  for (auto kind : {StatisticKind::segment_concat_ratio, StatisticKind::boost_pipeline_ratio,
                    StatisticKind::fast_solver_ratio, StatisticKind::interlace_ratio}) {
    if (to_string(kind) == name) return kind;
  }
  throw ParseError("unknown statistic: " + name);
}

double evaluate_statistic(const StatisticSpec& statistic, const Word& word) {
  if (word.empty()) return 0;
  std::size_t length = 0;
  switch (statistic.kind) {
    case StatisticKind::segment_concat_ratio:
      length = segment_concat(word, statistic.segment_length, SegmentOptions{statistic.r}).length();
      break;
    case StatisticKind::boost_pipeline_ratio:
      length = boost_pipeline(word, statistic.start_alphabet, statistic.r, statistic.base).witness.length();
      break;
    case StatisticKind::fast_solver_ratio:
      length = longest_twins_fast(word, statistic.r, FastOptions{statistic.max_lag}).length;
      break;
    case StatisticKind::interlace_ratio:
      length = interlace(word, statistic.r, statistic.segments).witness.length();
      break;
  }
  return static_cast<double>(length) / static_cast<double>(word.size());
}

Histogram make_histogram(const std::vector<double>& values, std::size_t buckets) {
  Histogram h;
  if (values.empty()) return h;
  h.lo = *std::min_element(values.begin(), values.end());
  h.hi = *std::max_element(values.begin(), values.end());
  if (h.hi == h.lo || buckets <= 1) {
    h.counts.assign(1, values.size());
    return h;
  }
  h.counts.assign(buckets, 0);
  for (double v : values) {
    auto b = static_cast<std::size_t>((v - h.lo) / (h.hi - h.lo) * static_cast<double>(buckets));
    ++h.counts[std::min(b, buckets - 1)];
  }
  return h;
}

ExperimentSummary run_experiment(const ModelSpec& model, const StatisticSpec& statistic,
                                 const ExperimentOptions& options) {
  if (options.trials < 1) throw DomainError("an experiment needs at least one trial");
  ExperimentSummary out;
  out.trials = options.trials;
  out.statistic = to_string(statistic.kind);
  out.values.assign(options.trials, 0.0);
  std::vector<std::exception_ptr> errors(options.trials);

  auto trial = [&](std::size_t i) {
    try {
      RandomStream stream(options.seed, i);
      out.values[i] = evaluate_statistic(statistic, sample(model, stream));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(1, options.workers)), options.trials);
  if (workers == 1) {
    for (std::size_t i = 0; i < options.trials; ++i) trial(i);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        for (std::size_t i = w; i < options.trials; i += workers) trial(i);
      });
    }
    for (auto& t : threads) t.join();
  }
  for (std::size_t i = 0; i < options.trials; ++i) {
    if (!errors[i]) continue;
    const std::string where = "trial " + std::to_string(i) + ": ";
    try {
      std::rethrow_exception(errors[i]);
    } catch (const BudgetExceededError& e) {
      throw BudgetExceededError(where + e.what());
    } catch (const std::exception& e) {
      throw Error(where + e.what());
    }
  }

  double sum = 0;
  for (double v : out.values) sum += v;
  out.mean = sum / static_cast<double>(options.trials);
  double squares = 0;
  for (double v : out.values) squares += (v - out.mean) * (v - out.mean);
  out.sd = options.trials > 1 ? std::sqrt(squares / static_cast<double>(options.trials - 1)) : 0.0;
  out.min = *std::min_element(out.values.begin(), out.values.end());
  out.max = *std::max_element(out.values.begin(), out.values.end());
  out.histogram = make_histogram(out.values, options.histogram_buckets);
  return out;
}

ConcentrationReport concentration_check(int k, std::size_t n, std::size_t m, std::size_t trials,
                                        std::uint64_t seed) {
  if (k < 1 || m < 1 || m > n) throw DomainError("need k >= 1 and 1 <= m <= n");
  ConcentrationReport out;
  out.trials = trials;
  out.segment_length = n / m;
  const double nd = static_cast<double>(n);
  out.epsilon = k * std::pow(nd, -1.0 / 3.0) * std::sqrt(2.0 * std::log(nd));
  out.threshold = (1.0 - out.epsilon) * static_cast<double>(out.segment_length) / k;
  std::vector<std::size_t> counts(static_cast<std::size_t>(k));
  for (std::size_t trial = 0; trial < trials; ++trial) {
    RandomStream stream(seed, trial);
    const Word w = sample_binomial(n, k, stream);
    bool failed = false;
    for (std::size_t j = 0; j < m && !failed; ++j) {
      std::fill(counts.begin(), counts.end(), 0);
      for (std::size_t i = j * out.segment_length; i < (j + 1) * out.segment_length; ++i) ++counts[w[i]];
      for (std::size_t c : counts) {
        if (static_cast<double>(c) < out.threshold) failed = true;
      }
    }
    out.failures += failed;
  }
  out.failure_fraction = trials == 0 ? 0.0 : static_cast<double>(out.failures) / static_cast<double>(trials);
  return out;
}

}  // namespace twins
