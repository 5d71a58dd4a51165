#include "twins/enumerator.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <thread>

#include "twins/solver.hpp"

namespace twins {

namespace {

using Digits = std::vector<Letter>;

Digits first_occurrence(const Digits& w, int k) {
  std::vector<int> map(static_cast<std::size_t>(k), -1);
  int next = 0;
  Digits out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    int& m = map[w[i]];
    if (m < 0) m = next++;
    out[i] = static_cast<Letter>(m);
  }
  return out;
}

bool representative(const Digits& w, int k, Digits& scratch) {
  // First-occurrence form test without allocation.
  Letter seen = 0;
  for (Letter c : w) {
    if (c > seen) return false;
    if (c == seen) ++seen;
  }
  scratch.assign(w.rbegin(), w.rend());
  scratch = first_occurrence(scratch, k);
  return !std::lexicographical_compare(scratch.begin(), scratch.end(), w.begin(), w.end());
}

std::uint64_t orbit_size(const Digits& w, int k) {
  std::vector<bool> used(static_cast<std::size_t>(k), false);
  int distinct = 0;
  for (Letter c : w) {
    if (!used[c]) {
      used[c] = true;
      ++distinct;
    }
  }
  std::uint64_t size = 1;
  for (int i = 0; i < distinct; ++i) {
    const auto f = static_cast<std::uint64_t>(k - i);
    if (size > std::numeric_limits<std::uint64_t>::max() / f) {
      throw DomainError("orbit size exceeds 64 bits");
    }
    size *= f;
  }
  const Digits fwd = first_occurrence(w, k);
  const Digits bwd = first_occurrence(Digits(w.rbegin(), w.rend()), k);
  return fwd == bwd ? size : 2 * size;
}

void set_digits(Digits& d, std::uint64_t index, int k) {
  for (std::size_t i = d.size(); i-- > 0;) {
    d[i] = static_cast<Letter>(index % static_cast<std::uint64_t>(k));
    index /= static_cast<std::uint64_t>(k);
  }
}

void increment(Digits& d, int k) {
  for (std::size_t i = d.size(); i-- > 0;) {
    if (++d[i] < k) return;
    d[i] = 0;
  }
}

std::vector<std::uint64_t> count_range(int k, std::size_t s, int r, EnumerationMethod method,
                                       DecisionProcedure decision, std::uint64_t begin,
                                       std::uint64_t end) {
  std::vector<std::uint64_t> counts(s / static_cast<std::size_t>(r) + 1, 0);
  if (begin >= end) return counts;
  Digits d(s);
  Digits scratch;
  set_digits(d, begin, k);
  TwinSearch search;
  const Alphabet alphabet(k);
  for (std::uint64_t i = begin; i < end; ++i, increment(d, k)) {
    std::uint64_t weight = 1;
    if (method == EnumerationMethod::symmetry_reduced) {
      if (!representative(d, k, scratch)) continue;
      weight = orbit_size(d, k);
    }
    std::size_t t = 0;
    if (decision == DecisionProcedure::fast) {
      search.reset(d, r);
      t = s / static_cast<std::size_t>(r);
      while (t > 0 && !search.reaches(t)) --t;
    } else {
      t = longest_twins_oracle(Word(alphabet, d), r).length;
    }
    counts[t] += weight;
  }
  return counts;
}

void check_shape(int k, std::size_t s, int r) {
  if (k < 1) throw DomainError("alphabet size must be at least 1");
  if (s < 1) throw DomainError("word length must be at least 1");
  if (r < 2) throw DomainError("r must be at least 2");
}

}  // namespace

std::uint64_t LambdaTable::total() const {
  return std::accumulate(lambda.begin(), lambda.end(), std::uint64_t{0});
}

std::string RhoValue::unreduced() const { return numerator.str() + "/" + denominator.str(); }

std::uint64_t word_count(int k, std::size_t s) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < s; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(k)) {
      throw BudgetExceededError("k^s does not fit in 64 bits");
    }
    total *= static_cast<std::uint64_t>(k);
  }
  return total;
}

EnumerationProgress start_enumeration(int k, std::size_t s, const EnumerateOptions& options) {
  check_shape(k, s, options.r);
  const std::uint64_t total = word_count(k, s);
  if (total > options.word_budget) {
    throw BudgetExceededError("enumeration of " + std::to_string(total) +
                              " words exceeds the budget of " +
                              std::to_string(options.word_budget));
  }
  EnumerationProgress p;
  p.k = k;
  p.s = s;
  p.r = options.r;
  p.method = options.method;
  p.partial.assign(s / static_cast<std::size_t>(options.r) + 1, 0);
  return p;
}

EnumerationProgress advance_enumeration(EnumerationProgress progress, std::uint64_t end,
                                        const EnumerateOptions& options) {
  check_shape(progress.k, progress.s, progress.r);
  end = std::min(end, word_count(progress.k, progress.s));
  if (progress.partial.size() != progress.s / static_cast<std::size_t>(progress.r) + 1) {
    throw DomainError("progress record has the wrong number of counts");
  }
  const std::uint64_t begin = progress.next_word_index;
  if (begin >= end) return progress;

  const std::uint64_t span = end - begin;
  const auto workers = static_cast<std::uint64_t>(std::max(1, options.workers));
  const std::uint64_t used = std::min<std::uint64_t>(workers, span);
  std::vector<std::vector<std::uint64_t>> results(used);
  auto job = [&](std::uint64_t w) {
    const std::uint64_t a = begin + span * w / used;
    const std::uint64_t b = begin + span * (w + 1) / used;
    results[w] = count_range(progress.k, progress.s, progress.r, progress.method,
                             options.decision, a, b);
  };
  if (used == 1) {
    job(0);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(used);
    for (std::uint64_t w = 0; w < used; ++w) {
      threads.emplace_back([&, w] {
        try {
          job(w);
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
  for (const auto& r : results) {
    for (std::size_t t = 0; t < r.size(); ++t) progress.partial[t] += r[t];
  }
  progress.next_word_index = end;
  return progress;
}

LambdaTable finish_enumeration(const EnumerationProgress& progress) {
  if (progress.next_word_index != word_count(progress.k, progress.s)) {
    throw DomainError("enumeration is not complete");
  }
  return LambdaTable{progress.k, progress.s, progress.r, progress.partial, progress.method};
}

LambdaTable resume_lambda_table(EnumerationProgress progress, const EnumerateOptions& options) {
  const std::uint64_t total = word_count(progress.k, progress.s);
  if (total > options.word_budget) {
    throw BudgetExceededError("enumeration of " + std::to_string(total) +
                              " words exceeds the budget of " +
                              std::to_string(options.word_budget));
  }
  const std::uint64_t chunk = std::max<std::uint64_t>(1, options.chunk_words);
  while (progress.next_word_index < total) {
    const std::uint64_t end =
        progress.next_word_index + std::min(chunk, total - progress.next_word_index);
    progress = advance_enumeration(std::move(progress), end, options);
    if (options.on_progress) options.on_progress(progress);
  }
  return finish_enumeration(progress);
}

LambdaTable lambda_table(int k, std::size_t s, const EnumerateOptions& options) {
  return resume_lambda_table(start_enumeration(k, s, options), options);
}

RhoValue rho(const LambdaTable& table) {
  RhoValue out;
  out.s = table.s;
  for (std::size_t t = 0; t < table.lambda.size(); ++t) {
    out.numerator += BigInt(t) * BigInt(table.lambda[t]);
  }
  out.denominator = BigInt(table.s) * pow(BigInt(table.k), static_cast<unsigned>(table.s));
  out.value = Rational(out.numerator, out.denominator);
  return out;
}

std::uint64_t canonical_orbit_size(const Word& word) {
  const Digits d(word.letters().begin(), word.letters().end());
  return orbit_size(d, word.alphabet().size());
}

bool is_orbit_representative(const Word& word) {
  const Digits d(word.letters().begin(), word.letters().end());
  Digits scratch;
  return representative(d, word.alphabet().size(), scratch);
}

Word first_occurrence_form(const Word& word) {
  const Digits d(word.letters().begin(), word.letters().end());
  return Word(word.alphabet(), first_occurrence(d, word.alphabet().size()));
}

}  // namespace twins
