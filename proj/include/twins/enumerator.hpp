#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "twins/core.hpp"
#include "twins/rational.hpp"

namespace twins {

enum class EnumerationMethod { full, symmetry_reduced };

enum class DecisionProcedure { fast, oracle };

/// lambda[t] = number of k-ary words of length s whose longest r-twins have
/// length exactly t, for t = 0..floor(s/r). lambda[0] is kept explicitly.
struct LambdaTable {
  int k = 3;
  std::size_t s = 0;
  int r = 2;
  std::vector<std::uint64_t> lambda;
  EnumerationMethod method = EnumerationMethod::full;

  std::uint64_t total() const;
  friend bool operator==(const LambdaTable& a, const LambdaTable& b) {
    return a.k == b.k && a.s == b.s && a.r == b.r && a.lambda == b.lambda;
  }
};

struct RhoValue {
  std::size_t s = 0;
  BigInt numerator;    // sum of t * lambda_t
  BigInt denominator;  // s * k^s
  Rational value;

  std::string decimal(int places = 6) const { return render_fixed(value, places); }
  std::string unreduced() const;
};

/// Words of length s are visited as base-k integers; an interrupted run is
/// described completely by the next index and the counts gathered so far.
struct EnumerationProgress {
  int k = 3;
  std::size_t s = 0;
  int r = 2;
  EnumerationMethod method = EnumerationMethod::full;
  std::uint64_t next_word_index = 0;
  std::vector<std::uint64_t> partial;
};

struct EnumerateOptions {
  EnumerationMethod method = EnumerationMethod::full;
  DecisionProcedure decision = DecisionProcedure::fast;
  int r = 2;
  int workers = 1;
  // Refuse runs with more than this many words (3^10 by default).
  std::uint64_t word_budget = 59049;
  // Words handed to the workers between two progress callbacks.
  std::uint64_t chunk_words = 1u << 20;
  std::function<void(const EnumerationProgress&)> on_progress;
};

/// Number of words k^s, or throws BudgetExceededError when it does not fit
/// in 64 bits.
std::uint64_t word_count(int k, std::size_t s);

EnumerationProgress start_enumeration(int k, std::size_t s, const EnumerateOptions& options);

/// Processes words [progress.next_word_index, end) and returns the updated
/// progress. Result is independent of options.workers.
EnumerationProgress advance_enumeration(EnumerationProgress progress, std::uint64_t end,
                                        const EnumerateOptions& options);

LambdaTable finish_enumeration(const EnumerationProgress& progress);

/// Full run: start, advance in chunks (reporting progress), finish.
LambdaTable lambda_table(int k, std::size_t s, const EnumerateOptions& options = {});

/// Resumes from a saved progress record.
LambdaTable resume_lambda_table(EnumerationProgress progress, const EnumerateOptions& options);

RhoValue rho(const LambdaTable& table);

/// Size of the orbit of the word under letter permutations combined with
/// reversal.
std::uint64_t canonical_orbit_size(const Word& word);

/// True when the word is the lexicographically smallest member of its orbit.
bool is_orbit_representative(const Word& word);

/// Relabels letters in order of first occurrence (0, 1, 2, ...).
Word first_occurrence_form(const Word& word);

}  // namespace twins
