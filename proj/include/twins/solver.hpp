#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "twins/core.hpp"

namespace twins {

struct SolveResult {
  std::size_t length = 0;
  TwinWitness witness;
  std::uint64_t nodes_explored = 0;
};

struct OracleOptions {
  // Counts visited position subsets plus partition-search nodes.
  std::uint64_t node_budget = 1'000'000'000ULL;
};

struct FastOptions {
  // Maximum distance (in letters of the common subword) between the most
  // advanced and the least advanced twin. 0 means unbounded, which makes the
  // search exact.
  std::size_t max_lag = 0;
};

// Witness tie-breaking shared by both solvers: twins are numbered by their
// first position, every position gets a label (twin number, or "unused"
// ranked after all twins), and among maximum-length witnesses the one with
// the lexicographically smallest label sequence is returned.

/// Exhaustive reference procedure: for t from floor(n/r) down, tries every
/// rt-subset of positions and every balanced partition into r classes.
SolveResult longest_twins_oracle(const Word& word, int r, const OracleOptions& options = {});

/// Decision form of the reference procedure (does w contain r-twins of
/// length t?). Stops at the first witness.
bool oracle_has_twins_of_length(const Word& word, std::size_t t, int r,
                                 const OracleOptions& options = {});

/// Exact (or lag-bounded, see FastOptions) maximum r-twins.
SolveResult longest_twins_fast(const Word& word, int r, const FastOptions& options = {});

bool has_twins_of_length(const Word& word, std::size_t t, int r);

/// Reusable search engine behind longest_twins_fast. One instance may be
/// reset onto many words to amortize allocations; not thread-safe.
///
/// The search scans positions left to right and assigns each one to nothing
/// or to one twin. Twins are interchangeable, so the state after a prefix is
/// the common-word suffix that the leading twin has emitted but the lagging
/// one has not ("pending"), plus every twin's offset into it. Values are
/// memoized per (position, state) with fail-low upper bounds, and children
/// are cut by an admissible bound on the remaining gain.
class TwinSearch {
 public:
  TwinSearch() = default;

  void reset(std::span<const Letter> word, int r, std::size_t max_lag = 0);

  /// True iff r-twins of length t exist (within the lag bound).
  bool reaches(std::size_t t);
  std::size_t longest();
  /// Tie-broken witness of exactly length t; requires reaches(t).
  TwinWitness witness(std::size_t t);

  std::uint64_t nodes() const noexcept { return nodes_; }

 private:
  struct Entry {
    int value;
    bool exact;
  };

  int search(std::size_t p, const std::string& state, int need);
  int bound(std::size_t p, const std::string& state) const;
  int pending_length(const std::string& state) const {
    return static_cast<int>(state.size()) - (r_ - 2);
  }
  void decode_offsets(const std::string& state, int* offsets) const;
  // Assign position p (letter c) to sorted-offset slot i. Returns gain or -1.
  int advance(const std::string& state, int slot, std::uint8_t c, std::string& child) const;
  std::string normalize(const std::vector<int>& counts, const std::vector<std::uint8_t>& common) const;

  std::vector<std::uint8_t> word_;
  int alphabet_ = 0;
  int r_ = 2;
  std::size_t max_lag_ = 0;
  std::vector<int> suffix_counts_;  // (n+1) x alphabet_
  std::vector<std::unordered_map<std::string, Entry>> memo_;
  std::uint64_t nodes_ = 0;
};

}  // namespace twins
