#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace twins {

// Error hierarchy. Every failure the library reports derives from Error so
// callers (the CLI in particular) can map categories onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidIndexError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// A supplied witness failed verification where a valid one was required.
class InvalidWitnessError : public Error {
 public:
  using Error::Error;
};

using Letter = std::uint16_t;

/// Finite alphabet {0, ..., size-1}; letters display as a, b, c, ... for
/// size <= 26 and as decimal integers otherwise.
class Alphabet {
 public:
  explicit Alphabet(int size);

  int size() const noexcept { return size_; }
  bool compact() const noexcept { return size_ <= 26; }

  friend bool operator==(Alphabet, Alphabet) = default;

 private:
  int size_;
};

/// Immutable word over an alphabet. Positions are 0-based internally; every
/// external format (witnesses, CLI, JSON) uses 1-based positions.
class Word {
 public:
  Word(Alphabet alphabet, std::vector<Letter> letters);
  explicit Word(Alphabet alphabet) : alphabet_(alphabet) {}

  /// Parses "abca" style text (k <= 26) or "0,1,2,0" style text. When k is 0
  /// the alphabet size is inferred as max letter + 1.
  static Word parse(std::string_view text, int k = 0);

  Alphabet alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const noexcept { return letters_[i]; }
  std::span<const Letter> letters() const noexcept { return letters_; }

  std::string to_string() const;
  Word reversed() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  Alphabet alphabet_;
  std::vector<Letter> letters_;
};

/// r pairwise-disjoint increasing sequences of 1-based positions.
struct TwinWitness {
  int r = 2;
  std::vector<std::vector<std::size_t>> index_sets;

  static TwinWitness empty(int r) {
    return TwinWitness{r, std::vector<std::vector<std::size_t>>(r)};
  }
  std::size_t length() const noexcept {
    return index_sets.empty() ? 0 : index_sets.front().size();
  }

  friend bool operator==(const TwinWitness&, const TwinWitness&) = default;
};

enum class WitnessReason { ok, overlap, unequal_words, bad_indices };

std::string_view to_string(WitnessReason reason);

struct VerifyResult {
  bool valid = false;
  std::size_t length = 0;
  WitnessReason reason = WitnessReason::bad_indices;
};

struct LetterCounts {
  std::vector<std::size_t> counts;

  std::size_t total() const noexcept;
  friend bool operator==(const LetterCounts&, const LetterCounts&) = default;
};

/// Letters at the given 1-based, strictly increasing positions.
Word induced_subword(const Word& word, std::span<const std::size_t> indices);

VerifyResult verify_twins(const Word& word, const TwinWitness& witness);

LetterCounts letter_counts(const Word& word);

/// Applies a letter bijection (perm[old] = new) to every position.
Word relabel(const Word& word, std::span<const Letter> perm);

/// Deletes every letter >= keep, returning a word over {0..keep-1}.
Word restrict_to_prefix_alphabet(const Word& word, int keep);

}  // namespace twins
