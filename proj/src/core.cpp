#include "twins/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

namespace twins {

Alphabet::Alphabet(int size) : size_(size) {
  if (size < 1) throw DomainError("alphabet size must be >= 1");
}

Word::Word(Alphabet alphabet, std::vector<Letter> letters)
    : alphabet_(alphabet), letters_(std::move(letters)) {
  for (Letter c : letters_) {
    if (c >= alphabet_.size()) {
      throw DomainError("letter " + std::to_string(c) +
                        " outside alphabet of size " +
                        std::to_string(alphabet_.size()));
    }
  }
}

Word Word::parse(std::string_view text, int k) {
  std::vector<Letter> letters;
  const bool numeric = text.find(',') != std::string_view::npos ||
                       (!text.empty() && std::isdigit(static_cast<unsigned char>(text.front())));
  if (numeric) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      std::string_view tok = text.substr(pos, comma - pos);
      while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
      while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
      unsigned value = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size() || value > 65535) {
        throw ParseError("bad letter token '" + std::string(tok) + "'");
      }
      letters.push_back(static_cast<Letter>(value));
      pos = comma + 1;
    }
  } else {
    for (char ch : text) {
      if (ch < 'a' || ch > 'z') {
        throw ParseError(std::string("bad letter '") + ch + "'");
      }
      letters.push_back(static_cast<Letter>(ch - 'a'));
    }
  }
  int inferred = 1;
  for (Letter c : letters) inferred = std::max(inferred, c + 1);
  if (k == 0) k = inferred;
  if (inferred > k) {
    throw ParseError("word uses letters outside an alphabet of size " + std::to_string(k));
  }
  return Word(Alphabet(k), std::move(letters));
}

std::string Word::to_string() const {
  std::string out;
  if (alphabet_.compact()) {
    out.reserve(letters_.size());
    for (Letter c : letters_) out.push_back(static_cast<char>('a' + c));
    return out;
  }
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(letters_[i]);
  }
  return out;
}

Word Word::reversed() const {
  return Word(alphabet_, std::vector<Letter>(letters_.rbegin(), letters_.rend()));
}

std::string_view to_string(WitnessReason reason) {
  switch (reason) {
    case WitnessReason::ok: return "ok";
    case WitnessReason::overlap: return "overlap";
    case WitnessReason::unequal_words: return "unequal-words";
    case WitnessReason::bad_indices: return "bad-indices";
  }
  return "unknown";
}

std::size_t LetterCounts::total() const noexcept {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

Word induced_subword(const Word& word, std::span<const std::size_t> indices) {
  std::vector<Letter> out;
  out.reserve(indices.size());
  std::size_t prev = 0;
  for (std::size_t idx : indices) {
    if (idx < 1 || idx > word.size()) {
      throw InvalidIndexError("position " + std::to_string(idx) + " outside 1.." +
                              std::to_string(word.size()));
    }
    if (idx <= prev) throw InvalidIndexError("positions must be strictly increasing");
    out.push_back(word[idx - 1]);
    prev = idx;
  }
  return Word(word.alphabet(), std::move(out));
}

VerifyResult verify_twins(const Word& word, const TwinWitness& witness) {
  VerifyResult bad{false, 0, WitnessReason::bad_indices};
  if (witness.r < 2 || witness.index_sets.size() != static_cast<std::size_t>(witness.r)) {
    return bad;
  }
  const std::size_t t = witness.index_sets.front().size();
  for (const auto& set : witness.index_sets) {
    if (set.size() != t) return bad;
    std::size_t prev = 0;
    for (std::size_t idx : set) {
      if (idx < 1 || idx > word.size() || idx <= prev) return bad;
      prev = idx;
    }
  }
  std::vector<char> used(word.size() + 1, 0);
  for (const auto& set : witness.index_sets) {
    for (std::size_t idx : set) {
      if (used[idx]) return {false, 0, WitnessReason::overlap};
      used[idx] = 1;
    }
  }
  const auto& first = witness.index_sets.front();
  for (const auto& set : witness.index_sets) {
    for (std::size_t q = 0; q < t; ++q) {
      if (word[set[q] - 1] != word[first[q] - 1]) {
        return {false, 0, WitnessReason::unequal_words};
      }
    }
  }
  return {true, t, WitnessReason::ok};
}

LetterCounts letter_counts(const Word& word) {
  LetterCounts lc{std::vector<std::size_t>(word.alphabet().size(), 0)};
  for (Letter c : word.letters()) ++lc.counts[c];
  return lc;
}

Word relabel(const Word& word, std::span<const Letter> perm) {
  std::vector<Letter> out(word.letters().begin(), word.letters().end());
  for (Letter& c : out) c = perm[c];
  return Word(word.alphabet(), std::move(out));
}

Word restrict_to_prefix_alphabet(const Word& word, int keep) {
  if (keep < 1) throw DomainError("restricted alphabet must keep at least one letter");
  std::vector<Letter> out;
  for (Letter c : word.letters()) {
    if (c < keep) out.push_back(c);
  }
  return Word(Alphabet(keep), std::move(out));
}

}  // namespace twins
