#include "twins/solver.hpp"

#include <algorithm>
#include <array>
#include <cassert>

namespace twins {

namespace {

constexpr int kMaxFastClasses = 64;
constexpr std::size_t kMaxStoredLag = 255;

// Exhaustive search over rt-subsets and their balanced partitions. Partial
// partitions whose letters already disagree are abandoned early; this only
// skips partitions that could never be witnesses.
class OracleRun {
 public:
  OracleRun(const Word& word, int r, std::size_t t, const OracleOptions& options,
            bool stop_at_first)
      : word_(word),
        r_(r),
        t_(t),
        budget_(options.node_budget),
        stop_at_first_(stop_at_first),
        classes_(r),
        common_(t),
        owners_(t, 0) {}

  bool run() {
    const std::size_t n = word_.size();
    const std::size_t m = static_cast<std::size_t>(r_) * t_;
    if (m > n) return false;
    subset_.resize(m);
    for (std::size_t i = 0; i < m; ++i) subset_[i] = i;
    std::vector<std::size_t> letter_tally(word_.alphabet().size());
    while (true) {
      tick();
      std::fill(letter_tally.begin(), letter_tally.end(), 0);
      for (std::size_t pos : subset_) ++letter_tally[word_[pos]];
      const bool divisible = std::all_of(letter_tally.begin(), letter_tally.end(),
                                         [&](std::size_t c) { return c % r_ == 0; });
      if (divisible) {
        partition(0);
        if (abort_) return true;
      }
      // Next combination in lexicographic order.
      std::size_t i = m;
      while (i > 0 && subset_[i - 1] == n - m + (i - 1)) --i;
      if (i == 0) break;
      ++subset_[i - 1];
      for (std::size_t j = i; j < m; ++j) subset_[j] = subset_[j - 1] + 1;
    }
    return found_;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }

  TwinWitness witness() const {
    TwinWitness w = TwinWitness::empty(r_);
    for (std::size_t pos = 0; pos < best_labels_.size(); ++pos) {
      if (best_labels_[pos] < r_) w.index_sets[best_labels_[pos]].push_back(pos + 1);
    }
    return w;
  }

 private:
  void tick() {
    if (++nodes_ > budget_) {
      throw BudgetExceededError("oracle node budget of " + std::to_string(budget_) +
                                " exceeded");
    }
  }

  void partition(std::size_t idx) {
    tick();
    if (idx == subset_.size()) {
      record();
      return;
    }
    const std::size_t pos = subset_[idx];
    const Letter c = word_[pos];
    for (int j = 0; j < r_; ++j) {
      auto& cls = classes_[j];
      if (cls.size() == t_) continue;
      if (cls.empty() && j > 0 && classes_[j - 1].empty()) break;
      const std::size_t q = cls.size();
      if (owners_[q] > 0 && common_[q] != c) continue;
      if (owners_[q] == 0) common_[q] = c;
      ++owners_[q];
      cls.push_back(pos);
      partition(idx + 1);
      cls.pop_back();
      --owners_[q];
      if (abort_) return;
    }
  }

  void record() {
    std::vector<std::uint8_t> labels(word_.size(), static_cast<std::uint8_t>(r_));
    for (int j = 0; j < r_; ++j) {
      for (std::size_t pos : classes_[j]) labels[pos] = static_cast<std::uint8_t>(j);
    }
    if (!found_ || labels < best_labels_) best_labels_ = std::move(labels);
    found_ = true;
    if (stop_at_first_) abort_ = true;
  }

  const Word& word_;
  int r_;
  std::size_t t_;
  std::uint64_t budget_;
  bool stop_at_first_;
  std::uint64_t nodes_ = 0;
  std::vector<std::size_t> subset_;
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<Letter> common_;
  std::vector<int> owners_;
  bool found_ = false;
  bool abort_ = false;
  std::vector<std::uint8_t> best_labels_;
};

void check_r(int r) {
  if (r < 2) throw DomainError("r must be >= 2");
}

}  // namespace

SolveResult longest_twins_oracle(const Word& word, int r, const OracleOptions& options) {
  check_r(r);
  if (r > 255) throw DomainError("oracle supports r <= 255");
  SolveResult result{0, TwinWitness::empty(r), 0};
  OracleOptions remaining = options;
  for (std::size_t t = word.size() / r; t >= 1; --t) {
    OracleRun run(word, r, t, remaining, /*stop_at_first=*/false);
    const bool found = run.run();
    result.nodes_explored += run.nodes();
    remaining.node_budget -= std::min(remaining.node_budget, run.nodes());
    if (found) {
      result.length = t;
      result.witness = run.witness();
      return result;
    }
  }
  return result;
}

bool oracle_has_twins_of_length(const Word& word, std::size_t t, int r,
                                 const OracleOptions& options) {
  check_r(r);
  if (t == 0) return true;
  OracleRun run(word, r, t, options, /*stop_at_first=*/true);
  return run.run();
}

// ---------------------------------------------------------------------------
// TwinSearch

void TwinSearch::reset(std::span<const Letter> word, int r, std::size_t max_lag) {
  check_r(r);
  if (r > kMaxFastClasses) throw DomainError("fast solver supports r <= 64");
  if (max_lag > kMaxStoredLag) throw DomainError("lag bound must be <= 255");
  if (max_lag == 0 && word.size() > 2 * kMaxStoredLag + 1) {
    throw DomainError("exact search supports words of at most 511 letters; set a lag bound");
  }
  r_ = r;
  max_lag_ = max_lag;
  nodes_ = 0;

  std::vector<Letter> distinct(word.begin(), word.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() > 256) throw DomainError("fast solver supports at most 256 distinct letters");
  alphabet_ = std::max<int>(1, static_cast<int>(distinct.size()));
  word_.resize(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    word_[i] = static_cast<std::uint8_t>(
        std::lower_bound(distinct.begin(), distinct.end(), word[i]) - distinct.begin());
  }

  const std::size_t n = word_.size();
  suffix_counts_.assign((n + 1) * alphabet_, 0);
  for (std::size_t p = n; p-- > 0;) {
    std::copy_n(&suffix_counts_[(p + 1) * alphabet_], alphabet_, &suffix_counts_[p * alphabet_]);
    ++suffix_counts_[p * alphabet_ + word_[p]];
  }
  if (memo_.size() < n + 1) memo_.resize(n + 1);
  for (std::size_t p = 0; p <= n; ++p) memo_[p].clear();
}

void TwinSearch::decode_offsets(const std::string& state, int* offsets) const {
  offsets[0] = 0;
  for (int i = 1; i + 1 < r_; ++i) offsets[i] = static_cast<std::uint8_t>(state[i - 1]);
  offsets[r_ - 1] = pending_length(state);
}

int TwinSearch::bound(std::size_t p, const std::string& state) const {
  const int remaining = static_cast<int>(word_.size() - p);
  const int lag = pending_length(state);
  std::array<int, kMaxFastClasses> offs{};
  decode_offsets(state, offs.data());

  int offset_sum = 0;
  for (int i = 0; i < r_; ++i) offset_sum += offs[i];
  if (r_ * lag - offset_sum > remaining) return -1;

  // Letters still owed by the lagging twins to catch up with the leader.
  std::array<int, 256> owed;
  std::fill_n(owed.begin(), alphabet_, 0);
  const char* pending = state.data() + (r_ - 2);
  int behind = 0;  // number of twins whose offset is <= q
  for (int q = 0; q < lag; ++q) {
    while (behind < r_ && offs[behind] <= q) ++behind;
    owed[static_cast<std::uint8_t>(pending[q])] += behind;
  }
  const int* counts = &suffix_counts_[p * alphabet_];
  int fresh = 0;
  for (int c = 0; c < alphabet_; ++c) {
    if (counts[c] < owed[c]) return -1;
    fresh += (counts[c] - owed[c]) / r_;
  }
  const int ub = std::min(lag + fresh, (remaining + offset_sum) / r_);
  return ub < lag ? -1 : ub;
}

int TwinSearch::advance(const std::string& state, int slot, std::uint8_t c,
                        std::string& child) const {
  const int lag = pending_length(state);
  std::array<int, kMaxFastClasses> offs{};
  decode_offsets(state, offs.data());
  const char* pending = state.data() + (r_ - 2);

  child.clear();
  bool appended = false;
  if (offs[slot] < lag) {
    if (static_cast<std::uint8_t>(pending[offs[slot]]) != c) return -1;
  } else {
    const std::size_t cap = max_lag_ ? max_lag_ : kMaxStoredLag;
    if (static_cast<std::size_t>(lag) >= cap) return -1;
    appended = true;
  }
  ++offs[slot];
  const int gain = offs[0] >= 1 ? 1 : 0;
  for (int i = 1; i + 1 < r_; ++i) child.push_back(static_cast<char>(offs[i] - gain));
  child.append(pending + gain, pending + lag);
  if (appended) child.push_back(static_cast<char>(c));
  return gain;
}

int TwinSearch::search(std::size_t p, const std::string& state, int need) {
  if (p == word_.size()) return pending_length(state) == 0 ? 0 : -1;
  const int ub = bound(p, state);
  if (ub < 0 || ub < need) return ub;

  auto& table = memo_[p];
  if (auto it = table.find(state); it != table.end()) {
    if (it->second.exact || it->second.value < need) return it->second.value;
  }
  ++nodes_;

  const int lag = pending_length(state);
  std::array<int, kMaxFastClasses> offs{};
  decode_offsets(state, offs.data());
  const std::uint8_t c = word_[p];

  // Candidate slots: the last twin of each group sharing an offset. Twins
  // catching up come first (slot 0 yields an immediate gain), the leader
  // (appending a new common letter) after them, skipping last.
  std::array<int, kMaxFastClasses + 1> slots{};
  int slot_count = 0;
  for (int i = 0; i < r_; ++i) {
    if (i == r_ - 1 || offs[i] < offs[i + 1]) slots[slot_count++] = i;
  }
  slots[slot_count++] = -1;

  int best = -1;
  std::string child;
  for (int k = 0; k < slot_count; ++k) {
    const int slot = slots[k];
    int gain = 0;
    if (slot < 0) {
      child = state;
    } else {
      if (slot < r_ - 1 && offs[slot] >= lag) continue;
      gain = advance(state, slot, c, child);
      if (gain < 0) continue;
    }
    const int v = search(p + 1, child, std::max(need, best + 1) - gain);
    if (v >= 0 && v + gain > best) {
      best = v + gain;
      if (best >= ub) break;
    }
  }
  table[state] = Entry{best, best >= need || best < 0};
  return best;
}

bool TwinSearch::reaches(std::size_t t) {
  if (t == 0) return true;
  if (t > word_.size() / r_) return false;
  return search(0, std::string(r_ - 2, '\0'), static_cast<int>(t)) >= static_cast<int>(t);
}

std::size_t TwinSearch::longest() {
  return static_cast<std::size_t>(search(0, std::string(r_ - 2, '\0'), 0));
}

std::string TwinSearch::normalize(const std::vector<int>& counts,
                                  const std::vector<std::uint8_t>& common) const {
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  std::vector<int> offs(counts.size());
  for (std::size_t j = 0; j < counts.size(); ++j) offs[j] = counts[j] - *lo;
  std::sort(offs.begin(), offs.end());
  std::string state;
  for (int i = 1; i + 1 < r_; ++i) state.push_back(static_cast<char>(offs[i]));
  state.append(common.begin() + *lo, common.begin() + *hi);
  return state;
}

TwinWitness TwinSearch::witness(std::size_t t) {
  TwinWitness out = TwinWitness::empty(r_);
  if (t == 0) return out;
  if (!reaches(t)) throw DomainError("no twins of the requested length");

  std::vector<int> counts(r_, 0);
  std::vector<std::uint8_t> common;
  int remaining = static_cast<int>(t);
  const std::size_t cap = max_lag_ ? max_lag_ : kMaxStoredLag;
  for (std::size_t p = 0; p < word_.size(); ++p) {
    const std::uint8_t c = word_[p];
    const int lo = *std::min_element(counts.begin(), counts.end());
    const int hi = *std::max_element(counts.begin(), counts.end());
    for (int j = 0; j < r_; ++j) {
      if (counts[j] >= static_cast<int>(t)) continue;
      if (j > 0 && counts[j] == 0 && counts[j - 1] == 0) break;
      const bool append = counts[j] == hi;
      if (!append && common[counts[j]] != c) continue;
      if (append && static_cast<std::size_t>(hi + 1 - lo) > cap) continue;
      ++counts[j];
      if (append) common.push_back(c);
      const int gain = *std::min_element(counts.begin(), counts.end()) - lo;
      if (search(p + 1, normalize(counts, common), remaining - gain) >= remaining - gain) {
        remaining -= gain;
        out.index_sets[j].push_back(p + 1);
        break;
      }
      --counts[j];
      if (append) common.pop_back();
    }
  }
  assert(remaining == 0);
  return out;
}

// ---------------------------------------------------------------------------

SolveResult longest_twins_fast(const Word& word, int r, const FastOptions& options) {
  TwinSearch search;
  search.reset(word.letters(), r, options.max_lag);
  SolveResult result;
  result.length = search.longest();
  result.witness = search.witness(result.length);
  result.nodes_explored = search.nodes();
  return result;
}

bool has_twins_of_length(const Word& word, std::size_t t, int r) {
  check_r(r);
  TwinSearch search;
  search.reset(word.letters(), r);
  return search.reaches(t);
}

}  // namespace twins
