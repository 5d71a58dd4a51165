#pragma once

#include <cstddef>
#include <vector>

#include "twins/core.hpp"
#include "twins/rational.hpp"
#include "twins/solver.hpp"

namespace twins {

enum class SegmentSolver { exact, fast };

struct SegmentPlan {
  std::size_t segment_length = 0;
  std::size_t segment_count = 0;
  std::vector<SolveResult> per_segment;  // witnesses use segment-local positions
  TwinWitness witness;                   // concatenation on the whole word

  std::size_t length() const noexcept { return witness.length(); }
};

struct SegmentOptions {
  int r = 2;
  SegmentSolver solver = SegmentSolver::fast;
  int workers = 1;
};

/// Splits the word into floor(n/s) consecutive segments of length s (the
/// remainder is dropped), solves each one and concatenates the twins.
SegmentPlan segment_concat(const Word& word, std::size_t s, const SegmentOptions& options = {});

struct InterlaceResult {
  TwinWitness witness;
  std::size_t covered = 0;    // r * witness length
  std::size_t mu = 0;         // min letter count over segments
  std::size_t segment_length = 0;
};

/// Shifted interlacing over m segments of length floor(n/m). Twin l takes mu
/// copies of letter (j - l) mod r from segment j. Requires r >= k >= 2 and
/// m >= r.
InterlaceResult interlace(const Word& word, int r, std::size_t m);

/// Lower bound (m - r + 1) * k * mu on the positions covered by interlace.
std::size_t interlace_covered_bound(std::size_t m, int r, int k, std::size_t mu);

struct ProviderBins {
  std::vector<std::size_t> base_positions;  // 1-based, one per twin
  std::vector<std::size_t> ball_counts;     // run of new letters after each
  std::size_t provided = 0;                 // min of ball_counts
};

struct ProviderProfile {
  int r = 2;
  std::vector<ProviderBins> bins;  // one entry per twin element index

  std::size_t total_provided() const;
};

/// The extended word is over k+1 letters; the highest letter is the one being
/// inserted. baseWitness refers to positions of the word with that letter
/// deleted. Throws InvalidWitnessError when it does not verify there.
ProviderProfile provider_profile(const Word& extended, const TwinWitness& base);

/// Lengthens base by inserting, after each twin's l-th element, as many new
/// letters as the l-th provider offers in all r bins. Positions refer to the
/// extended word.
TwinWitness boost(const Word& extended, const TwinWitness& base);

enum class BaseSolverKind { segment_concat, interlace, lag_bounded, exact };

struct BaseSolver {
  BaseSolverKind kind = BaseSolverKind::lag_bounded;
  std::size_t segment_length = 14;   // segment_concat
  std::size_t segments = 10;         // interlace
  std::size_t max_lag = 8;           // lag_bounded
  SegmentSolver segment_solver = SegmentSolver::fast;
};

struct PipelineResult {
  TwinWitness base;      // on the restricted word
  TwinWitness witness;   // on the full word
  std::vector<std::size_t> length_after_step;  // base length, then after each insertion
};

/// Keeps letters 0..k'-1, solves there, then re-inserts k', k'+1, ... one at
/// a time, boosting after each insertion.
PipelineResult boost_pipeline(const Word& word, int start_alphabet, int r,
                              const BaseSolver& solver = {});

enum class BoostVariant { exact, weak };

/// Per-step multiplier of the boosting step from k to k+1 letters.
Rational theoretical_boost_factor(int k, int r, BoostVariant variant);

/// ratio * prod of factors for k = from .. to-1.
Rational iterated_boost_ratio(Rational start_ratio, int from, int to, int r, BoostVariant variant);

}  // namespace twins
