#include <cmath>
#include <set>

#include "doctest.h"
#include "twins/models.hpp"

using namespace twins;

namespace {

Word delete_letter(const Word& w, Letter c) {
  std::vector<Letter> kept;
  for (Letter x : w.letters()) {
    if (x != c) kept.push_back(x);
  }
  return Word(Alphabet(w.alphabet().size() - 1), kept);
}

std::string count_key(const Word& w) {
  std::string key;
  for (auto c : letter_counts(w).counts) key += std::to_string(c) + ",";
  return key;
}

// All count vectors with `letters` entries summing to at most `max_total`.
void count_vectors(std::size_t letters, std::size_t max_total, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == letters) {
    out.push_back(cur);
    return;
  }
  std::size_t used = 0;
  for (auto c : cur) used += c;
  for (std::size_t c = 0; used + c <= max_total; ++c) {
    cur.push_back(c);
    count_vectors(letters, max_total, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("random streams") {
  RandomStream a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  std::vector<std::uint64_t> va, vc, vd;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    va.push_back(x);
    vc.push_back(c.next());
    vd.push_back(d.next());
  }
  CHECK(va != vc);
  CHECK(va != vd);

  RandomStream e(1, 2);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    CHECK(e.below(7) < 7);
    const double u = e.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / 100000 - 0.5) < thresholds::frequency_tolerance);
  CHECK(e.below(1) == 0);
}

TEST_CASE("binomial sampler") {
  RandomStream s(7, 0);
  CHECK(sample_binomial(0, 3, s).empty());
  CHECK(sample_binomial(5, 1, s).to_string() == "aaaaa");

  std::map<std::string, std::uint64_t> seen;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) ++seen[sample_binomial(2, 2, s).to_string()];
  REQUIRE(seen.size() == 4);
  for (const auto& [w, count] : seen) {
    CHECK(std::abs(static_cast<double>(count) / trials - 0.25) <= thresholds::frequency_tolerance);
  }
  const auto uniform2 = exact_distribution([](ChoiceEnumerator& c) { return sample_binomial_with(2, 2, c); });
  CHECK(chi_square(seen, uniform2).p_value >= thresholds::chi_square_significance);

  // Letter counts against the multinomial law, n = 5, k = 3.
  std::map<std::string, std::uint64_t> count_classes;
  Distribution multinomial;
  const auto all = exact_distribution([](ChoiceEnumerator& c) { return sample_binomial_with(5, 3, c); });
  for (const auto& [w, p] : all) multinomial[count_key(Word::parse(w, 3))] += p;
  for (int i = 0; i < trials; ++i) ++count_classes[count_key(sample_binomial(5, 3, s))];
  CHECK(multinomial.size() == 21);
  CHECK(chi_square(count_classes, multinomial).p_value >= thresholds::chi_square_significance);
}

TEST_CASE("fixed-count sampler") {
  RandomStream s(9, 3);
  for (int i = 0; i < 10; ++i) CHECK(sample_fixed_counts(LetterCounts{{2, 0}}, s).to_string() == "aa");

  int ab = 0;
  for (int i = 0; i < 10000; ++i) ab += sample_fixed_counts(LetterCounts{{1, 1}}, s).to_string() == "ab";
  CHECK(std::abs(ab / 10000.0 - 0.5) <= thresholds::frequency_tolerance);

  for (int i = 0; i < 1000; ++i) {
    CHECK(letter_counts(sample_fixed_counts(LetterCounts{{2, 1, 1}}, s)).counts ==
          std::vector<std::size_t>{2, 1, 1});
  }

  const LetterCounts c{{3, 2, 1}};
  const auto exact = exact_distribution([&](ChoiceEnumerator& e) { return sample_fixed_counts_with(c, e); });
  CHECK(total_variation(exact, multiset_uniform_distribution(c)) == 0);
}

TEST_CASE("second-phase insertion") {
  RandomStream s(5, 5);
  const Word base = Word::parse("abcab");
  CHECK(insert_letter_phase2(base, 0, s).letters().size() == 5);
  CHECK(delete_letter(insert_letter_phase2(base, 0, s), 3) == base);
  for (int i = 0; i < 500; ++i) {
    const Word w = insert_letter_phase2(base, i % 7, s);
    CHECK(w.size() == 5 + i % 7);
    CHECK(delete_letter(w, 3) == base);
  }

  const Word ab = Word::parse("ab");
  const auto dist = exact_distribution([&](ChoiceEnumerator& e) { return insert_letter_phase2_with(ab, 1, e); });
  CHECK(dist == Distribution{{"abc", Rational(1, 3)}, {"acb", Rational(1, 3)}, {"cab", Rational(1, 3)}});
}

TEST_CASE("two-phase generation equals fixed-count sampling exactly up to length 6") {
  std::size_t checked = 0;
  for (std::size_t k = 1; k <= 3; ++k) {
    std::vector<std::vector<std::size_t>> vectors;
    std::vector<std::size_t> cur;
    count_vectors(k + 1, 6, cur, vectors);
    for (const auto& full : vectors) {
      const LetterCounts first{std::vector<std::size_t>(full.begin(), full.end() - 1)};
      const std::size_t m = full.back();
      const auto two_phase = exact_distribution([&](ChoiceEnumerator& e) {
        return insert_letter_phase2_with(sample_fixed_counts_with(first, e), m, e);
      });
      const auto direct = exact_distribution(
          [&](ChoiceEnumerator& e) { return sample_fixed_counts_with(LetterCounts{full}, e); });
      CHECK(total_variation(two_phase, direct) == 0);
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("two-phase generation passes chi-square at length 12") {
  const LetterCounts first{{8, 3}};
  const LetterCounts full{{8, 3, 1}};
  const Distribution uniform = multiset_uniform_distribution(full);
  CHECK(uniform.size() == 1980);
  std::map<std::string, std::uint64_t> two_phase, direct;
  RandomStream s(2024, 0);
  for (int i = 0; i < 100000; ++i) {
    ++two_phase[insert_letter_phase2(sample_fixed_counts(first, s), 1, s).to_string()];
    ++direct[sample_fixed_counts(full, s).to_string()];
  }
  CHECK(chi_square(two_phase, uniform).p_value >= thresholds::chi_square_significance);
  CHECK(chi_square(direct, uniform).p_value >= thresholds::chi_square_significance);

  // A biased sampler is rejected.
  std::map<std::string, std::uint64_t> biased = direct;
  biased[uniform.begin()->first] += 500;
  CHECK(chi_square(biased, uniform).p_value < thresholds::chi_square_significance);
}

TEST_CASE("experiments") {
  StatisticSpec fast;
  fast.kind = StatisticKind::fast_solver_ratio;
  const ModelSpec binary = BinomialModel{14, 2};
  const auto one = run_experiment(binary, fast, ExperimentOptions{1, 3, 1, 20});
  CHECK(one.min == one.mean);
  CHECK(one.max == one.mean);
  CHECK(one.sd == 0);

  const auto many = run_experiment(binary, fast, ExperimentOptions{200, 3, 1, 20});
  CHECK(many.mean >= 0.3);
  CHECK(many.mean <= 0.5);
  std::uint64_t mass = 0;
  for (auto c : many.histogram.counts) mass += c;
  CHECK(mass == 200);
  for (int workers : {2, 8}) {
    const auto again = run_experiment(binary, fast, ExperimentOptions{200, 3, workers, 20});
    CHECK(again.values == many.values);
    CHECK(again.mean == many.mean);
    CHECK(again.histogram.counts == many.histogram.counts);
  }

  StatisticSpec seg;
  const auto fixed = run_experiment(FixedCountsModel{LetterCounts{{20, 20, 20}}}, seg,
                                    ExperimentOptions{10, 1, 2, 5});
  CHECK(fixed.mean > 0.3);

  StatisticSpec inter;
  inter.kind = StatisticKind::interlace_ratio;
  inter.segments = 2;
  CHECK_THROWS_AS(run_experiment(BinomialModel{30, 3}, inter, ExperimentOptions{3, 1, 1, 5}), Error);
  CHECK(parse_statistic("boost_pipeline_ratio") == StatisticKind::boost_pipeline_ratio);
  CHECK_THROWS_AS(parse_statistic("nope"), ParseError);
}

TEST_CASE("concentration check") {
  const auto report = concentration_check(2, 10000, 22, 100, 17);
  CHECK(report.segment_length == 454);
  CHECK(report.failure_fraction < thresholds::concentration_failure_limit);
  CHECK_NOTHROW(concentration_check(2, 8, 2, 10, 1));
  CHECK(concentration_check(1, 1000, 10, 20, 1).failures == 0);
}
