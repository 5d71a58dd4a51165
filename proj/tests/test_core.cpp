#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "twins/core.hpp"

using namespace twins;

TEST_CASE("word parsing and printing") {
  const Word w = Word::parse("abba");
  CHECK(w.size() == 4);
  CHECK(w.alphabet().size() == 2);
  CHECK(w.to_string() == "abba");

  const Word wide = Word::parse("0,27,3", 30);
  CHECK(wide.alphabet().size() == 30);
  CHECK(wide.to_string() == "0,27,3");
  CHECK(Word::parse("2,0,1").to_string() == "cab");

  CHECK_THROWS_AS(Word::parse("abX"), ParseError);
  CHECK_THROWS_AS(Word::parse("1,,2"), ParseError);
  CHECK_THROWS_AS(Word::parse("abc", 2), ParseError);
  CHECK_THROWS_AS(Word(Alphabet(2), {0, 2}), DomainError);
  CHECK_THROWS_AS(Alphabet(0), DomainError);
}

TEST_CASE("induced_subword") {
  const Word w = Word::parse("abba");
  const std::vector<std::size_t> ends{1, 4};
  CHECK(induced_subword(w, ends).to_string() == "aa");
  CHECK(induced_subword(w, {}).empty());

  const Word example = Word::parse(fixtures::kBoostingExampleWord, 3);
  const std::vector<std::size_t> first_twin{2, 3, 8, 11, 19};
  CHECK(induced_subword(example, first_twin).to_string() == "aabcc");

  const std::vector<std::size_t> out_of_range{0, 2};
  const std::vector<std::size_t> descending{3, 2};
  const std::vector<std::size_t> too_far{5};
  CHECK_THROWS_AS(induced_subword(w, out_of_range), InvalidIndexError);
  CHECK_THROWS_AS(induced_subword(w, descending), InvalidIndexError);
  CHECK_THROWS_AS(induced_subword(w, too_far), InvalidIndexError);
}

TEST_CASE("verify_twins reason codes") {
  const Word aa = Word::parse("aa");
  auto ok = verify_twins(aa, TwinWitness{2, {{1}, {2}}});
  CHECK(ok.valid);
  CHECK(ok.length == 1);
  CHECK(ok.reason == WitnessReason::ok);

  const Word ab = Word::parse("ab");
  CHECK(verify_twins(ab, TwinWitness{2, {{1}, {1}}}).reason == WitnessReason::overlap);
  CHECK(verify_twins(ab, TwinWitness{2, {{1}, {2}}}).reason == WitnessReason::unequal_words);
  CHECK(verify_twins(ab, TwinWitness{2, {{1}, {3}}}).reason == WitnessReason::bad_indices);
  CHECK(verify_twins(ab, TwinWitness{2, {{1}, {}}}).reason == WitnessReason::bad_indices);
  CHECK(verify_twins(ab, TwinWitness{3, {{1}, {2}}}).reason == WitnessReason::bad_indices);
  CHECK(verify_twins(Word::parse("abab"), TwinWitness{2, {{2, 1}, {3, 4}}}).reason ==
        WitnessReason::bad_indices);

  const Word example = Word::parse(fixtures::kBoostingExampleWord, 3);
  auto r = verify_twins(example, fixtures::boosting_example_witness());
  CHECK(r.valid);
  CHECK(r.length == 5);

  CHECK(verify_twins(Word(Alphabet(2)), TwinWitness::empty(2)).valid);
}

TEST_CASE("letter_counts") {
  CHECK(letter_counts(Word::parse("aabc", 3)).counts == std::vector<std::size_t>{2, 1, 1});
  CHECK(letter_counts(Word(Alphabet(3))).counts == std::vector<std::size_t>{0, 0, 0});
  // Read off the printed example word: nine of each letter.
  const auto lc = letter_counts(Word::parse(fixtures::kBoostingExampleWord, 3));
  CHECK(lc.counts == std::vector<std::size_t>{9, 9, 9});
  CHECK(lc.total() == 27);
}

TEST_CASE("verify_twins properties on random witnesses") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 500; ++trial) {
    const int k = 2 + static_cast<int>(gen() % 3);
    const std::size_t n = gen() % 16;
    std::vector<Letter> letters(n);
    for (auto& c : letters) c = static_cast<Letter>(gen() % k);
    const Word w(Alphabet(k), letters);

    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 1);
    CHECK(induced_subword(w, all) == w);

    // Random r index sets of equal length from a shuffled position pool.
    const int r = 2 + static_cast<int>(gen() % 2);
    std::shuffle(all.begin(), all.end(), gen);
    const std::size_t t = n / r == 0 ? 0 : gen() % (n / r + 1);
    TwinWitness x{r, {}};
    for (int j = 0; j < r; ++j) {
      std::vector<std::size_t> set(all.begin() + j * t, all.begin() + (j + 1) * t);
      std::sort(set.begin(), set.end());
      x.index_sets.push_back(set);
    }
    const auto base = verify_twins(w, x);
    if (base.valid) CHECK(base.length * r <= n);

    TwinWitness permuted = x;
    std::reverse(permuted.index_sets.begin(), permuted.index_sets.end());
    CHECK(verify_twins(w, permuted).valid == base.valid);

    std::vector<Letter> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    CHECK(verify_twins(relabel(w, perm), x).valid == base.valid);
  }
}
