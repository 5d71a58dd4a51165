#include <cstdlib>

#include "cli_harness.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "twins/enumerator.hpp"
#include "twins/io.hpp"

using namespace twins;
using twins::testing::run_cli;
using twins::testing::scratch_dir;
using twins::testing::write_text;

TEST_CASE("solve") {
  auto res = run_cli({"solve", "--word", "aabb", "--r", "2"});
  CHECK(res.code == 0);
  CHECK(Json::parse(res.out).at("length") == 2);

  res = run_cli({"solve", "--word", "abc", "--r", "2", "--mode", "oracle"});
  CHECK(res.code == 0);
  CHECK(Json::parse(res.out).at("length") == 0);

  res = run_cli({"solve", "--word", fixtures::kBoostingExampleWord, "--r", "3"});
  CHECK(res.code == 0);
  const Json json = Json::parse(res.out);
  CHECK(json.at("length").get<int>() >= 5);
  const Word w = Word::parse(fixtures::kBoostingExampleWord);
  CHECK(verify_twins(w, witness_from_json(json.at("witness"))).valid);

  CHECK(run_cli({"solve", "--word", "abX"}).code == 2);
  CHECK(run_cli({"solve"}).code == 2);
  CHECK(run_cli({"solve", "--word", "abcdefghijklmnopqrst", "--mode", "oracle", "--budget", "1000"}).code == 3);
  CHECK(run_cli({"nonsense"}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("enumerate") {
  auto res = run_cli({"enumerate", "--k", "3", "--s", "6"});
  CHECK(res.code == 0);
  CHECK(res.out ==
        "k,s,t,lambda\n3,6,0,0\n3,6,1,42\n3,6,2,594\n3,6,3,93\n\n"
        "rho_unreduced,rho_reduced,rho_decimal\n1509/4374,503/1458,0.344993\n");

  res = run_cli({"enumerate", "--k", "1", "--s", "4"});
  CHECK(res.out.find("1,4,2,1\n") != std::string::npos);

  CHECK(run_cli({"enumerate", "--k", "3", "--s", "11"}).code == 3);
  CHECK(run_cli({"enumerate", "--k", "3", "--s", "6", "--method", "full"}).out ==
        run_cli({"enumerate", "--k", "3", "--s", "6"}).out);
  CHECK(run_cli({"enumerate", "--k", "3"}).code == 2);
}

TEST_CASE("enumerate resumes from a checkpoint") {
  const auto dir = scratch_dir("checkpoint");
  const std::string path = (dir / "progress.json").string();
  const auto fresh = run_cli({"enumerate", "--k", "3", "--s", "9"});

  EnumerateOptions opts;
  opts.method = EnumerationMethod::symmetry_reduced;
  auto partial = advance_enumeration(start_enumeration(3, 9, opts), 5000, opts);
  write_text(path, progress_to_json(partial).dump());
  const auto resumed = run_cli({"enumerate", "--k", "3", "--s", "9", "--checkpoint", path, "--chunk", "1000"});
  CHECK(resumed.code == 0);
  CHECK(resumed.out == fresh.out);
  std::ifstream saved(path);
  CHECK(progress_from_json(Json::parse(saved)).next_word_index == 19683);

  write_text(path, progress_to_json(partial).dump());
  CHECK(run_cli({"enumerate", "--k", "3", "--s", "8", "--checkpoint", path}).code == 2);
  write_text(path, "{\"k\": 3,");
  CHECK(run_cli({"enumerate", "--k", "3", "--s", "9", "--checkpoint", path}).code == 2);
}

TEST_CASE("bounds") {
  auto res = run_cli({"bounds", "--table", "1"});
  CHECK(res.code == 0);
  std::istringstream lines(res.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "name,r,k,coefficient,rendered");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 16);

  res = run_cli({"bounds", "--name", "pi", "--r", "3", "--k", "4"});
  CHECK(res.out.substr(res.out.rfind(',') + 1) == "1.016\n");
  res = run_cli({"bounds", "--name", "pi", "--r", "2", "--k", "2"});
  CHECK(res.out.substr(res.out.rfind(',') + 1) == "1.000\n");
  res = run_cli({"bounds", "--name", "bzr", "--r", "4", "--k", "10000000000000000000000000000000000000000"});
  CHECK(res.out.substr(res.out.rfind(',') + 1) == "1.878\n");

  res = run_cli({"bounds", "--crossover", "thm12", "bz2", "--limit", "10000"});
  CHECK(res.out == "a,b,r,k,limit,hit_limit\nthm12,bz2,2,354,10000,false\n");
  res = run_cli({"bounds", "--binom", "100", "50", "1"});
  CHECK(res.code == 0);

  CHECK(run_cli({"bounds", "--name", "nope", "--k", "3"}).code == 2);
  CHECK(run_cli({"bounds", "--table", "3"}).code == 2);
  CHECK(run_cli({"bounds"}).code == 2);
  CHECK(run_cli({"bounds", "--name", "pi", "--r", "3", "--k", "2"}).code == 2);
}

TEST_CASE("verify") {
  const auto dir = scratch_dir("verify");
  const std::string good = write_text(dir / "good.json", witness_to_json(fixtures::boosting_example_witness()).dump());
  auto res = run_cli({"verify", "--word", fixtures::kBoostingExampleWord, "--witness", good});
  CHECK(res.code == 0);
  CHECK(Json::parse(res.out).at("length") == 5);

  const std::string overlap = write_text(dir / "overlap.json", "{\"r\": 2, \"index_sets\": [[1], [1]]}");
  res = run_cli({"verify", "--word", "ab", "--witness", overlap});
  CHECK(res.code == 1);
  CHECK(Json::parse(res.out).at("reason") == "overlap");

  const std::string truncated = write_text(dir / "truncated.json", "{\"r\": 2, \"index_sets\": [[1]");
  CHECK(run_cli({"verify", "--word", "ab", "--witness", truncated}).code == 2);
  CHECK(run_cli({"verify", "--word", "ab", "--witness", (dir / "missing.json").string()}).code == 2);
}

TEST_CASE("construct") {
  auto res = run_cli({"construct", "--method", "segment_concat", "--word", "aabbabccacca", "--s", "6"});
  CHECK(res.code == 0);
  CHECK(Json::parse(res.out).at("valid") == true);

  std::string ab;
  for (int i = 0; i < 50; ++i) ab += "ab";
  res = run_cli({"construct", "--method", "interlace", "--word", ab, "--m", "10"});
  const Json inter = Json::parse(res.out);
  CHECK(inter.at("covered").get<int>() >= 90);
  CHECK(inter.at("valid") == true);

  const auto dir = scratch_dir("construct");
  const std::string base = write_text(dir / "base.json", witness_to_json(fixtures::boosting_example_witness()).dump());
  res = run_cli({"construct", "--method", "boost", "--word", fixtures::kBoostingExampleExtended, "--base-witness", base});
  CHECK(res.code == 0);
  CHECK(Json::parse(res.out).at("length") == 6);

  res = run_cli({"construct", "--method", "pipeline", "--random", "300", "--k", "3", "--seed", "5"});
  CHECK(res.code == 0);
  CHECK(Json::parse(res.out).at("valid") == true);

  const std::string bad = write_text(dir / "bad.json", "{\"r\": 2, \"index_sets\": [[1], [1]]}");
  CHECK(run_cli({"construct", "--method", "boost", "--word", "abab", "--base-witness", bad}).code == 1);
  CHECK(run_cli({"construct", "--method", "nope", "--word", "ab"}).code == 2);
}

TEST_CASE("simulate and worker independence") {
  const auto dir = scratch_dir("simulate");
  const std::string cfg = write_text(dir / "cfg.json", R"({
    "model": {"type": "binomial", "n": 140, "k": 3},
    "statistic": {"name": "segment_concat_ratio", "segment_length": 14},
    "trials": 12, "seed": 9})");
  const auto one = run_cli({"simulate", "--config", cfg, "--workers", "1", "--out-dir", (dir / "out").string(), "--svg"});
  CHECK(one.code == 0);
  CHECK(Json::parse(one.out).at("trials") == 12);
  CHECK(std::filesystem::exists(dir / "out" / "histogram.svg"));
  CHECK(std::filesystem::exists(dir / "out" / "histogram.csv"));
  for (const char* w : {"2", "8"}) CHECK(run_cli({"simulate", "--config", cfg, "--workers", w}).out == one.out);
  CHECK(run_cli({"simulate", "--config", cfg, "--seed", "10"}).out != one.out);

  const std::string smoke = write_text(dir / "smoke.json", R"({
    "model": {"type": "fixed_counts", "counts": [5, 5]},
    "statistic": {"name": "fast_solver_ratio"}, "trials": 1})");
  const Json s = Json::parse(run_cli({"simulate", "--config", smoke}).out);
  CHECK(s.at("min") == s.at("max"));

  const std::string broken = write_text(dir / "broken.json", R"({"model": {"type": "nope"}, "trials": 1})");
  CHECK(run_cli({"simulate", "--config", broken}).code == 2);
}

TEST_CASE("thread override from the environment") {
  setenv("TWINS_THREADS", "abc", 1);
  CHECK(run_cli({"enumerate", "--k", "2", "--s", "4"}).code == 2);
  setenv("TWINS_THREADS", "3", 1);
  CHECK(run_cli({"enumerate", "--k", "3", "--s", "6", "--workers", "1"}).out ==
        run_cli({"enumerate", "--k", "3", "--s", "6"}).out);
  unsetenv("TWINS_THREADS");
}
