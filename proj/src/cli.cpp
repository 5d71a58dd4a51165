#include "twins/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "twins/bounds.hpp"
#include "twins/constructions.hpp"
#include "twins/enumerator.hpp"
#include "twins/io.hpp"
#include "twins/models.hpp"
#include "twins/solver.hpp"

namespace twins::cli {

namespace {

struct Global {
  std::uint64_t seed = 1;
  int workers = 0;  // 0 = not given
  bool seed_given = false;
};

int resolve_workers(const Global& g) {
  if (const char* env = std::getenv("TWINS_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw ParseError("TWINS_THREADS must be a positive integer");
    return static_cast<int>(v);
  }
  if (g.workers > 0) return g.workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

struct WordSource {
  std::string text;
  std::string file;
  std::size_t random_n = 0;
  int k = 0;

  void add(CLI::App* cmd, bool allow_random) {
    cmd->add_option("--word", text, "Word as letters (abc...) or comma-separated integers");
    cmd->add_option("--file", file, "File holding the word");
    cmd->add_option("--k", k, "Alphabet size (default: largest letter + 1)");
    if (allow_random) cmd->add_option("--random", random_n, "Sample a uniform word of this length (needs --k)");
  }

  Word load(std::uint64_t seed) const {
    const int given = (!text.empty()) + (!file.empty()) + (random_n > 0);
    if (given != 1) throw ParseError("give exactly one of --word, --file or --random");
    if (random_n > 0) {
      if (k < 1) throw ParseError("--random needs --k");
      RandomStream stream(seed, 0);
      return sample_binomial(random_n, k, stream);
    }
    return Word::parse(trim(text.empty() ? read_file(file) : text), k);
  }
};

void print_json(std::ostream& out, const Json& json) { out << json.dump(2) << '\n'; }

int cmd_solve(const WordSource& src, int r, const std::string& mode, std::size_t max_lag,
              std::uint64_t budget, const Global& g, std::ostream& out) {
  const Word w = src.load(g.seed);
  SolveResult res;
  if (mode == "oracle") {
    res = longest_twins_oracle(w, r, OracleOptions{budget});
  } else if (mode == "fast") {
    res = longest_twins_fast(w, r, FastOptions{max_lag});
  } else {
    throw ParseError("--mode must be oracle or fast");
  }
  Json json{{"word", w.to_string()}, {"r", r}, {"mode", mode}};
  if (mode == "fast" && max_lag > 0) json["max_lag"] = max_lag;
  json["length"] = res.length;
  json["witness"] = witness_to_json(res.witness);
  print_json(out, json);
  return ok;
}

struct EnumerateArgs {
  int k = 3;
  std::size_t s = 0;
  int r = 2;
  bool extended = false;
  std::string checkpoint;
  std::string method = "symmetry";
  std::string decision = "fast";
  std::uint64_t chunk = 1u << 20;
};

int cmd_enumerate(const EnumerateArgs& a, const Global& g, std::ostream& out) {
  EnumerateOptions opts;
  opts.r = a.r;
  opts.workers = resolve_workers(g);
  opts.chunk_words = a.chunk;
  if (a.method == "symmetry") {
    opts.method = EnumerationMethod::symmetry_reduced;
  } else if (a.method != "full") {
    throw ParseError("--method must be full or symmetry");
  }
  if (a.decision == "oracle") {
    opts.decision = DecisionProcedure::oracle;
  } else if (a.decision != "fast") {
    throw ParseError("--decision must be fast or oracle");
  }
  if (a.extended) opts.word_budget = std::numeric_limits<std::uint64_t>::max();
  if (word_count(a.k, a.s) > opts.word_budget) {
    throw BudgetExceededError("k^s = " + std::to_string(word_count(a.k, a.s)) +
                              " words exceeds the default budget of 3^10; pass --extended");
  }

  EnumerationProgress progress;
  if (!a.checkpoint.empty() && std::filesystem::exists(a.checkpoint)) {
    Json saved;
    try {
      saved = Json::parse(read_file(a.checkpoint));
    } catch (const Json::exception& e) {
      throw ParseError(std::string("checkpoint is not valid JSON: ") + e.what());
    }
    progress = progress_from_json(saved);
    if (progress.k != a.k || progress.s != a.s || progress.r != a.r || progress.method != opts.method) {
      throw ParseError("checkpoint was written for different parameters");
    }
  } else {
    progress = start_enumeration(a.k, a.s, opts);
  }
  if (!a.checkpoint.empty()) {
    opts.on_progress = [&](const EnumerationProgress& p) {
      const std::string tmp = a.checkpoint + ".tmp";
      write_file(tmp, progress_to_json(p).dump() + "\n");
      std::filesystem::rename(tmp, a.checkpoint);
    };
  }
  const LambdaTable table = resume_lambda_table(progress, opts);
  out << lambda_csv(table) << '\n' << rho_csv(rho(table));
  return ok;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir, bool svg, const Global& g,
                 std::ostream& out) {
  Json json;
  try {
    json = Json::parse(read_file(config_path));
  } catch (const Json::exception& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  ExperimentConfig cfg = experiment_config_from_json(json);
  if (g.seed_given) cfg.options.seed = g.seed;
  cfg.options.workers = resolve_workers(g);
  const ExperimentSummary summary = run_experiment(cfg.model, cfg.statistic, cfg.options);
  Json report = summary_to_json(summary);
  report["seed"] = cfg.options.seed;
  print_json(out, report);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    write_file(dir / "summary.json", report.dump(2) + "\n");
    write_file(dir / "histogram.csv", histogram_csv(summary.histogram));
    if (svg) write_file(dir / "histogram.svg", histogram_svg(summary.histogram, summary.statistic));
  }
  return ok;
}

struct ConstructArgs {
  std::string method;
  int r = 2;
  std::size_t s = 14;
  std::size_t m = 10;
  std::string base_witness;
  int start_alphabet = 2;
  std::string base = "lag_bounded";
  std::size_t max_lag = 8;
  std::string segment_solver = "fast";
};

int cmd_construct(const WordSource& src, const ConstructArgs& a, const Global& g, std::ostream& out) {
  const Word w = src.load(g.seed);
  const SegmentSolver seg_solver = a.segment_solver == "exact" ? SegmentSolver::exact : SegmentSolver::fast;
  if (a.segment_solver != "exact" && a.segment_solver != "fast") throw ParseError("--segment-solver must be exact or fast");
  Json json{{"method", a.method}};
  Json params{{"n", w.size()}, {"k", w.alphabet().size()}, {"r", a.r}};
  TwinWitness witness;
  std::optional<std::size_t> covered;
  if (a.method == "segment_concat") {
    params["s"] = a.s;
    params["solver"] = a.segment_solver;
    const auto plan = segment_concat(w, a.s, SegmentOptions{a.r, seg_solver, resolve_workers(g)});
    params["segments"] = plan.segment_count;
    witness = plan.witness;
  } else if (a.method == "interlace") {
    params["m"] = a.m;
    const auto res = interlace(w, a.r, a.m);
    params["mu"] = res.mu;
    params["covered_bound"] = interlace_covered_bound(a.m, a.r, w.alphabet().size(), res.mu);
    witness = res.witness;
    covered = res.covered;
  } else if (a.method == "boost") {
    if (a.base_witness.empty()) throw ParseError("boost needs --base-witness");
    const TwinWitness base = parse_witness(read_file(a.base_witness));
    const auto profile = provider_profile(w, base);
    params["base_length"] = base.length();
    Json provided = Json::array();
    for (const auto& b : profile.bins) provided.push_back(b.provided);
    params["provided"] = provided;
    witness = boost(w, base);
  } else if (a.method == "pipeline") {
    BaseSolver solver;
    solver.kind = parse_base_kind(a.base);
    solver.segment_length = a.s;
    solver.segments = a.m;
    solver.max_lag = a.max_lag;
    solver.segment_solver = seg_solver;
    params["start_alphabet"] = a.start_alphabet;
    params["base"] = a.base;
    const auto res = boost_pipeline(w, a.start_alphabet, a.r, solver);
    params["length_after_step"] = res.length_after_step;
    witness = res.witness;
  } else {
    throw ParseError("--method must be segment_concat, interlace, boost or pipeline");
  }
  json["parameters"] = params;
  json["length"] = witness.length();
  json["witness"] = witness_to_json(witness);
  if (covered) json["covered"] = *covered;
  json["valid"] = verify_twins(w, witness).valid;
  print_json(out, json);
  return ok;
}

std::string coefficient_row(const BoundValue& v) {
  return to_string(v.name) + "," + std::to_string(v.r) + "," + v.k.str() + "," + v.value.str(30) + "," +
         v.rendered + "\n";
}

struct BoundsArgs {
  int table = 0;
  std::string name;
  std::string k;
  int r = 2;
  std::vector<std::string> crossover;
  long long limit = 100000000;
  std::vector<long long> binom;
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  const int selectors = (a.table != 0) + (!a.name.empty()) + (!a.crossover.empty()) + (!a.binom.empty());
  if (selectors != 1) throw ParseError("give exactly one of --table, --name, --crossover or --binom");
  if (a.table != 0) {
    out << "name,r,k,coefficient,rendered\n";
    for (BoundName name : table_rows(a.table)) {
      for (const auto& [r, k] : table_columns(a.table)) out << coefficient_row(bound_coefficient(name, k, r));
    }
  } else if (!a.name.empty()) {
    if (a.k.empty()) throw ParseError("--name needs --k");
    BigInt k;
    try {
      k = BigInt(a.k);
    } catch (const std::exception&) {
      throw ParseError("--k must be an integer");
    }
    out << "name,r,k,coefficient,rendered\n" << coefficient_row(bound_coefficient(parse_bound_name(a.name), k, a.r));
  } else if (!a.crossover.empty()) {
    if (a.crossover.size() != 2) throw ParseError("--crossover takes two names");
    const BoundName x = parse_bound_name(a.crossover[0]);
    const BoundName y = parse_bound_name(a.crossover[1]);
    const auto c = crossover_k(x, y, a.r, a.limit);
    out << "a,b,r,k,limit,hit_limit\n"
        << a.crossover[0] << ',' << a.crossover[1] << ',' << a.r << ',' << (c.k ? std::to_string(*c.k) : "none")
        << ',' << a.limit << ',' << (c.hit_limit ? "true" : "false") << '\n';
  } else {
    if (a.binom.size() != 3) throw ParseError("--binom takes N M l");
    const auto b = binom_ratio(a.binom[0], a.binom[1], a.binom[2]);
    char rel[64], dev[64];
    std::snprintf(rel, sizeof rel, "%.10g", b.rel_error);
    std::snprintf(dev, sizeof dev, "%.10g", b.deviation);
    out << "N,M,l,exact,approx,rel_error,deviation\n"
        << a.binom[0] << ',' << a.binom[1] << ',' << a.binom[2] << ',' << render_fixed(b.exact, 15) << ','
        << render_fixed(b.approx, 15) << ',' << rel << ',' << dev << '\n';
  }
  return ok;
}

int cmd_verify(const WordSource& src, const std::string& witness_path, const Global& g, std::ostream& out) {
  if (witness_path.empty()) throw ParseError("verify needs --witness");
  const Word w = src.load(g.seed);
  const TwinWitness witness = parse_witness(read_file(witness_path));
  const VerifyResult res = verify_twins(w, witness);
  print_json(out, Json{{"valid", res.valid}, {"length", res.length}, {"reason", std::string(to_string(res.reason))}});
  return res.valid ? ok : semantic_failure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twins in words: exact solvers, enumeration, constructions, simulation and bounds", "twins"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "Random seed (default 1)")->each([&](const std::string&) { g.seed_given = true; });
  app.add_option("--workers", g.workers, "Worker threads (default: hardware concurrency; TWINS_THREADS wins)")
      ->check(CLI::PositiveNumber);

  WordSource solve_src;
  int solve_r = 2;
  std::string solve_mode = "fast";
  std::size_t solve_lag = 0;
  std::uint64_t solve_budget = OracleOptions{}.node_budget;
  auto* solve = app.add_subcommand("solve", "Longest r-twins of a word");
  solve_src.add(solve, false);
  solve->add_option("--r", solve_r, "Number of twins")->check(CLI::Range(2, 64));
  solve->add_option("--mode", solve_mode, "oracle | fast");
  solve->add_option("--max-lag", solve_lag, "Lag bound for the fast solver (0 = exact)");
  solve->add_option("--budget", solve_budget, "Node budget for the oracle");

  EnumerateArgs en;
  auto* enumerate = app.add_subcommand("enumerate", "Exact distribution of longest twin lengths");
  enumerate->add_option("--k", en.k, "Alphabet size")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--s", en.s, "Word length")->required()->check(CLI::PositiveNumber);
  enumerate->add_option("--r", en.r, "Number of twins")->check(CLI::Range(2, 64));
  enumerate->add_flag("--extended", en.extended, "Allow more than 3^10 words");
  enumerate->add_option("--checkpoint", en.checkpoint, "Progress file; resumed when present");
  enumerate->add_option("--method", en.method, "symmetry | full");
  enumerate->add_option("--decision", en.decision, "fast | oracle");
  enumerate->add_option("--chunk", en.chunk, "Words per checkpoint interval")->check(CLI::PositiveNumber);

  std::string sim_config, sim_out;
  bool sim_svg = false;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo experiment from a JSON config");
  simulate->add_option("--config", sim_config, "Experiment config file")->required();
  simulate->add_option("--out-dir", sim_out, "Directory for summary.json and histogram files");
  simulate->add_flag("--svg", sim_svg, "Also write histogram.svg");

  WordSource con_src;
  ConstructArgs con;
  auto* construct = app.add_subcommand("construct", "Run one of the twin constructions");
  con_src.add(construct, true);
  construct->add_option("--method", con.method, "segment_concat | interlace | boost | pipeline")->required();
  construct->add_option("--r", con.r, "Number of twins")->check(CLI::Range(2, 64));
  construct->add_option("--s", con.s, "Segment length");
  construct->add_option("--m", con.m, "Segment count for interlacing");
  construct->add_option("--base-witness", con.base_witness, "Witness file on the word without its top letter");
  construct->add_option("--start-alphabet", con.start_alphabet, "Letters kept for the base solve");
  construct->add_option("--base", con.base, "segment_concat | interlace | lag_bounded | exact");
  construct->add_option("--max-lag", con.max_lag, "Lag bound for the lag_bounded base");
  construct->add_option("--segment-solver", con.segment_solver, "fast | exact");

  BoundsArgs bo;
  auto* bounds = app.add_subcommand("bounds", "Bound coefficients, tables, crossovers");
  bounds->add_option("--table", bo.table, "1 or 2");
  bounds->add_option("--name", bo.name, "bz1 | bz2 | thm12 | bzr | pi");
  bounds->add_option("--k", bo.k, "Alphabet size (arbitrary precision)");
  bounds->add_option("--r", bo.r, "Number of twins");
  bounds->add_option("--crossover", bo.crossover, "Two bound names")->expected(2);
  bounds->add_option("--limit", bo.limit, "Crossover scan limit");
  bounds->add_option("--binom", bo.binom, "N M l")->expected(3);

  WordSource ver_src;
  std::string ver_witness;
  auto* verify = app.add_subcommand("verify", "Check a witness against a word");
  ver_src.add(verify, false);
  verify->add_option("--witness", ver_witness, "Witness JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  try {
    if (*solve) return cmd_solve(solve_src, solve_r, solve_mode, solve_lag, solve_budget, g, out);
    if (*enumerate) return cmd_enumerate(en, g, out);
    if (*simulate) return cmd_simulate(sim_config, sim_out, sim_svg, g, out);
    if (*construct) return cmd_construct(con_src, con, g, out);
    if (*bounds) return cmd_bounds(bo, out);
    if (*verify) return cmd_verify(ver_src, ver_witness, g, out);
  } catch (const BudgetExceededError& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return budget_exceeded;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const InvalidIndexError& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return semantic_failure;
  }
  return usage_error;
}

}  // namespace twins::cli
