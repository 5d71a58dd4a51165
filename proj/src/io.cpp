#include "twins/io.hpp"

#include <cstdio>
#include <sstream>

namespace twins {

BaseSolverKind parse_base_kind(const std::string& name) {
  if (name == "segment_concat") return BaseSolverKind::segment_concat;
  if (name == "interlace") return BaseSolverKind::interlace;
  if (name == "lag_bounded") return BaseSolverKind::lag_bounded;
  if (name == "exact") return BaseSolverKind::exact;
  throw ParseError("unknown base solver: " + name);
}

namespace {

template <class T>
T get_or(const Json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  return obj.at(key).get<T>();
}

}  // namespace

std::string format_double(double value, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, value);
  return buf;
}

Json witness_to_json(const TwinWitness& witness) {
  Json sets = Json::array();
  for (const auto& s : witness.index_sets) sets.push_back(s);
  return Json{{"r", witness.r}, {"index_sets", sets}};
}

TwinWitness witness_from_json(const Json& json) {
  try {
    const Json& sets = json.is_array() ? json : json.at("index_sets");
    if (!sets.is_array()) throw ParseError("index_sets must be an array");
    TwinWitness out;
    for (const auto& s : sets) out.index_sets.push_back(s.get<std::vector<std::size_t>>());
    out.r = json.is_object() && json.contains("r") ? json.at("r").get<int>()
                                                   : static_cast<int>(out.index_sets.size());
    return out;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed witness: ") + e.what());
  }
}

TwinWitness parse_witness(const std::string& text) {
  Json json;
  try {
    json = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("witness is not valid JSON: ") + e.what());
  }
  return witness_from_json(json);
}

Json word_to_json(const Word& word) {
  return Json{{"k", word.alphabet().size()}, {"n", word.size()}, {"letters", word.to_string()}};
}

Json progress_to_json(const EnumerationProgress& progress) {
  return Json{{"k", progress.k},
              {"s", progress.s},
              {"r", progress.r},
              {"nextWordIndex", progress.next_word_index},
              {"partial", progress.partial},
              {"symmetryReduced", progress.method == EnumerationMethod::symmetry_reduced}};
}

EnumerationProgress progress_from_json(const Json& json) {
  try {
    EnumerationProgress p;
    p.k = json.at("k").get<int>();
    p.s = json.at("s").get<std::size_t>();
    p.r = get_or(json, "r", 2);
    p.next_word_index = json.at("nextWordIndex").get<std::uint64_t>();
    p.partial = json.at("partial").get<std::vector<std::uint64_t>>();
    p.method = get_or(json, "symmetryReduced", false) ? EnumerationMethod::symmetry_reduced
                                                      : EnumerationMethod::full;
    return p;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed checkpoint: ") + e.what());
  }
}

std::string lambda_csv(const LambdaTable& table) {
  std::ostringstream out;
  out << "k,s,t,lambda\n";
  for (std::size_t t = 0; t < table.lambda.size(); ++t) {
    out << table.k << ',' << table.s << ',' << t << ',' << table.lambda[t] << '\n';
  }
  return out.str();
}

std::string rho_csv(const RhoValue& rho) {
  return "rho_unreduced,rho_reduced,rho_decimal\n" + rho.unreduced() + ',' +
         to_fraction_string(rho.value) + ',' + rho.decimal() + '\n';
}

Json summary_to_json(const ExperimentSummary& summary) {
  return Json{{"statistic", summary.statistic},
              {"trials", summary.trials},
              {"mean", summary.mean},
              {"sd", summary.sd},
              {"min", summary.min},
              {"max", summary.max},
              {"histogram",
               {{"lo", summary.histogram.lo}, {"hi", summary.histogram.hi}, {"counts", summary.histogram.counts}}},
              {"values", summary.values}};
}

std::string histogram_csv(const Histogram& h) {
  std::ostringstream out;
  out << "bucket,lo,hi,count\n";
  const std::size_t b = h.counts.size();
  for (std::size_t i = 0; i < b; ++i) {
    const double width = b > 0 ? (h.hi - h.lo) / static_cast<double>(b) : 0.0;
    out << i << ',' << format_double(h.lo + width * static_cast<double>(i)) << ','
        << format_double(i + 1 == b ? h.hi : h.lo + width * static_cast<double>(i + 1)) << ',' << h.counts[i]
        << '\n';
  }
  return out.str();
}

std::string histogram_svg(const Histogram& h, const std::string& title) {
  const int width = 640, height = 360, margin = 40;
  std::uint64_t peak = 1;
  for (auto c : h.counts) peak = std::max(peak, c);
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<title>" << title << "</title>\n";
  out << "<desc>\n" << histogram_csv(h) << "</desc>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const double plot_w = width - 2 * margin, plot_h = height - 2 * margin;
  const double bar_w = h.counts.empty() ? 0 : plot_w / static_cast<double>(h.counts.size());
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double bh = plot_h * static_cast<double>(h.counts[i]) / static_cast<double>(peak);
    out << "<rect x=\"" << format_double(margin + bar_w * static_cast<double>(i), 2) << "\" y=\""
        << format_double(margin + plot_h - bh, 2) << "\" width=\"" << format_double(bar_w * 0.9, 2)
        << "\" height=\"" << format_double(bh, 2) << "\" fill=\"steelblue\"/>\n";
  }
  out << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
      << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << margin << "\" y=\"" << height - 10 << "\" font-size=\"12\">" << format_double(h.lo, 4)
      << "</text>\n";
  out << "<text x=\"" << width - margin << "\" y=\"" << height - 10
      << "\" font-size=\"12\" text-anchor=\"end\">" << format_double(h.hi, 4) << "</text>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">" << title
      << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

ExperimentConfig experiment_config_from_json(const Json& json) {
  try {
    ExperimentConfig cfg;
    const Json& model = json.at("model");
    const auto type = model.at("type").get<std::string>();
    if (type == "binomial") {
      cfg.model = BinomialModel{model.at("n").get<std::size_t>(), model.at("k").get<int>()};
    } else if (type == "fixed_counts") {
      cfg.model = FixedCountsModel{LetterCounts{model.at("counts").get<std::vector<std::size_t>>()}};
    } else {
      throw ParseError("unknown model type: " + type);
    }

    const Json& st = json.at("statistic");
    StatisticSpec& s = cfg.statistic;
    s.kind = parse_statistic(st.at("name").get<std::string>());
    s.r = get_or(st, "r", s.r);
    s.segment_length = get_or(st, "segment_length", s.segment_length);
    s.start_alphabet = get_or(st, "start_alphabet", s.start_alphabet);
    s.segments = get_or(st, "segments", s.segments);
    s.max_lag = get_or(st, "max_lag", s.max_lag);
    if (st.contains("base")) {
      const Json& b = st.at("base");
      s.base.kind = parse_base_kind(get_or<std::string>(b, "kind", "lag_bounded"));
      s.base.segment_length = get_or(b, "segment_length", s.base.segment_length);
      s.base.segments = get_or(b, "segments", s.base.segments);
      s.base.max_lag = get_or(b, "max_lag", s.base.max_lag);
    }

    cfg.options.trials = json.at("trials").get<std::size_t>();
    cfg.options.seed = get_or<std::uint64_t>(json, "seed", 1);
    cfg.options.histogram_buckets = get_or<std::size_t>(json, "histogram_buckets", 20);
    if (cfg.options.trials < 1) throw ParseError("trials must be at least 1");
    return cfg;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed experiment config: ") + e.what());
  }
}

}  // namespace twins
