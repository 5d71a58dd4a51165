#pragma once

#include <string>

#include <json.hpp>

#include "twins/constructions.hpp"
#include "twins/core.hpp"
#include "twins/enumerator.hpp"
#include "twins/models.hpp"

namespace twins {

using Json = nlohmann::ordered_json;

/// {"r": r, "index_sets": [[...], ...]}
Json witness_to_json(const TwinWitness& witness);
/// Accepts the object form above or a bare array of index arrays.
/// Throws ParseError on malformed input.
TwinWitness witness_from_json(const Json& json);
TwinWitness parse_witness(const std::string& text);

Json word_to_json(const Word& word);

/// {"k", "s", "nextWordIndex", "partial", "symmetryReduced", "r"}
Json progress_to_json(const EnumerationProgress& progress);
EnumerationProgress progress_from_json(const Json& json);

/// "k,s,t,lambda" rows, t = 0..floor(s/r).
std::string lambda_csv(const LambdaTable& table);
/// One-row CSV: rho_unreduced,rho_reduced,rho_decimal.
std::string rho_csv(const RhoValue& rho);

Json summary_to_json(const ExperimentSummary& summary);
/// bucket,lo,hi,count
std::string histogram_csv(const Histogram& histogram);
/// Static bar chart; the bucket table is embedded in <desc>.
std::string histogram_svg(const Histogram& histogram, const std::string& title);

/// Parses the experiment configuration used by the simulate command.
struct ExperimentConfig {
  ModelSpec model;
  StatisticSpec statistic;
  ExperimentOptions options;
};
ExperimentConfig experiment_config_from_json(const Json& json);

/// segment_concat | interlace | lag_bounded | exact
BaseSolverKind parse_base_kind(const std::string& name);

/// Fixed-point rendering used in text outputs (locale independent).
std::string format_double(double value, int places = 6);

}  // namespace twins
