#ifndef RISKBENCH_CLI_CONFIG_H_
#define RISKBENCH_CLI_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "riskbench/attention/temporal_attention.h"
#include "riskbench/features/temporal.h"
#include "riskbench/model/logistic.h"
#include "riskbench/stream/decision_metrics.h"
#include "riskbench/util/io.h"

namespace riskbench::cli {

struct RunPaths {
  std::vector<std::string> inputs;       // raw user files or directories
  std::string corpus;                    // canonical JSONL
  std::string labels;                    // TSV
  std::string embeddings;                // ERKV1
  std::string features;                  // feature rows JSONL
  std::string tfidf;                     // fitted TF-IDF model
  std::string model;                     // linear model JSON
  std::vector<std::string> members;      // external member scores JSONL
  std::string emissions;                 // stream emissions JSONL
  std::vector<std::string> transcripts;  // files or directories
  std::string gold;
  std::string submission;
  std::string out_dir = ".";
};

struct FeatureSettings {
  std::size_t max_features = 5000;
  std::string lexicon;  // empty: bundled lexicon
  features::LateNightWindow late_night;
};

struct SimulateSettings {
  std::string scorer = "features";  // features | attention | constant
  double threshold = 0.5;
  double constant_score = 1.0;
  int constant_from_round = 1;
};

struct PilotSettings {
  std::string edl_choice = "finalized";  // finalized | last
  int agreement_turn = 0;                // 0: last turn
  double agreement_threshold = 0.5;
  std::string token_field = "all";       // input | output | reason | all
};

struct RunConfig {
  std::uint64_t seed = 42;
  RunPaths paths;
  FeatureSettings features;
  attention::AttentionConfig attention;
  model::TrainConfig train;
  stream::StreamMetricConfig stream;
  SimulateSettings simulate;
  PilotSettings pilot;

  // Throws kInvalidConfig.
  void Validate() const;
};

// Keys absent from the file keep their current values, so a file overlays
// the defaults and flags overlay the file.
void ApplyConfigJson(const Json& json, RunConfig& cfg);
void ApplyConfigFile(const std::filesystem::path& path, RunConfig& cfg);

OrderedJson RunConfigToJson(const RunConfig& cfg);

}  // namespace riskbench::cli

#endif  // RISKBENCH_CLI_CONFIG_H_
