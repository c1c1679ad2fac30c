#include "riskbench/cli/config.h"

#include "riskbench/util/error.h"

namespace riskbench::cli {
namespace {

template <typename T>
void Take(const Json& obj, const char* key, T& target) {
  if (obj.contains(key)) target = obj.at(key).get<T>();
}

const Json& Section(const Json& json, const char* key) {
  static const Json kEmpty = Json::object();
  if (!json.contains(key)) return kEmpty;
  const Json& s = json.at(key);
  if (!s.is_object()) {
    Fail(ErrorCode::kInvalidConfig, std::string("config section '") + key +
                                        "' must be an object");
  }
  return s;
}

}  // namespace

void RunConfig::Validate() const {
  attention.Validate();
  train.Validate();
  stream.Validate();
  if (features.max_features == 0) {
    Fail(ErrorCode::kInvalidConfig, "max_features must be >= 1");
  }
  for (int h : {features.late_night.first_hour, features.late_night.last_hour}) {
    if (h < 0 || h > 23) Fail(ErrorCode::kInvalidConfig, "late-night hours must be 0..23");
  }
  if (simulate.scorer != "features" && simulate.scorer != "attention" &&
      simulate.scorer != "constant") {
    Fail(ErrorCode::kInvalidConfig, "scorer must be features, attention or constant");
  }
  if (!(simulate.threshold >= 0.0 && simulate.threshold <= 1.0)) {
    Fail(ErrorCode::kInvalidConfig, "threshold must be in [0,1]");
  }
  if (!(simulate.constant_score >= 0.0 && simulate.constant_score <= 1.0)) {
    Fail(ErrorCode::kInvalidConfig, "constant score must be in [0,1]");
  }
  if (simulate.constant_from_round < 1) {
    Fail(ErrorCode::kInvalidConfig, "constant scorer round must be >= 1");
  }
  if (pilot.edl_choice != "finalized" && pilot.edl_choice != "last") {
    Fail(ErrorCode::kInvalidConfig, "EDL choice must be finalized or last");
  }
  if (pilot.agreement_turn < 0) {
    Fail(ErrorCode::kInvalidConfig, "agreement turn must be >= 0");
  }
  const auto& f = pilot.token_field;
  if (f != "all" && f != "input" && f != "output" && f != "reason") {
    Fail(ErrorCode::kInvalidConfig, "token field must be input, output, reason or all");
  }
}

void ApplyConfigJson(const Json& json, RunConfig& cfg) {
  if (!json.is_object()) Fail(ErrorCode::kInvalidConfig, "config must be a JSON object");
  try {
    Take(json, "seed", cfg.seed);
    if (json.contains("seed")) cfg.train.seed = cfg.seed;

    const Json& p = Section(json, "paths");
    Take(p, "inputs", cfg.paths.inputs);
    Take(p, "corpus", cfg.paths.corpus);
    Take(p, "labels", cfg.paths.labels);
    Take(p, "embeddings", cfg.paths.embeddings);
    Take(p, "features", cfg.paths.features);
    Take(p, "tfidf", cfg.paths.tfidf);
    Take(p, "model", cfg.paths.model);
    Take(p, "members", cfg.paths.members);
    Take(p, "emissions", cfg.paths.emissions);
    Take(p, "transcripts", cfg.paths.transcripts);
    Take(p, "gold", cfg.paths.gold);
    Take(p, "submission", cfg.paths.submission);
    Take(p, "out", cfg.paths.out_dir);
    Take(json, "out", cfg.paths.out_dir);

    const Json& f = Section(json, "features");
    Take(f, "max_features", cfg.features.max_features);
    Take(f, "lexicon", cfg.features.lexicon);
    if (f.contains("late_night")) {
      const Json& ln = f.at("late_night");
      Take(ln, "first_hour", cfg.features.late_night.first_hour);
      Take(ln, "last_hour", cfg.features.late_night.last_hour);
    }

    attention::ApplyAttentionConfig(Section(json, "attention"), cfg.attention);
    model::ApplyTrainConfig(Section(json, "train"), cfg.train);
    stream::ApplyStreamMetricConfig(Section(json, "stream"), cfg.stream);

    const Json& s = Section(json, "simulate");
    Take(s, "scorer", cfg.simulate.scorer);
    Take(s, "threshold", cfg.simulate.threshold);
    Take(s, "constant_score", cfg.simulate.constant_score);
    Take(s, "constant_from_round", cfg.simulate.constant_from_round);

    const Json& pl = Section(json, "pilot");
    Take(pl, "edl_choice", cfg.pilot.edl_choice);
    Take(pl, "agreement_turn", cfg.pilot.agreement_turn);
    Take(pl, "agreement_threshold", cfg.pilot.agreement_threshold);
    Take(pl, "token_field", cfg.pilot.token_field);
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kInvalidConfig, std::string("config: ") + e.what());
  }
}

void ApplyConfigFile(const std::filesystem::path& path, RunConfig& cfg) {
  ApplyConfigJson(ParseJson(ReadFile(path), path.string()), cfg);
}

OrderedJson RunConfigToJson(const RunConfig& cfg) {
  const auto& p = cfg.paths;
  OrderedJson paths{{"inputs", p.inputs},         {"corpus", p.corpus},
                    {"labels", p.labels},         {"embeddings", p.embeddings},
                    {"features", p.features},     {"tfidf", p.tfidf},
                    {"model", p.model},           {"members", p.members},
                    {"emissions", p.emissions},   {"transcripts", p.transcripts},
                    {"gold", p.gold},             {"submission", p.submission},
                    {"out", p.out_dir}};
  return OrderedJson{
      {"seed", cfg.seed},
      {"paths", paths},
      {"features",
       {{"max_features", cfg.features.max_features},
        {"lexicon", cfg.features.lexicon},
        {"late_night",
         {{"first_hour", cfg.features.late_night.first_hour},
          {"last_hour", cfg.features.late_night.last_hour}}}}},
      {"attention", attention::AttentionConfigToJson(cfg.attention)},
      {"train", model::TrainConfigToJson(cfg.train)},
      {"stream", stream::StreamMetricConfigToJson(cfg.stream)},
      {"simulate",
       {{"scorer", cfg.simulate.scorer},
        {"threshold", cfg.simulate.threshold},
        {"constant_score", cfg.simulate.constant_score},
        {"constant_from_round", cfg.simulate.constant_from_round}}},
      {"pilot",
       {{"edl_choice", cfg.pilot.edl_choice},
        {"agreement_turn", cfg.pilot.agreement_turn},
        {"agreement_threshold", cfg.pilot.agreement_threshold},
        {"token_field", cfg.pilot.token_field}}}};
}

}  // namespace riskbench::cli
