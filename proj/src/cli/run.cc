#include "riskbench/cli/run.h"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <memory>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "riskbench/cli/commands.h"
#include "riskbench/cli/config.h"
#include "riskbench/util/error.h"
#include "riskbench/util/time.h"

namespace riskbench::cli {
namespace {

// A flag is only applied when given, so it overrides the config file
// without clobbering it.
struct FlagBinding {
  CLI::Option* option;
  std::function<void(RunConfig&)> apply;
};

class Flags {
 public:
  template <typename T>
  void Add(CLI::App* app, const std::string& name, const std::string& help,
           std::function<void(RunConfig&, const T&)> apply) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(name, *value, help);
    bindings_.push_back({opt, [value, apply](RunConfig& c) { apply(c, *value); }});
  }

  void Apply(RunConfig& cfg) const {
    for (const auto& b : bindings_) {
      if (b.option->count() > 0) b.apply(cfg);
    }
  }

 private:
  std::vector<FlagBinding> bindings_;
};

using CommandFn = CommandResult (*)(const RunConfig&);

struct Subcommand {
  CLI::App* app;
  CommandFn fn;
};

void AddCorpus(Flags& f, CLI::App* app) {
  f.Add<std::string>(app, "--corpus", "canonical corpus JSONL",
                     [](RunConfig& c, const std::string& v) { c.paths.corpus = v; });
}
void AddLabels(Flags& f, CLI::App* app) {
  f.Add<std::string>(app, "--labels", "label TSV",
                     [](RunConfig& c, const std::string& v) { c.paths.labels = v; });
}
void AddEmbeddings(Flags& f, CLI::App* app) {
  f.Add<std::string>(app, "--embeddings", "ERKV1 embedding file",
                     [](RunConfig& c, const std::string& v) { c.paths.embeddings = v; });
}
void AddEmissions(Flags& f, CLI::App* app) {
  f.Add<std::string>(app, "--emissions", "emissions JSONL",
                     [](RunConfig& c, const std::string& v) { c.paths.emissions = v; });
}
void AddTranscripts(Flags& f, CLI::App* app) {
  f.Add<std::vector<std::string>>(
      app, "--transcripts", "transcript files or directories",
      [](RunConfig& c, const std::vector<std::string>& v) { c.paths.transcripts = v; });
}
void AddLexicon(Flags& f, CLI::App* app) {
  f.Add<std::string>(app, "--lexicon", "lexicon JSON overriding the bundled one",
                     [](RunConfig& c, const std::string& v) { c.features.lexicon = v; });
  f.Add<int>(app, "--late-night-start", "first late-night hour (UTC)",
             [](RunConfig& c, const int& v) { c.features.late_night.first_hour = v; });
  f.Add<int>(app, "--late-night-end", "last late-night hour (UTC), inclusive",
             [](RunConfig& c, const int& v) { c.features.late_night.last_hour = v; });
}
void AddAttention(Flags& f, CLI::App* app) {
  f.Add<std::size_t>(app, "--window", "trailing post window (0 = all posts)",
                     [](RunConfig& c, const std::size_t& v) { c.attention.window = v; });
  f.Add<double>(app, "--ramp-low", "temporal weight of the oldest post",
                [](RunConfig& c, const double& v) { c.attention.ramp_low = v; });
  f.Add<double>(app, "--ramp-high", "temporal weight of the newest post",
                [](RunConfig& c, const double& v) { c.attention.ramp_high = v; });
  f.Add<std::size_t>(app, "--dim", "embedding dimension",
                     [](RunConfig& c, const std::size_t& v) { c.attention.dim = v; });
}
void AddEdlChoice(Flags& f, CLI::App* app) {
  f.Add<std::string>(app, "--edl-choice", "estimate turn: finalized or last",
                     [](RunConfig& c, const std::string& v) { c.pilot.edl_choice = v; });
}

std::string NowIso8601() {
  const auto now = std::chrono::system_clock::now();
  return FormatIso8601(
      std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count());
}

}  // namespace

void ConfigureLogging() {
  static const bool configured = [] {
    auto logger = spdlog::stderr_color_mt("riskbench");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    spdlog::set_level(spdlog::level::warn);
    return true;
  }();
  (void)configured;
  if (const char* level = std::getenv("RISKBENCH_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ConfigureLogging();

  CLI::App app{"Early depression-risk detection and conversational assessment toolkit",
               "riskbench"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  auto* config_opt = app.add_option("--config", config_path, "JSON config file");
  auto* seed_opt = app.add_option("--seed", seed, "random seed recorded in every report");
  auto* out_opt = app.add_option("--out", out_dir, "output directory");

  Flags flags;
  std::vector<Subcommand> commands;

  auto* ingest = app.add_subcommand("ingest", "raw user files -> canonical corpus");
  flags.Add<std::vector<std::string>>(
      ingest, "--input", "user files or directories of *.json",
      [](RunConfig& c, const std::vector<std::string>& v) { c.paths.inputs = v; });
  AddLabels(flags, ingest);
  commands.push_back({ingest, &Ingest});

  auto* feats = app.add_subcommand("features", "TF-IDF, sentiment, LIWC and temporal rows");
  AddCorpus(flags, feats);
  AddLexicon(flags, feats);
  flags.Add<std::size_t>(feats, "--max-features", "TF-IDF vocabulary size",
                         [](RunConfig& c, const std::size_t& v) { c.features.max_features = v; });
  commands.push_back({feats, &Features});

  auto* aggregate = app.add_subcommand("aggregate", "temporal attention pooling per user");
  AddCorpus(flags, aggregate);
  AddEmbeddings(flags, aggregate);
  AddAttention(flags, aggregate);
  commands.push_back({aggregate, &Aggregate});

  auto* train = app.add_subcommand("train", "class-weighted logistic model by SGD");
  AddLabels(flags, train);
  AddEmbeddings(flags, train);
  flags.Add<std::string>(train, "--features", "feature rows JSONL",
                         [](RunConfig& c, const std::string& v) { c.paths.features = v; });
  flags.Add<double>(train, "--learning-rate", "SGD step size",
                    [](RunConfig& c, const double& v) { c.train.learning_rate = v; });
  flags.Add<int>(train, "--epochs", "maximum epochs",
                 [](RunConfig& c, const int& v) { c.train.epochs = v; });
  flags.Add<double>(train, "--l2", "L2 penalty lambda",
                    [](RunConfig& c, const double& v) { c.train.l2_lambda = v; });
  flags.Add<std::string>(train, "--class-weight", "balanced, none or W0,W1",
                         [](RunConfig& c, const std::string& v) {
                           Json j;
                           const auto comma = v.find(',');
                           if (comma == std::string::npos) {
                             j["class_weight_mode"] = v;
                           } else {
                             j["class_weight_mode"] = "explicit";
                             try {
                               j["class_weights"] = {std::stod(v.substr(0, comma)),
                                                     std::stod(v.substr(comma + 1))};
                             } catch (const std::exception&) {
                               Fail(ErrorCode::kInvalidConfig,
                                    "--class-weight expects W0,W1 numbers");
                             }
                           }
                           model::ApplyTrainConfig(j, c.train);
                         });
  flags.Add<double>(train, "--validation-fraction", "held-out fraction for early stopping",
                    [](RunConfig& c, const double& v) { c.train.validation_fraction = v; });
  flags.Add<int>(train, "--patience", "non-improving epochs tolerated",
                 [](RunConfig& c, const int& v) { c.train.patience = v; });
  commands.push_back({train, &Train});

  auto* simulate = app.add_subcommand("simulate", "round-based early detection run");
  AddCorpus(flags, simulate);
  AddEmbeddings(flags, simulate);
  AddLexicon(flags, simulate);
  AddAttention(flags, simulate);
  flags.Add<std::string>(simulate, "--model", "linear model JSON",
                         [](RunConfig& c, const std::string& v) { c.paths.model = v; });
  flags.Add<std::string>(simulate, "--tfidf", "fitted TF-IDF model",
                         [](RunConfig& c, const std::string& v) { c.paths.tfidf = v; });
  flags.Add<std::vector<std::string>>(
      simulate, "--member", "external member scores to soft-vote with",
      [](RunConfig& c, const std::vector<std::string>& v) { c.paths.members = v; });
  flags.Add<std::string>(simulate, "--scorer", "features, attention or constant",
                         [](RunConfig& c, const std::string& v) { c.simulate.scorer = v; });
  flags.Add<double>(simulate, "--threshold", "decision threshold",
                    [](RunConfig& c, const double& v) { c.simulate.threshold = v; });
  flags.Add<double>(simulate, "--constant-score", "score of the constant scorer",
                    [](RunConfig& c, const double& v) { c.simulate.constant_score = v; });
  flags.Add<int>(simulate, "--from-round", "first round the constant scorer fires",
                 [](RunConfig& c, const int& v) { c.simulate.constant_from_round = v; });
  commands.push_back({simulate, &Simulate});

  auto* eval_stream = app.add_subcommand("eval-stream", "P, R, F1, ERDE and latency metrics");
  AddEmissions(flags, eval_stream);
  AddLabels(flags, eval_stream);
  flags.Add<std::vector<int>>(eval_stream, "--erde", "ERDE horizons",
                              [](RunConfig& c, const std::vector<int>& v) {
                                c.stream.erde_horizons = v;
                              });
  flags.Add<std::string>(eval_stream, "--c-fp", "false-positive cost: prevalence or a number",
                         [](RunConfig& c, const std::string& v) {
                           Json j;
                           if (v == "prevalence") {
                             j["c_fp"] = v;
                           } else {
                             try {
                               j["c_fp"] = std::stod(v);
                             } catch (const std::exception&) {
                               Fail(ErrorCode::kInvalidConfig,
                                    "--c-fp expects prevalence or a number");
                             }
                           }
                           stream::ApplyStreamMetricConfig(j, c.stream);
                         });
  flags.Add<double>(eval_stream, "--latency-p", "latency penalty constant",
                    [](RunConfig& c, const double& v) { c.stream.latency_p = v; });
  commands.push_back({eval_stream, &EvalStream});

  auto* eval_rank = app.add_subcommand("eval-rank", "P@k and NDCG at writing checkpoints");
  AddEmissions(flags, eval_rank);
  AddLabels(flags, eval_rank);
  flags.Add<std::vector<int>>(eval_rank, "--checkpoints", "writings at which to rank",
                              [](RunConfig& c, const std::vector<int>& v) {
                                c.stream.ranking_checkpoints = v;
                              });
  flags.Add<std::vector<int>>(eval_rank, "--cutoffs", "ranking cutoffs k",
                              [](RunConfig& c, const std::vector<int>& v) {
                                c.stream.ranking_cutoffs = v;
                              });
  commands.push_back({eval_rank, &EvalRank});

  auto* eval_pilot = app.add_subcommand("eval-pilot", "DCHR, ADODL and ASHR");
  flags.Add<std::string>(eval_pilot, "--gold", "gold persona file",
                         [](RunConfig& c, const std::string& v) { c.paths.gold = v; });
  flags.Add<std::string>(eval_pilot, "--submission", "submission file",
                         [](RunConfig& c, const std::string& v) { c.paths.submission = v; });
  commands.push_back({eval_pilot, &EvalPilot});

  auto* audit = app.add_subcommand("audit-transcripts",
                                   "schema validation, summation audit, agreement");
  AddTranscripts(flags, audit);
  AddEdlChoice(flags, audit);
  flags.Add<int>(audit, "--turn", "agreement at this assessment turn (0 = last)",
                 [](RunConfig& c, const int& v) { c.pilot.agreement_turn = v; });
  flags.Add<double>(audit, "--agreement-threshold", "reference standard deviation",
                    [](RunConfig& c, const double& v) { c.pilot.agreement_threshold = v; });
  commands.push_back({audit, &AuditTranscripts});

  auto* submit = app.add_subcommand("submit", "cleaned per-model submission files");
  AddTranscripts(flags, submit);
  AddEdlChoice(flags, submit);
  commands.push_back({submit, &Submit});

  auto* stats = app.add_subcommand("stats", "box, token and trajectory statistics");
  AddCorpus(flags, stats);
  AddLabels(flags, stats);
  AddTranscripts(flags, stats);
  flags.Add<int>(stats, "--late-night-start", "first late-night hour (UTC)",
                 [](RunConfig& c, const int& v) { c.features.late_night.first_hour = v; });
  flags.Add<int>(stats, "--late-night-end", "last late-night hour (UTC), inclusive",
                 [](RunConfig& c, const int& v) { c.features.late_night.last_hour = v; });
  flags.Add<std::string>(stats, "--field", "token field: input, output, reason or all",
                         [](RunConfig& c, const std::string& v) { c.pilot.token_field = v; });
  commands.push_back({stats, &Stats});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Subcommand* chosen = nullptr;
  for (const auto& c : commands) {
    if (c.app->parsed()) chosen = &c;
  }
  const std::string name = chosen->app->get_name();

  try {
    RunConfig cfg;
    if (config_opt->count() > 0) ApplyConfigFile(config_path, cfg);
    if (seed_opt->count() > 0) cfg.seed = seed;
    flags.Apply(cfg);
    if (out_opt->count() > 0) cfg.paths.out_dir = out_dir;
    cfg.train.seed = cfg.seed;
    cfg.Validate();

    spdlog::info("running {}", name);
    CommandResult result = chosen->fn(cfg);

    OrderedJson report{{"command", name},
                       {"generated_at", NowIso8601()},
                       {"seed", cfg.seed},
                       {"config", RunConfigToJson(cfg)},
                       {"artifacts", result.artifacts},
                       {"result", result.result}};
    const auto path = std::filesystem::path(cfg.paths.out_dir) / (name + "_report.json");
    WriteFileAtomic(path, report.dump(2) + "\n");
    out << path.string() << '\n';
    return result.exit_code;
  } catch (const Error& e) {
    err << "riskbench " << name << ": " << e.what() << '\n';
    return e.code() == ErrorCode::kInvalidConfig ? kExitUsage : kExitData;
  } catch (const std::exception& e) {
    err << "riskbench " << name << ": " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace riskbench::cli
