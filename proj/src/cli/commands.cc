#include "riskbench/cli/commands.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>

#include <spdlog/spdlog.h>

#include "riskbench/attention/embeddings.h"
#include "riskbench/attention/temporal_attention.h"
#include "riskbench/corpus/contractions.h"
#include "riskbench/corpus/labels.h"
#include "riskbench/corpus/timeline.h"
#include "riskbench/features/box_stats.h"
#include "riskbench/features/feature_row.h"
#include "riskbench/features/lexicon.h"
#include "riskbench/features/tfidf.h"
#include "riskbench/model/auc.h"
#include "riskbench/model/logistic.h"
#include "riskbench/model/voting.h"
#include "riskbench/pilot/analysis.h"
#include "riskbench/pilot/metrics.h"
#include "riskbench/pilot/submission.h"
#include "riskbench/pilot/transcript.h"
#include "riskbench/stream/decision_metrics.h"
#include "riskbench/stream/ranking_metrics.h"
#include "riskbench/stream/simulation.h"
#include "riskbench/util/error.h"

namespace riskbench::cli {
namespace {

namespace fs = std::filesystem;

// Label counts as published for the shared-task corpus; their sum does not
// match the published user count, so reports show both.
constexpr int kPublishedUsers = 2724;
constexpr int kPublishedNegatives = 2446;
constexpr int kPublishedPositives = 297;

const std::string& Require(const std::string& path, const char* flag) {
  if (path.empty()) {
    Fail(ErrorCode::kInvalidConfig, std::string("missing required input ") + flag);
  }
  return path;
}

// Runs `load` and prefixes any error with the file it came from.
template <typename F>
auto FromFile(const std::string& path, F&& load) {
  try {
    return load(ReadFile(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIoError) throw;
    throw Error(e.code(), path + ": " + e.message());
  }
}

std::vector<std::string> ExpandInputs(const std::vector<std::string>& inputs,
                                      const char* flag) {
  if (inputs.empty()) {
    Fail(ErrorCode::kInvalidConfig, std::string("missing required input ") + flag);
  }
  std::vector<std::string> files;
  for (const auto& input : inputs) {
    if (fs::is_directory(input)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(input)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") {
          found.push_back(entry.path().string());
        }
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::exists(input)) {
      files.push_back(input);
    } else {
      Fail(ErrorCode::kIoError, "no such file or directory: " + input);
    }
  }
  return files;
}

void Emit(const RunConfig& cfg, CommandResult& r, const std::string& name,
          std::string_view data) {
  const fs::path path = fs::path(cfg.paths.out_dir) / name;
  WriteFileAtomic(path, data);
  r.artifacts.push_back(path.string());
  spdlog::info("wrote {}", path.string());
}

std::vector<corpus::UserWritings> LoadWritings(const RunConfig& cfg) {
  const auto& path = Require(cfg.paths.corpus, "--corpus");
  auto posts = FromFile(path, [&](const std::string& bytes) {
    return corpus::ReadCorpusJsonl(bytes, path);
  });
  return corpus::GroupByUser(posts, /*subject_only=*/true);
}

corpus::LabelTable LoadLabelFile(const RunConfig& cfg) {
  return FromFile(Require(cfg.paths.labels, "--labels"),
                  [](const std::string& bytes) { return corpus::LoadLabels(bytes); });
}

features::LexiconConfig LoadLexicon(const RunConfig& cfg) {
  if (cfg.features.lexicon.empty()) return features::LexiconConfig::Default();
  return FromFile(cfg.features.lexicon, [&](const std::string& bytes) {
    return features::LexiconConfig::FromJson(ParseJson(bytes, cfg.features.lexicon));
  });
}

attention::EmbeddingMatrix LoadEmbeddings(const std::string& path,
                                          std::optional<std::size_t> dim) {
  return FromFile(path, [&](const std::string& bytes) {
    return attention::ReadEmbeddings(bytes, dim);
  });
}

// Post vectors are keyed by post_id; "user_id/post_id" disambiguates ids
// that repeat across users.
std::vector<std::span<const float>> PostRows(const attention::EmbeddingMatrix& emb,
                                             const corpus::UserWritings& user) {
  std::vector<std::span<const float>> rows;
  rows.reserve(user.posts.size());
  for (const auto& post : user.posts) {
    auto row = emb.Find(user.user_id + "/" + post.post_id);
    if (!row) row = emb.Find(post.post_id);
    if (!row) {
      Fail(ErrorCode::kMalformedInput,
           "no embedding for post " + post.post_id + " of user " + user.user_id);
    }
    rows.push_back(*row);
  }
  return rows;
}

OrderedJson Nullable(double v) {
  return std::isfinite(v) ? OrderedJson(v) : OrderedJson(nullptr);
}

std::vector<pilot::Transcript> LoadTranscripts(const std::vector<std::string>& files) {
  std::vector<pilot::Transcript> out;
  for (const auto& file : files) {
    auto batch = FromFile(file, [](const std::string& bytes) {
      return pilot::ParseTranscriptFile(bytes);
    });
    for (auto& t : batch) out.push_back(std::move(t));
  }
  // Deterministic merge order: model, then persona.
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.model, a.persona) < std::tie(b.model, b.persona);
  });
  return out;
}

std::map<std::string, std::vector<pilot::Transcript>> ByModel(
    std::vector<pilot::Transcript> transcripts) {
  std::map<std::string, std::vector<pilot::Transcript>> out;
  for (auto& t : transcripts) out[t.model].push_back(std::move(t));
  return out;
}

std::string SafeFileStem(const std::string& name) {
  std::string out;
  for (char c : name) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) || c == '.' ||
                      c == '-' || c == '_';
    out += keep ? c : '_';
  }
  return out.empty() ? "model" : out;
}

}  // namespace

CommandResult Ingest(const RunConfig& cfg) {
  CommandResult r;
  const auto files = ExpandInputs(cfg.paths.inputs, "--input");
  const auto& contractions = corpus::ContractionTable::Default();

  std::vector<corpus::CleanPost> posts;
  std::set<std::string> users;
  std::size_t subject_posts = 0;
  for (const auto& file : files) {
    const auto timeline = FromFile(file, [](const std::string& bytes) {
      return corpus::ParseUserFile(bytes);
    });
    if (!users.insert(timeline.user_id).second) {
      Fail(ErrorCode::kMalformedInput,
           file + ": user " + timeline.user_id + " appears in more than one file");
    }
    for (auto& post : corpus::CleanTimeline(timeline, contractions)) {
      subject_posts += post.is_subject ? 1 : 0;
      posts.push_back(std::move(post));
    }
  }
  std::stable_sort(posts.begin(), posts.end(), [](const auto& a, const auto& b) {
    return a.user_id < b.user_id;
  });
  Emit(cfg, r, "corpus.jsonl", corpus::WriteCorpusJsonl(posts));

  r.result["files"] = files.size();
  r.result["users"] = users.size();
  r.result["posts"] = posts.size();
  r.result["subject_posts"] = subject_posts;

  if (!cfg.paths.labels.empty()) {
    const auto labels = LoadLabelFile(cfg);
    const auto counts = corpus::CountLabels(labels);
    std::vector<std::string> unlabeled;
    for (const auto& u : users) {
      if (!labels.contains(u)) unlabeled.push_back(u);
    }
    std::size_t labels_without_posts = 0;
    for (const auto& [u, label] : labels) {
      labels_without_posts += users.contains(u) ? 0 : 1;
    }
    Emit(cfg, r, "labels.tsv", corpus::WriteLabels(labels));

    OrderedJson discrepancies = OrderedJson::array();
    if (counts.total() != users.size()) {
      discrepancies.push_back("label file covers " + std::to_string(counts.total()) +
                              " users but the corpus has " +
                              std::to_string(users.size()));
    }
    r.result["labels"] = {{"negatives", counts.negatives},
                          {"positives", counts.positives},
                          {"total", counts.total()},
                          {"prevalence", counts.total() > 0
                                             ? static_cast<double>(counts.positives) /
                                                   static_cast<double>(counts.total())
                                             : 0.0}};
    r.result["unlabeled_users"] = unlabeled;
    r.result["labels_without_posts"] = labels_without_posts;
    r.result["discrepancies"] = discrepancies;
  }
  r.result["published_counts"] = {
      {"users", kPublishedUsers},
      {"negatives", kPublishedNegatives},
      {"positives", kPublishedPositives},
      {"label_sum", kPublishedNegatives + kPublishedPositives},
      {"consistent", kPublishedUsers == kPublishedNegatives + kPublishedPositives},
      {"authoritative", "label file"}};
  return r;
}

CommandResult Features(const RunConfig& cfg) {
  CommandResult r;
  const auto users = LoadWritings(cfg);
  std::vector<std::string> documents;
  for (const auto& u : users) {
    for (const auto& p : u.posts) documents.push_back(p.text);
  }
  features::FeatureModels models;
  models.tfidf = features::FitTfidf(documents, cfg.features.max_features);
  models.lexicon = LoadLexicon(cfg);
  models.late_night = cfg.features.late_night;

  std::vector<features::FeatureRow> rows;
  rows.reserve(users.size());
  for (const auto& u : users) rows.push_back(features::AssembleRow(u, models));

  Emit(cfg, r, "tfidf.json", features::TfidfToJson(models.tfidf).dump() + "\n");
  Emit(cfg, r, "features.jsonl", features::WriteFeatureRows(rows));
  Emit(cfg, r, "feature_header.json", features::FeatureHeader(models).dump(2) + "\n");
  r.result["users"] = users.size();
  r.result["posts"] = documents.size();
  r.result["vocabulary"] = models.tfidf.dim();
  r.result["dim"] = models.tfidf.dim() + features::kDenseFeatureCount;
  return r;
}

CommandResult Aggregate(const RunConfig& cfg) {
  CommandResult r;
  const auto users = LoadWritings(cfg);
  const auto emb = LoadEmbeddings(Require(cfg.paths.embeddings, "--embeddings"),
                                  cfg.attention.dim);
  attention::EmbeddingMatrix out(cfg.attention.dim);
  std::string alpha_lines;
  for (const auto& u : users) {
    const auto rows = PostRows(emb, u);
    const auto agg = attention::AggregateUser(attention::EmbeddingRows(rows), cfg.attention);
    out.Add(u.user_id, agg.embedding);
    alpha_lines += OrderedJson{{"user_id", u.user_id},
                               {"first_post", agg.first_post},
                               {"alpha", agg.alpha}}
                       .dump();
    alpha_lines += '\n';
  }
  Emit(cfg, r, "user_embeddings.erkv", attention::WriteEmbeddings(out));
  Emit(cfg, r, "attention_weights.jsonl", alpha_lines);
  r.result["users"] = users.size();
  r.result["post_vectors"] = emb.count();
  r.result["dim"] = cfg.attention.dim;
  return r;
}

CommandResult Train(const RunConfig& cfg) {
  CommandResult r;
  const auto labels = LoadLabelFile(cfg);

  std::vector<std::string> ids;
  std::vector<std::vector<double>> vectors;
  std::string source;
  if (!cfg.paths.features.empty()) {
    source = "features";
    const auto rows = FromFile(cfg.paths.features, [&](const std::string& bytes) {
      return features::ReadFeatureRows(bytes, cfg.paths.features);
    });
    for (const auto& row : rows) {
      ids.push_back(row.user_id);
      vectors.push_back(row.features);
    }
  } else if (!cfg.paths.embeddings.empty()) {
    source = "embeddings";
    const auto emb = LoadEmbeddings(cfg.paths.embeddings, std::nullopt);
    for (std::size_t i = 0; i < emb.count(); ++i) {
      ids.push_back(emb.ids()[i]);
      const auto row = emb.Row(i);
      vectors.emplace_back(row.begin(), row.end());
    }
  } else {
    Fail(ErrorCode::kInvalidConfig, "train needs --features or --embeddings");
  }

  std::vector<std::string> used_ids;
  std::vector<int> y;
  std::size_t unlabeled = 0;
  const std::size_t dim = vectors.empty() ? 0 : vectors.front().size();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (vectors[i].size() != dim) {
      Fail(ErrorCode::kDimMismatch, "row for " + ids[i] + " has a different length");
    }
    auto it = labels.find(ids[i]);
    if (it == labels.end()) {
      ++unlabeled;
      continue;
    }
    used_ids.push_back(ids[i]);
    y.push_back(it->second);
  }
  if (used_ids.empty()) Fail(ErrorCode::kEmptyInput, "no labelled rows to train on");
  model::Matrix x(used_ids.size(), dim);
  for (std::size_t i = 0, k = 0; i < ids.size(); ++i) {
    if (!labels.contains(ids[i])) continue;
    std::copy(vectors[i].begin(), vectors[i].end(), x.Row(k++).begin());
  }

  model::TrainReport report;
  const auto fitted = model::TrainSgd(x, y, cfg.train, &report);
  const auto proba = model::PredictProba(fitted, x);

  model::MemberScores scores;
  for (std::size_t i = 0; i < used_ids.size(); ++i) scores[used_ids[i]] = proba[i];
  Emit(cfg, r, "model.json", model::ModelToJson(fitted, cfg.train).dump(2) + "\n");
  Emit(cfg, r, "train_scores.jsonl", model::SerializeMemberScores(scores));

  OrderedJson history = OrderedJson::array();
  for (const auto& h : report.history) {
    history.push_back({{"epoch", h.epoch},
                       {"train_loss", h.train_loss},
                       {"validation_auc", Nullable(h.validation_auc)}});
  }
  const auto positives = std::count(y.begin(), y.end(), 1);
  r.result["source"] = source;
  r.result["samples"] = y.size();
  r.result["dim"] = dim;
  r.result["positives"] = positives;
  r.result["negatives"] = static_cast<long>(y.size()) - positives;
  r.result["unlabeled_rows"] = unlabeled;
  r.result["class_weights"] = {{"w0", report.class_weights.w0},
                               {"w1", report.class_weights.w1},
                               {"ratio", report.class_weights.w1 / report.class_weights.w0}};
  r.result["epochs_run"] = report.epochs_run;
  r.result["best_epoch"] = report.best_epoch;
  r.result["early_stopped"] = report.early_stopped;
  r.result["best_validation_auc"] = Nullable(report.best_validation_auc);
  r.result["training_auc"] = model::RocAuc(proba, y);
  r.result["history"] = history;
  return r;
}

CommandResult Simulate(const RunConfig& cfg) {
  CommandResult r;
  const auto users = LoadWritings(cfg);
  const auto& sim = cfg.simulate;

  std::vector<model::MemberScores> members;
  for (const auto& path : cfg.paths.members) {
    members.push_back(FromFile(path, [&](const std::string& bytes) {
      return model::ParseMemberScores(bytes, path);
    }));
  }

  model::LinearModel linear;
  if (sim.scorer != "constant") {
    const auto& path = Require(cfg.paths.model, "--model");
    linear = FromFile(path, [&](const std::string& bytes) {
      return model::ModelFromJson(ParseJson(bytes, path));
    });
  }

  stream::Scorer base;
  features::FeatureModels fm;
  attention::EmbeddingMatrix emb(cfg.attention.dim);
  std::map<std::string, std::vector<std::span<const float>>> post_rows;
  if (sim.scorer == "features") {
    const auto& path = Require(cfg.paths.tfidf, "--tfidf");
    fm.tfidf = FromFile(path, [&](const std::string& bytes) {
      return features::TfidfFromJson(ParseJson(bytes, path));
    });
    fm.lexicon = LoadLexicon(cfg);
    fm.late_night = cfg.features.late_night;
    base = [&](const corpus::UserWritings& user, std::size_t seen) {
      corpus::UserWritings prefix{user.user_id, {}};
      prefix.posts.assign(user.posts.begin(), user.posts.begin() + seen);
      return model::PredictProba(linear, features::AssembleRow(prefix, fm).features);
    };
  } else if (sim.scorer == "attention") {
    emb = LoadEmbeddings(Require(cfg.paths.embeddings, "--embeddings"), cfg.attention.dim);
    for (const auto& u : users) post_rows[u.user_id] = PostRows(emb, u);
    base = [&](const corpus::UserWritings& user, std::size_t seen) {
      const auto& rows = post_rows.at(user.user_id);
      const auto agg = attention::AggregateUser(
          attention::EmbeddingRows(rows.data(), seen), cfg.attention);
      const std::vector<double> x(agg.embedding.begin(), agg.embedding.end());
      return model::PredictProba(linear, x);
    };
  } else {
    base = [&](const corpus::UserWritings&, std::size_t seen) {
      return static_cast<int>(seen) >= sim.constant_from_round ? sim.constant_score : 0.0;
    };
  }

  stream::Scorer scorer = base;
  if (!members.empty()) {
    scorer = [&](const corpus::UserWritings& user, std::size_t seen) {
      std::vector<std::vector<double>> votes{{base(user, seen)}};
      for (std::size_t m = 0; m < members.size(); ++m) {
        const std::string ids[] = {user.user_id};
        votes.push_back(model::AlignMemberScores(members[m], ids, cfg.paths.members[m]));
      }
      return model::SoftVote(votes).front();
    };
  }

  const auto result = stream::RunSimulation(users, scorer, sim.threshold);
  Emit(cfg, r, "emissions.jsonl", stream::WriteEmissions(result.emissions));

  int positives = 0;
  int rounds = 0;
  for (const auto& o : result.outcomes) {
    positives += o.final_decision;
    rounds = std::max(rounds, o.delay);
  }
  r.result["users"] = result.outcomes.size();
  r.result["emissions"] = result.emissions.size();
  r.result["rounds"] = rounds;
  r.result["positive_decisions"] = positives;
  r.result["scorer"] = sim.scorer;
  r.result["members"] = members.size();
  return r;
}

namespace {

std::vector<stream::StreamOutcome> LoadOutcomes(const RunConfig& cfg) {
  const auto& path = Require(cfg.paths.emissions, "--emissions");
  return FromFile(path, [&](const std::string& bytes) {
    return stream::OutcomesFromEmissions(stream::ReadEmissions(bytes, path));
  });
}

}  // namespace

CommandResult EvalStream(const RunConfig& cfg) {
  CommandResult r;
  const auto outcomes = LoadOutcomes(cfg);
  const auto labels = LoadLabelFile(cfg);
  r.result = stream::DecisionReport(outcomes, labels, cfg.stream);
  return r;
}

CommandResult EvalRank(const RunConfig& cfg) {
  CommandResult r;
  const auto outcomes = LoadOutcomes(cfg);
  const auto labels = LoadLabelFile(cfg);
  r.result = stream::RankingReport(outcomes, labels, cfg.stream);
  return r;
}

CommandResult EvalPilot(const RunConfig& cfg) {
  CommandResult r;
  const auto gold = FromFile(Require(cfg.paths.gold, "--gold"),
                             [](const std::string& b) { return pilot::ParseGold(b); });
  const auto submission =
      FromFile(Require(cfg.paths.submission, "--submission"),
               [](const std::string& b) { return pilot::ParseSubmission(b); });
  r.result = pilot::ToJson(pilot::ScoreSubmission(submission, gold));
  r.result["personas"] = gold.size();
  return r;
}

CommandResult AuditTranscripts(const RunConfig& cfg) {
  CommandResult r;
  const auto files = ExpandInputs(cfg.paths.transcripts, "--transcripts");
  const auto choice = pilot::ParseEdlChoice(cfg.pilot.edl_choice);

  std::vector<pilot::Transcript> valid;
  OrderedJson invalid = OrderedJson::array();
  for (const auto& file : files) {
    try {
      for (auto& t : pilot::ParseTranscriptFile(ReadFile(file))) valid.push_back(std::move(t));
    } catch (const SchemaError& e) {
      invalid.push_back({{"file", file},
                         {"error", ErrorCodeName(e.code())},
                         {"path", e.path()},
                         {"reason", e.reason()}});
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kIoError) throw;
      invalid.push_back({{"file", file},
                         {"error", ErrorCodeName(e.code())},
                         {"path", ""},
                         {"reason", e.message()}});
    }
  }
  std::stable_sort(valid.begin(), valid.end(), [](const auto& a, const auto& b) {
    return std::tie(a.model, a.persona) < std::tie(b.model, b.persona);
  });

  OrderedJson summation = OrderedJson::object();
  for (const auto& [model, audit] : pilot::AuditSummation(valid)) {
    summation[model] = pilot::ToJson(audit);
  }
  const auto table = pilot::CollectItemScores(valid);
  OrderedJson agreement = nullptr;
  if (table.size() >= 2) {
    const auto selector = cfg.pilot.agreement_turn > 0
                              ? pilot::TurnSelector::AtTurn(cfg.pilot.agreement_turn)
                              : pilot::TurnSelector::Last();
    try {
      agreement = pilot::ToJson(
          pilot::AgreementStd(table, selector, cfg.pilot.agreement_threshold));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kEmptyInput) throw;
    }
  }
  OrderedJson fit = nullptr;
  try {
    fit = pilot::ToJson(pilot::FitClassificationLevels(valid, choice));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDegenerateX) throw;
  }

  r.result["files"] = files.size();
  r.result["transcripts"] = valid.size();
  r.result["invalid"] = invalid;
  r.result["summation"] = summation;
  r.result["agreement"] = agreement;
  r.result["classification_fit"] = fit;
  r.result["edl_choice"] = pilot::EdlChoiceName(choice);
  if (!invalid.empty()) {
    r.exit_code = 2;
    for (const auto& bad : invalid) {
      spdlog::error("{}: {} at {}: {}", bad["file"].get<std::string>(),
                    bad["error"].get<std::string>(), bad["path"].get<std::string>(),
                    bad["reason"].get<std::string>());
    }
  }
  return r;
}

CommandResult Submit(const RunConfig& cfg) {
  CommandResult r;
  const auto choice = pilot::ParseEdlChoice(cfg.pilot.edl_choice);
  const auto by_model =
      ByModel(LoadTranscripts(ExpandInputs(cfg.paths.transcripts, "--transcripts")));
  OrderedJson runs = OrderedJson::object();
  for (const auto& [model, transcripts] : by_model) {
    const auto entries = pilot::BuildSubmission(transcripts, choice);
    const std::string name = "submission_" + SafeFileStem(model) + ".json";
    Emit(cfg, r, name, pilot::SubmissionToJson(entries).dump(2) + "\n");
    runs[model] = {{"file", name}, {"personas", entries.size()}};
  }
  r.result["runs"] = runs;
  r.result["edl_choice"] = pilot::EdlChoiceName(choice);
  return r;
}

CommandResult Stats(const RunConfig& cfg) {
  CommandResult r;
  if (cfg.paths.corpus.empty() && cfg.paths.transcripts.empty()) {
    Fail(ErrorCode::kInvalidConfig, "stats needs --corpus and/or --transcripts");
  }
  if (!cfg.paths.corpus.empty()) {
    const auto users = LoadWritings(cfg);
    std::optional<corpus::LabelTable> labels;
    if (!cfg.paths.labels.empty()) labels = LoadLabelFile(cfg);

    // group -> metric -> values
    std::map<std::string, std::map<std::string, std::vector<double>>> groups;
    for (const auto& u : users) {
      const auto a = features::ComputeActivity(u.posts, cfg.features.late_night);
      std::vector<std::string> keys = {"all"};
      if (labels) {
        auto it = labels->find(u.user_id);
        keys.push_back(it == labels->end() ? "unlabeled"
                                           : "label_" + std::to_string(it->second));
      }
      for (const auto& key : keys) {
        auto& g = groups[key];
        g["post_count"].push_back(static_cast<double>(a.post_count));
        g["span_hours"].push_back(a.span_hours);
        g["post_frequency"].push_back(a.post_frequency);
        g["late_night_posts"].push_back(static_cast<double>(a.late_night_posts));
        g["mean_post_gap"].push_back(a.mean_post_gap);
      }
    }
    OrderedJson box = OrderedJson::object();
    for (const auto& [group, metrics] : groups) {
      OrderedJson g = OrderedJson::object();
      for (const auto& [metric, values] : metrics) {
        g[metric] = features::BoxStatsToJson(features::ComputeBoxStats(values));
      }
      box[group] = g;
    }
    r.result["activity_box"] = box;
  }
  if (!cfg.paths.transcripts.empty()) {
    const auto transcripts =
        LoadTranscripts(ExpandInputs(cfg.paths.transcripts, "--transcripts"));
    std::vector<std::string> fields;
    if (cfg.pilot.token_field == "all") {
      fields = {"input", "output", "reason"};
    } else {
      fields = {cfg.pilot.token_field};
    }
    OrderedJson tokens = OrderedJson::object();
    for (const auto& field : fields) {
      OrderedJson per_model = OrderedJson::object();
      for (const auto& [model, stats] :
           pilot::TokenStatsByModel(transcripts, pilot::ParseTextField(field))) {
        per_model[model] = pilot::ToJson(stats);
      }
      tokens[field] = per_model;
    }
    OrderedJson trajectories = OrderedJson::object();
    for (const auto& [model, group] : ByModel(transcripts)) {
      trajectories[model] = pilot::ToJson(pilot::ComputeTrajectory(group));
    }
    r.result["tokens"] = tokens;
    r.result["trajectories"] = trajectories;
  }
  return r;
}

}  // namespace riskbench::cli
