#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "../oracles/stream_oracle.h"
#include "riskbench/attention/embeddings.h"
#include "riskbench/attention/temporal_attention.h"
#include "riskbench/cli/run.h"
#include "riskbench/corpus/contractions.h"
#include "riskbench/corpus/labels.h"
#include "riskbench/corpus/timeline.h"
#include "riskbench/model/logistic.h"
#include "riskbench/util/io.h"

namespace riskbench::cli {
namespace {

namespace fs = std::filesystem;

const std::string kFixtures = RISKBENCH_FIXTURE_DIR;
const std::string kPipeline = kFixtures + "/pipeline";
const std::string kPostVectors = kFixtures + "/pipeline_posts.erkv";

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun RunCli(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"riskbench"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CliRun r;
  r.code = Run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag)
      : path_(fs::temp_directory_path() /
              ("riskbench_" + tag + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }
  std::string str() const { return path_.string(); }

 private:
  fs::path path_;
};

Json Report(const TempDir& dir, const std::string& command) {
  return Json::parse(ReadFile(dir / (command + "_report.json")));
}

// Runs ingest through eval-rank on the six-user fixture.
void RunPipeline(const TempDir& d) {
  const std::vector<std::vector<std::string>> steps = {
      {"ingest", "--input", kPipeline + "/raw", "--labels", kPipeline + "/labels.tsv"},
      {"features", "--corpus", d / "corpus.jsonl"},
      {"aggregate", "--corpus", d / "corpus.jsonl", "--embeddings", kPostVectors},
      {"train", "--labels", d / "labels.tsv", "--embeddings",
       d / "user_embeddings.erkv", "--epochs", "50", "--learning-rate", "0.05"},
      {"simulate", "--corpus", d / "corpus.jsonl", "--embeddings", kPostVectors,
       "--scorer", "attention", "--model", d / "model.json"},
      {"eval-stream", "--emissions", d / "emissions.jsonl", "--labels",
       d / "labels.tsv", "--erde", "1", "2", "3", "5", "50"},
      {"eval-rank", "--emissions", d / "emissions.jsonl", "--labels", d / "labels.tsv",
       "--checkpoints", "1", "2", "3", "4", "100", "--cutoffs", "1", "2", "3", "10",
       "100"},
  };
  for (auto args : steps) {
    args.insert(args.begin(), {"--seed", "42", "--out", d.str()});
    const CliRun r = RunCli(args);
    ASSERT_EQ(r.code, kExitOk) << args[4] << ": " << r.err;
  }
}

std::vector<corpus::UserWritings> FixtureWritings() {
  std::vector<corpus::CleanPost> posts;
  for (const auto& entry : fs::directory_iterator(kPipeline + "/raw")) {
    const auto timeline = corpus::ParseUserFile(ReadFile(entry.path()));
    for (auto& p : corpus::CleanTimeline(timeline, corpus::ContractionTable::Default())) {
      posts.push_back(std::move(p));
    }
  }
  return corpus::GroupByUser(posts, true);
}

TEST(CliPipelineTest, EndToEndAgainstModuleOracles) {
  TempDir d("pipeline");
  RunPipeline(d);
  if (HasFatalFailure()) return;

  // Corpus: the raw files cleaned one by one.
  const auto want_users = FixtureWritings();
  const auto got_users = corpus::GroupByUser(
      corpus::ReadCorpusJsonl(ReadFile(d / "corpus.jsonl")), true);
  ASSERT_EQ(got_users.size(), 6u);
  ASSERT_EQ(got_users.size(), want_users.size());
  for (std::size_t i = 0; i < got_users.size(); ++i) {
    ASSERT_EQ(got_users[i].user_id, want_users[i].user_id);
    ASSERT_EQ(got_users[i].posts.size(), want_users[i].posts.size());
    for (std::size_t k = 0; k < got_users[i].posts.size(); ++k) {
      EXPECT_EQ(got_users[i].posts[k].text, want_users[i].posts[k].text);
      EXPECT_EQ(got_users[i].posts[k].timestamp, want_users[i].posts[k].timestamp);
    }
  }
  EXPECT_EQ(Report(d, "ingest")["result"]["users"], 6);

  // Aggregation: one pooled vector per user.
  const attention::AttentionConfig acfg;
  const auto post_vectors = attention::ReadEmbeddings(ReadFile(kPostVectors), acfg.dim);
  const auto pooled = attention::ReadEmbeddings(ReadFile(d / "user_embeddings.erkv"));
  auto rows_of = [&](const corpus::UserWritings& u, std::size_t seen) {
    std::vector<std::vector<float>> rows;
    for (std::size_t k = 0; k < seen; ++k) {
      const auto row = *post_vectors.Find(u.posts[k].post_id);
      rows.emplace_back(row.begin(), row.end());
    }
    return rows;
  };
  for (const auto& u : want_users) {
    const auto agg = attention::AggregateUser(rows_of(u, u.posts.size()), acfg);
    const auto got = *pooled.Find(u.user_id);
    ASSERT_EQ(got.size(), agg.embedding.size());
    for (std::size_t j = 0; j < got.size(); ++j) EXPECT_EQ(got[j], agg.embedding[j]);
  }

  // Stream metrics: prefix scores recomputed here, then the naive evaluator.
  const auto model =
      model::ModelFromJson(Json::parse(ReadFile(d / "model.json")));
  const auto labels = corpus::LoadLabels(ReadFile(kPipeline + "/labels.tsv"));
  std::vector<testing::ToyUser> toys;
  for (const auto& u : want_users) {
    testing::ToyUser t{u.user_id, labels.at(u.user_id), {}};
    for (std::size_t seen = 1; seen <= u.posts.size(); ++seen) {
      const auto agg = attention::AggregateUser(rows_of(u, seen), acfg);
      t.scores.push_back(model::PredictProba(
          model, std::vector<double>(agg.embedding.begin(), agg.embedding.end())));
    }
    toys.push_back(t);
  }
  const auto want = testing::NaiveEvaluate(toys, 0.5, {1, 2, 3, 5, 50},
                                           {1, 2, 3, 4, 100}, {1, 2, 3, 10, 100}, 0.0078);
  const Json m = Report(d, "eval-stream")["result"]["metrics"];
  EXPECT_NEAR(m["P"].get<double>(), want.precision, 1e-12);
  EXPECT_NEAR(m["R"].get<double>(), want.recall, 1e-12);
  EXPECT_NEAR(m["F1"].get<double>(), want.f1, 1e-12);
  for (const auto& [o, v] : want.erde) {
    EXPECT_NEAR(m["ERDE_" + std::to_string(o)].get<double>(), v, 1e-12) << o;
  }
  ASSERT_EQ(m["F_latency"].is_null(), !want.f_latency.has_value());
  if (want.f_latency) {
    EXPECT_NEAR(m["latency_TP"].get<double>(), *want.latency_tp, 1e-12);
    EXPECT_NEAR(m["F_latency"].get<double>(), *want.f_latency, 1e-12);
  }
  // The indicator coordinates separate the fixture classes.
  EXPECT_EQ(Report(d, "train")["result"]["training_auc"], 1.0);

  const Json checkpoints = Report(d, "eval-rank")["result"]["checkpoints"];
  ASSERT_EQ(checkpoints.size(), 5u);
  for (const auto& cp : checkpoints) {
    const int c = cp["writings"];
    for (int k : {1, 2, 3, 10, 100}) {
      EXPECT_NEAR(cp["metrics"]["P@" + std::to_string(k)].get<double>(),
                  want.p_at.at({c, k}), 1e-12);
      EXPECT_NEAR(cp["metrics"]["NDCG@" + std::to_string(k)].get<double>(),
                  want.ndcg_at.at({c, k}), 1e-12);
    }
  }
}

TEST(CliPipelineTest, RerunIsByteIdentical) {
  TempDir d("rerun");
  RunPipeline(d);
  if (HasFatalFailure()) return;
  std::map<std::string, std::string> first;
  for (const auto& e : fs::directory_iterator(d.str())) {
    first[e.path().filename().string()] = ReadFile(e.path());
  }
  RunPipeline(d);
  if (HasFatalFailure()) return;
  for (const auto& [name, bytes] : first) {
    const std::string again = ReadFile(d / name);
    if (name.ends_with("_report.json")) {
      Json a = Json::parse(bytes), b = Json::parse(again);
      a.erase("generated_at");
      b.erase("generated_at");
      EXPECT_EQ(a, b) << name;
    } else {
      EXPECT_EQ(again, bytes) << name;
    }
  }
}

TEST(CliTest, ExitCodes) {
  TempDir d("exit");
  EXPECT_EQ(RunCli({}).code, kExitUsage);
  EXPECT_EQ(RunCli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"eval-stream", "--bogus-flag", "1"}).code, kExitUsage);
  EXPECT_EQ(RunCli({"--out", d.str(), "simulate", "--threshold", "1.5"}).code,
            kExitUsage);

  const CliRun missing = RunCli({"--out", d.str(), "eval-stream", "--emissions",
                                 d / "nope.jsonl", "--labels", d / "nope.tsv"});
  EXPECT_EQ(missing.code, kExitData);
  EXPECT_NE(missing.err.find("nope"), std::string::npos);

  WriteFileAtomic(d / "bad.tsv", "user_id\tlabel\nu1\t7\n");
  WriteFileAtomic(d / "e.jsonl", "");
  EXPECT_EQ(RunCli({"--out", d.str(), "eval-stream", "--emissions", d / "e.jsonl",
                    "--labels", d / "bad.tsv"})
                .code,
            kExitData);
  EXPECT_EQ(RunCli({"--help"}).code, kExitOk);
}

TEST(CliTest, BinaryExitStatus) {
  const std::string bin = RISKBENCH_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("no-such-command"), 1);
  EXPECT_EQ(status("--out /tmp eval-pilot --gold /nonexistent --submission /nonexistent"),
            2);
  EXPECT_EQ(status("--help"), 0);
}

TEST(CliTest, ConfigPrecedence) {
  TempDir d("config");
  RunCli({"--out", d.str(), "ingest", "--input", kPipeline + "/raw", "--labels",
          kPipeline + "/labels.tsv"});
  RunCli({"--out", d.str(), "features", "--corpus", d / "corpus.jsonl"});
  WriteFileAtomic(d / "cfg.json", Json{{"seed", 7},
                                       {"train", {{"epochs", 3}, {"l2_lambda", 0.5}}},
                                       {"paths",
                                        {{"labels", d / "labels.tsv"},
                                         {"features", d / "features.jsonl"}}}}
                                      .dump());
  const CliRun r = RunCli({"--config", d / "cfg.json", "--out", d.str(), "train",
                           "--epochs", "5"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json rep = Report(d, "train");
  EXPECT_EQ(rep["seed"], 7);                               // file over default
  EXPECT_EQ(rep["config"]["train"]["epochs"], 5);          // flag over file
  EXPECT_EQ(rep["config"]["train"]["l2_lambda"], 0.5);     // file over default
  EXPECT_EQ(rep["config"]["train"]["learning_rate"], 0.01);  // default
  EXPECT_EQ(rep["result"]["epochs_run"], 5);

  const CliRun seeded = RunCli({"--config", d / "cfg.json", "--seed", "9", "--out",
                                d.str(), "train"});
  ASSERT_EQ(seeded.code, kExitOk) << seeded.err;
  EXPECT_EQ(Report(d, "train")["seed"], 9);
  EXPECT_EQ(Report(d, "train")["config"]["train"]["epochs"], 3);

  WriteFileAtomic(d / "broken.json", "{\"train\": 4}");
  EXPECT_EQ(RunCli({"--config", d / "broken.json", "--out", d.str(), "train"}).code,
            kExitUsage);
}

TEST(CliTest, ConstantScorerFlagsEveryoneAtTheChosenRound) {
  TempDir d("constant");
  RunCli({"--out", d.str(), "ingest", "--input", kPipeline + "/raw"});
  ASSERT_EQ(RunCli({"--out", d.str(), "simulate", "--corpus", d / "corpus.jsonl",
                    "--scorer", "constant", "--from-round", "2"})
                .code,
            kExitOk);
  ASSERT_EQ(RunCli({"--out", d.str(), "eval-stream", "--emissions",
                    d / "emissions.jsonl", "--labels", kPipeline + "/labels.tsv"})
                .code,
            kExitOk);
  const Json res = Report(d, "eval-stream")["result"];
  EXPECT_EQ(res["confusion"]["tp"], 3);
  EXPECT_EQ(res["confusion"]["fp"], 3);
  EXPECT_EQ(res["metrics"]["latency_TP"], 2.0);
  EXPECT_EQ(res["metrics"]["R"], 1.0);
}

TEST(CliPilotTest, SubmitAuditAndEvaluate) {
  TempDir d("pilot");
  const std::string transcripts = kFixtures + "/pilot";
  const CliRun audit =
      RunCli({"--out", d.str(), "audit-transcripts", "--transcripts", transcripts});
  ASSERT_EQ(audit.code, kExitOk) << audit.err;
  const Json ar = Report(d, "audit-transcripts")["result"];
  EXPECT_EQ(ar["transcripts"], 1);
  EXPECT_EQ(ar["summation"]["listing-model"]["correct_pct"], 1.0);
  EXPECT_TRUE(ar["agreement"].is_null());

  ASSERT_EQ(RunCli({"--out", d.str(), "submit", "--transcripts", transcripts,
                    "--edl-choice", "last"})
                .code,
            kExitOk);
  const std::string sub = d / "submission_listing-model.json";
  ASSERT_TRUE(fs::exists(sub));

  WriteFileAtomic(d / "gold.json", R"([{"persona":"persona-listing","bdi":14,
    "symptoms":["Tiredness or fatigue","Sadness","Crying","Agitation"]}])");
  const CliRun eval = RunCli({"--out", d.str(), "eval-pilot", "--gold", d / "gold.json",
                              "--submission", sub});
  ASSERT_EQ(eval.code, kExitOk) << eval.err;
  const Json pr = Report(d, "eval-pilot")["result"];
  EXPECT_EQ(pr["dchr"], 1.0);
  EXPECT_EQ(pr["adodl"], 1.0);
  EXPECT_EQ(pr["ashr"], 0.25);
  EXPECT_TRUE(pr.contains("ashr_per_persona"));

  // A schema violation is reported and exits with the data code.
  Json bad = Json::parse(ReadFile(transcripts + "/listing1.json"));
  bad["turns"][2]["evaluation"]["bdi_scores"]["q05_guilty_feelings"]["score"] = 9;
  fs::create_directories(d / "bad");
  WriteFileAtomic(d / "bad/t.json", bad.dump());
  EXPECT_EQ(RunCli({"--out", d.str(), "audit-transcripts", "--transcripts", d / "bad"})
                .code,
            kExitData);
  const Json invalid = Report(d, "audit-transcripts")["result"]["invalid"];
  ASSERT_EQ(invalid.size(), 1u);
  EXPECT_EQ(invalid[0]["path"],
            "/turns/2/evaluation/bdi_scores/q05_guilty_feelings/score");
}

}  // namespace
}  // namespace riskbench::cli
