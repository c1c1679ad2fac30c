#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "../oracles/stream_oracle.h"
#include "riskbench/stream/decision_metrics.h"
#include "riskbench/stream/ranking_metrics.h"
#include "riskbench/stream/simulation.h"
#include "riskbench/util/error.h"

namespace riskbench::stream {
namespace {

using testing::ToyUser;

template <typename F>
ErrorCode CodeOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kIoError;
}

std::vector<corpus::UserWritings> Users(std::vector<int> lengths) {
  std::vector<ToyUser> toy;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    toy.push_back({"u" + std::to_string(i + 1), 0,
                   std::vector<double>(lengths[i], 0.0)});
  }
  return testing::ToWritings(toy);
}

StreamOutcome Outcome(std::string id, int decision, int delay) {
  return {std::move(id), decision, delay, std::vector<double>(delay, 0.0)};
}

TEST(SimulationTest, AlwaysPositiveResolvesAtRoundOne) {
  const auto users = Users({3, 1, 2});
  const auto sim = RunSimulation(users, [](const auto&, std::size_t) { return 1.0; });
  ASSERT_EQ(sim.emissions.size(), 3u);
  for (const auto& e : sim.emissions) EXPECT_EQ(e.round, 1);
  for (const auto& o : sim.outcomes) {
    EXPECT_EQ(o.final_decision, 1);
    EXPECT_EQ(o.delay, 1);
  }
}

TEST(SimulationTest, PositiveFromRoundTwo) {
  const auto users = Users({3, 2, 5});
  const auto sim = RunSimulation(
      users, [](const auto&, std::size_t seen) { return seen >= 2 ? 1.0 : 0.0; });
  for (const auto& o : sim.outcomes) {
    EXPECT_EQ(o.final_decision, 1);
    EXPECT_EQ(o.delay, 2);
  }
  EXPECT_EQ(sim.emissions.size(), 6u);
}

TEST(SimulationTest, HandTracedRun) {
  // u1: 0.2, 0.6 -> positive at round 2.  u2: 0.1 only -> negative, delay 1.
  // u3: 0.4, 0.3, 0.45 -> negative, delay 3.
  const std::vector<ToyUser> toy = {{"u1", 1, {0.2, 0.6, 0.9}},
                                    {"u2", 0, {0.1}},
                                    {"u3", 0, {0.4, 0.3, 0.45}}};
  const auto sim =
      RunSimulation(testing::ToWritings(toy), testing::ToyScorer(toy), 0.5);
  const std::vector<RoundEmission> expected = {
      {1, "u1", 0, 0.2}, {1, "u2", 0, 0.1}, {1, "u3", 0, 0.4},
      {2, "u1", 1, 0.6}, {2, "u3", 0, 0.3}, {3, "u3", 0, 0.45}};
  EXPECT_EQ(sim.emissions, expected);
  EXPECT_EQ(sim.outcomes[0], (StreamOutcome{"u1", 1, 2, {0.2, 0.6}}));
  EXPECT_EQ(sim.outcomes[1], (StreamOutcome{"u2", 0, 1, {0.1}}));
  EXPECT_EQ(sim.outcomes[2], (StreamOutcome{"u3", 0, 3, {0.4, 0.3, 0.45}}));

  const auto at5 = ScoresAtCheckpoint(sim.outcomes, 5);
  EXPECT_EQ(at5.at("u1"), 0.6);
  EXPECT_EQ(at5.at("u2"), 0.1);
  EXPECT_EQ(at5.at("u3"), 0.45);
}

TEST(SimulationTest, ScorerSeesOnlyReleasedWritings) {
  const auto users = Users({4, 2});
  std::vector<std::pair<std::string, std::size_t>> calls;
  RunSimulation(users, [&](const corpus::UserWritings& u, std::size_t seen) {
    EXPECT_LE(seen, u.posts.size());
    calls.push_back({u.user_id, seen});
    return 0.0;
  });
  const std::vector<std::pair<std::string, std::size_t>> expected = {
      {"u1", 1}, {"u2", 1}, {"u1", 2}, {"u2", 2}, {"u1", 3}, {"u1", 4}};
  EXPECT_EQ(calls, expected);
}

TEST(SimulationTest, Errors) {
  const auto users = Users({2, 2});
  try {
    RunSimulation(users, [](const corpus::UserWritings& u, std::size_t seen) {
      if (u.user_id == "u2" && seen == 2) throw std::runtime_error("boom");
      return 0.0;
    });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kScorerFailure);
    EXPECT_NE(std::string(e.what()).find("u2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("round 2"), std::string::npos);
  }
  EXPECT_EQ(CodeOf([&] {
              RunSimulation(users, [](const auto&, std::size_t) { return 1.5; });
            }),
            ErrorCode::kScorerFailure);
  std::vector<corpus::UserWritings> empty = {{"e", {}}};
  EXPECT_EQ(CodeOf([&] {
              RunSimulation(empty, [](const auto&, std::size_t) { return 0.0; });
            }),
            ErrorCode::kEmptyTimeline);
}

TEST(EmissionsTest, RoundTripAndProtocolChecks) {
  const std::vector<RoundEmission> log = {
      {1, "a", 0, 0.25}, {1, "b", 1, 0.75}, {2, "a", 0, 0.125}};
  EXPECT_EQ(ReadEmissions(WriteEmissions(log)), log);
  const auto outcomes = OutcomesFromEmissions(log);
  ASSERT_EQ(outcomes.size(), 2u);
  EXPECT_EQ(outcomes[0], (StreamOutcome{"a", 0, 2, {0.25, 0.125}}));
  EXPECT_EQ(outcomes[1], (StreamOutcome{"b", 1, 1, {0.75}}));

  const std::vector<RoundEmission> after_positive = {{1, "b", 1, 0.9},
                                                     {2, "b", 0, 0.1}};
  EXPECT_EQ(CodeOf([&] { OutcomesFromEmissions(after_positive); }),
            ErrorCode::kMalformedInput);
  const std::vector<RoundEmission> gap = {{1, "a", 0, 0.1}, {3, "a", 0, 0.1}};
  EXPECT_EQ(CodeOf([&] { OutcomesFromEmissions(gap); }),
            ErrorCode::kMalformedInput);
  EXPECT_EQ(CodeOf([] { ReadEmissions("{\"round\":1}\n"); }),
            ErrorCode::kMalformedInput);
}

TEST(DecisionMetricsTest, FlagAllPrevalence) {
  std::vector<StreamOutcome> outcomes;
  corpus::LabelTable labels;
  for (int i = 0; i < 2743; ++i) {
    const std::string id = "u" + std::to_string(i);
    outcomes.push_back(Outcome(id, 1, 2));
    labels[id] = i < 297 ? 1 : 0;
  }
  const Prf prf = PrecisionRecallF1(outcomes, labels);
  EXPECT_NEAR(prf.precision, 297.0 / 2743.0, 1e-15);
  EXPECT_EQ(prf.recall, 1.0);
  EXPECT_NEAR(prf.f1, 2 * 297.0 / (2743.0 + 297.0), 1e-15);
  EXPECT_EQ(std::round(prf.precision * 100) / 100, 0.11);
  EXPECT_EQ(std::round(prf.f1 * 100) / 100, 0.20);

  const LatencyMetrics lat = ComputeLatencyMetrics(outcomes, labels, {});
  EXPECT_EQ(*lat.latency_tp, 2.0);
  EXPECT_NEAR(*lat.speed, 1.0 - (-1.0 + 2.0 / (1.0 + std::exp(-0.0078))), 1e-15);
  EXPECT_EQ(std::round(*lat.speed * 100) / 100, 1.00);
}

TEST(DecisionMetricsTest, Conventions) {
  corpus::LabelTable labels = {{"a", 1}, {"b", 0}};
  const std::vector<StreamOutcome> perfect = {Outcome("a", 1, 1),
                                              Outcome("b", 0, 1)};
  const Prf p = PrecisionRecallF1(perfect, labels);
  EXPECT_EQ(p.precision, 1.0);
  EXPECT_EQ(p.recall, 1.0);
  EXPECT_EQ(p.f1, 1.0);
  const std::vector<StreamOutcome> none = {Outcome("a", 0, 1), Outcome("b", 0, 1)};
  const Prf z = PrecisionRecallF1(none, labels);
  EXPECT_EQ(z.precision + z.recall + z.f1, 0.0);
  const LatencyMetrics lat = ComputeLatencyMetrics(none, labels, {});
  EXPECT_FALSE(lat.latency_tp || lat.speed || lat.f_latency);

  const std::vector<StreamOutcome> stranger = {Outcome("c", 0, 1)};
  EXPECT_EQ(CodeOf([&] { PrecisionRecallF1(stranger, labels); }),
            ErrorCode::kMissingLabel);
  EXPECT_EQ(CodeOf([&] { Erde(stranger, labels, 5, {}); }),
            ErrorCode::kMissingLabel);
}

TEST(ErdeTest, Examples) {
  corpus::LabelTable labels = {{"a", 0}, {"b", 0}};
  const std::vector<StreamOutcome> tn = {Outcome("a", 0, 3), Outcome("b", 0, 3)};
  EXPECT_EQ(Erde(tn, labels, 5, {}), 0.0);

  labels = {{"tp", 1}, {"fp", 0}, {"tn1", 0}, {"tn2", 0}};
  const std::vector<StreamOutcome> four = {Outcome("tp", 1, 3),
                                           Outcome("fp", 1, 1),
                                           Outcome("tn1", 0, 2),
                                           Outcome("tn2", 0, 2)};
  StreamMetricConfig cfg;
  cfg.c_fp_fixed = 0.25;
  const double tp_cost = 1.0 - 1.0 / (1.0 + std::exp(-2.0));
  EXPECT_NEAR(tp_cost, 0.1192, 1e-4);
  EXPECT_NEAR(Erde(four, labels, 5, cfg), (tp_cost + 0.25) / 4, 1e-15);
  EXPECT_NEAR(Erde(four, labels, 5, cfg), 0.0923, 1e-4);
  // Prevalence default: one positive among four users.
  EXPECT_NEAR(Erde(four, labels, 5, {}), (tp_cost + 0.25) / 4, 1e-15);

  for (int k : {1, 5, 50, 1000}) EXPECT_EQ(ErdeTruePositiveCost(k, k), 0.5);
  EXPECT_EQ(CodeOf([&] { Erde(four, labels, 0, cfg); }),
            ErrorCode::kInvalidConfig);
}

TEST(ErdeTest, MonotoneInDelayAndBounded) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<StreamOutcome> outcomes;
    corpus::LabelTable labels;
    for (int i = 0; i < 6; ++i) {
      const std::string id = "u" + std::to_string(i);
      labels[id] = static_cast<int>(rng() % 2);
      outcomes.push_back(Outcome(id, static_cast<int>(rng() % 2),
                                 1 + static_cast<int>(rng() % 60)));
    }
    for (int o : {1, 5, 50}) {
      const double base = Erde(outcomes, labels, o, {});
      EXPECT_GE(base, 0.0);
      EXPECT_LE(base, 1.0);
      for (auto& out : outcomes) {
        if (out.final_decision != 1 || labels[out.user_id] != 1) continue;
        auto later = outcomes;
        for (auto& l : later) {
          if (l.user_id == out.user_id) l.delay += 1 + static_cast<int>(rng() % 20);
        }
        EXPECT_GE(Erde(later, labels, o, {}), base);
      }
    }
    const LatencyMetrics lat = ComputeLatencyMetrics(outcomes, labels, {});
    if (lat.speed) {
      EXPECT_GT(*lat.speed, -1.0);
      EXPECT_LE(*lat.speed, 1.0);
      EXPECT_LE(*lat.f_latency, PrecisionRecallF1(outcomes, labels).f1);
    }
  }
}

TEST(LatencyTest, Examples) {
  EXPECT_EQ(LatencyPenalty(1, 0.0078), 0.0);
  corpus::LabelTable labels = {{"a", 1}, {"b", 1}, {"c", 1}};
  const std::vector<StreamOutcome> at_one = {Outcome("a", 1, 1)};
  EXPECT_EQ(*ComputeLatencyMetrics(at_one, labels, {}).speed, 1.0);

  const std::vector<StreamOutcome> spread = {
      Outcome("a", 1, 1), Outcome("b", 1, 3), Outcome("c", 1, 100)};
  const LatencyMetrics lat = ComputeLatencyMetrics(spread, labels, {});
  EXPECT_EQ(*lat.latency_tp, 3.0);
  const double penalty3 = -1.0 + 2.0 / (1.0 + std::exp(-0.0078 * 2));
  EXPECT_NEAR(*lat.speed, 1.0 - penalty3, 1e-15);
  EXPECT_NEAR(*lat.f_latency, 1.0 * (1.0 - penalty3), 1e-15);
}

TEST(RankingTest, Examples) {
  UserScores scores;
  corpus::LabelTable labels;
  const int rel[] = {1, 0, 1, 0, 0};
  const double s[] = {0.9, 0.8, 0.7, 0.6, 0.5};
  for (int i = 0; i < 5; ++i) {
    const std::string id = "u" + std::to_string(i);
    scores[id] = s[i];
    labels[id] = rel[i];
  }
  const std::vector<int> cutoffs = {10};
  const RankMetrics m = ComputeRankMetrics(scores, labels, cutoffs);
  const double dcg = 1.0 + 1.0 / std::log2(4.0);
  const double idcg = 1.0 + 1.0 / std::log2(3.0);
  EXPECT_NEAR(m.ndcg_at.at(10), dcg / idcg, 1e-15);
  EXPECT_NEAR(m.precision_at.at(10), 0.2, 1e-15);

  for (auto& [id, label] : labels) label = 0;
  EXPECT_EQ(ComputeRankMetrics(scores, labels, cutoffs).ndcg_at.at(10), 0.0);
}

TEST(RankingTest, IdealRanking) {
  UserScores scores;
  corpus::LabelTable labels;
  for (int i = 0; i < 30; ++i) {
    const std::string id = "u" + std::to_string(100 + i);
    scores[id] = i < 12 ? 1.0 - i * 0.01 : 0.1;
    labels[id] = i < 12 ? 1 : 0;
  }
  const std::vector<int> cutoffs = {10, 100};
  const RankMetrics m = ComputeRankMetrics(scores, labels, cutoffs);
  EXPECT_EQ(m.precision_at.at(10), 1.0);
  EXPECT_NEAR(m.ndcg_at.at(10), 1.0, 1e-15);
  EXPECT_NEAR(m.ndcg_at.at(100), 1.0, 1e-15);
  EXPECT_NEAR(m.precision_at.at(100), 0.12, 1e-15);
}

TEST(RankingTest, TiesBreakByUserId) {
  const UserScores scores = {{"b", 0.5}, {"a", 0.5}, {"c", 0.9}};
  EXPECT_EQ(RankUsers(scores), (std::vector<std::string>{"c", "a", "b"}));
}

TEST(RankingTest, AffineInvariance) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0, 1);
  const std::vector<int> cutoffs = {1, 3, 10};
  for (int trial = 0; trial < 200; ++trial) {
    UserScores scores, moved;
    corpus::LabelTable labels;
    const double a = 0.01 + 10 * u(rng), b = 5 * u(rng) - 2.5;
    for (int i = 0; i < 12; ++i) {
      const std::string id = "u" + std::to_string(i);
      // Quarter steps keep a * s + b exact enough to preserve ties.
      const double s = static_cast<double>(rng() % 5) / 4.0;
      scores[id] = s;
      moved[id] = a * s + b;
      labels[id] = static_cast<int>(rng() % 2);
    }
    const RankMetrics x = ComputeRankMetrics(scores, labels, cutoffs);
    const RankMetrics y = ComputeRankMetrics(moved, labels, cutoffs);
    EXPECT_EQ(x.precision_at, y.precision_at);
    EXPECT_EQ(x.ndcg_at, y.ndcg_at);
  }
}

TEST(StreamOracleTest, BruteForceEquivalence) {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 500; ++trial) {
    const auto users = testing::RandomToyCorpus(rng);
    const std::string mismatch = testing::CompareWithLibrary(users, 1e-12);
    ASSERT_EQ(mismatch, "") << "trial " << trial;
  }
}

TEST(ConfigTest, JsonRoundTrip) {
  StreamMetricConfig cfg;
  ApplyStreamMetricConfig(Json::parse(R"({"c_fp":0.3,"erde_horizons":[2]})"), cfg);
  EXPECT_EQ(cfg.c_fp_fixed, 0.3);
  EXPECT_EQ(cfg.erde_horizons, std::vector<int>{2});
  StreamMetricConfig back;
  ApplyStreamMetricConfig(Json::parse(StreamMetricConfigToJson(cfg).dump()), back);
  EXPECT_EQ(back.c_fp_fixed, 0.3);
  ApplyStreamMetricConfig(Json::parse(R"({"c_fp":"prevalence"})"), back);
  EXPECT_FALSE(back.c_fp_fixed.has_value());
  cfg.latency_p = 0;
  EXPECT_EQ(CodeOf([&] { cfg.Validate(); }), ErrorCode::kInvalidConfig);
}

TEST(ReportTest, DecisionReportCarriesConfig) {
  corpus::LabelTable labels = {{"a", 1}, {"b", 0}};
  const std::vector<StreamOutcome> o = {Outcome("a", 1, 2), Outcome("b", 0, 3)};
  const OrderedJson r = DecisionReport(o, labels, {});
  EXPECT_EQ(r["metrics"]["P"], 1.0);
  EXPECT_TRUE(r["metrics"].contains("ERDE_5"));
  EXPECT_TRUE(r["metrics"].contains("ERDE_50"));
  EXPECT_EQ(r["config"]["latency_p"], 0.0078);
  const OrderedJson rank = RankingReport(o, labels, {});
  EXPECT_EQ(rank["checkpoints"].size(), 2u);
}

}  // namespace
}  // namespace riskbench::stream
