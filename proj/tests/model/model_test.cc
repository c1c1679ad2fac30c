#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "riskbench/model/auc.h"
#include "riskbench/model/logistic.h"
#include "riskbench/model/rng.h"
#include "riskbench/model/voting.h"
#include "riskbench/util/error.h"

namespace riskbench::model {
namespace {

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

// Pairwise Mann-Whitney count with half credit for ties.
double PairwiseAuc(const std::vector<double>& s, const std::vector<int>& y) {
  double credit = 0, pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (y[i] != 1 || y[j] != 0) continue;
      pairs += 1;
      credit += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
    }
  }
  return credit / pairs;
}

// Two Gaussian blobs either side of x1 + x2 = 0 with a margin.
void SeparableToySet(std::uint64_t seed, Matrix& x, std::vector<int>& y) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3, 3);
  x = Matrix(0, 2);
  y.clear();
  while (y.size() < 60) {
    const double a = u(rng), b = u(rng);
    if (std::abs(a + b) < 0.5) continue;
    x.data.push_back(a);
    x.data.push_back(b);
    ++x.rows;
    y.push_back(a + b > 0 ? 1 : 0);
  }
}

double Accuracy(const LinearModel& m, const Matrix& x,
                const std::vector<int>& y) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    hits += (PredictProba(m, x.Row(i)) >= 0.5 ? 1 : 0) == y[i];
  }
  return static_cast<double>(hits) / static_cast<double>(x.rows);
}

TEST(RngTest, DeterministicAndInRange) {
  Xoshiro256 a(42), b(42), c(43);
  EXPECT_EQ(a.Next(), b.Next());
  EXPECT_NE(a.Next(), c.Next());
  for (int i = 0; i < 10000; ++i) {
    EXPECT_LT(a.Below(7), 7u);
    const double u = a.Uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
  // splitmix64 reference values for state 0.
  std::uint64_t state = 0;
  EXPECT_EQ(SplitMix64(state), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(SplitMix64(state), 0x6e789e6aa1b965f4ULL);
}

TEST(RngTest, ShuffleIsAPermutation) {
  Xoshiro256 rng(1);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  Shuffle(std::span<int>(v), rng);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
}

TEST(ClassWeightsTest, Examples) {
  const ClassWeights t1 = BalancedClassWeights(2446, 297);
  EXPECT_NEAR(t1.w1 / t1.w0, 2446.0 / 297.0, 1e-12);
  EXPECT_NEAR(t1.w1 / t1.w0, 8.23, 0.01);

  const ClassWeights even = BalancedClassWeights(10, 10);
  EXPECT_EQ(even.w0, 1.0);
  EXPECT_EQ(even.w1, 1.0);

  const std::vector<int> labels = {0, 0, 0, 1};
  const ClassWeights w = BalancedClassWeights(labels);
  EXPECT_DOUBLE_EQ(w.w0, 4.0 / 6.0);
  EXPECT_DOUBLE_EQ(w.w1, 2.0);

  const std::vector<int> single = {1, 1};
  EXPECT_EQ(CodeOf([&] { BalancedClassWeights(single); }),
            ErrorCode::kSingleClass);
  const std::vector<int> bad = {0, 2};
  EXPECT_EQ(CodeOf([&] { BalancedClassWeights(bad); }), ErrorCode::kBadLabel);
}

TEST(LossTest, ZeroModelGivesLn2) {
  Matrix x(4, 2);
  for (double& v : x.data) v = 1.5;
  const std::vector<int> y = {0, 1, 0, 1};
  LinearModel m;
  m.weights = {0, 0};
  EXPECT_NEAR(ComputeLossAndGrad(m, x, y, {1, 1}).loss, std::log(2.0), 1e-15);
  EXPECT_NEAR(ComputeLossAndGrad(m, x, y, {0.3, 5}).loss, std::log(2.0), 1e-15);
}

TEST(LossTest, RidgeDominatesForLargeLambda) {
  Matrix x(2, 2);
  x.data = {1, 0, 0, 1};
  const std::vector<int> y = {0, 1};
  LinearModel m;
  m.weights = {0.5, -1.0};
  m.l2_lambda = 1e8;
  const double ridge = 0.5 * 1e8 * (0.25 + 1.0);
  const LossAndGrad lg = ComputeLossAndGrad(m, x, y, {1, 1});
  EXPECT_NEAR(lg.loss / ridge, 1.0, 1e-6);
  EXPECT_NEAR(lg.grad_w[1] / (1e8 * -1.0), 1.0, 1e-6);
}

TEST(LossTest, GradientMatchesCentralDifferences) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> n(0, 1);
  const double h = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    Matrix x(5, 3);
    for (double& v : x.data) v = n(rng);
    std::vector<int> y = {0, 1, 0, 1, static_cast<int>(rng() % 2)};
    LinearModel m;
    m.weights = {n(rng), n(rng), n(rng)};
    m.bias = n(rng);
    m.l2_lambda = std::abs(n(rng)) * 0.1;
    const ClassWeights cw = BalancedClassWeights(y);
    const LossAndGrad lg = ComputeLossAndGrad(m, x, y, cw);

    std::vector<double> analytic = lg.grad_w;
    analytic.push_back(lg.grad_b);
    std::vector<double> numeric;
    for (std::size_t j = 0; j <= 3; ++j) {
      LinearModel plus = m, minus = m;
      double& p = j < 3 ? plus.weights[j] : plus.bias;
      double& q = j < 3 ? minus.weights[j] : minus.bias;
      p += h;
      q -= h;
      numeric.push_back((ComputeLossAndGrad(plus, x, y, cw).loss -
                         ComputeLossAndGrad(minus, x, y, cw).loss) /
                        (2 * h));
    }
    double diff = 0, scale = 0;
    for (std::size_t j = 0; j < analytic.size(); ++j) {
      diff += (analytic[j] - numeric[j]) * (analytic[j] - numeric[j]);
      scale = std::max({scale, std::abs(analytic[j]), std::abs(numeric[j])});
    }
    EXPECT_LE(std::sqrt(diff) / std::max(scale, 1e-12), 1e-4) << trial;
  }
}

TEST(TrainTest, SeparableToySetReachesPerfectAccuracy) {
  Matrix x;
  std::vector<int> y;
  SeparableToySet(5, x, y);
  TrainConfig cfg;
  cfg.epochs = 200;
  TrainReport report;
  const LinearModel m = TrainSgd(x, y, cfg, &report);
  EXPECT_EQ(Accuracy(m, x, y), 1.0);
  EXPECT_GE(RocAuc(PredictProba(m, x), y), 0.5);
  EXPECT_EQ(report.epochs_run, 200);
  EXPECT_TRUE(std::isnan(report.history.back().validation_auc));
}

TEST(TrainTest, SameSeedIsBitIdentical) {
  Matrix x;
  std::vector<int> y;
  SeparableToySet(6, x, y);
  TrainConfig cfg;
  cfg.epochs = 30;
  cfg.validation_fraction = 0.2;
  cfg.seed = 123;
  EXPECT_EQ(TrainSgd(x, y, cfg), TrainSgd(x, y, cfg));
  TrainConfig other = cfg;
  other.seed = 124;
  EXPECT_NE(TrainSgd(x, y, cfg), TrainSgd(x, y, other));
}

TEST(TrainTest, PatienceZeroStopsAfterFirstNonImprovingEpoch) {
  Matrix x;
  std::vector<int> y;
  SeparableToySet(7, x, y);
  // The validation labels are inverted, so AUC can only fall or stay flat.
  std::vector<int> y_val(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) y_val[i] = 1 - y[i];
  TrainConfig cfg;
  cfg.patience = 0;
  TrainReport report;
  const LinearModel m = TrainSgd(x, y, x, y_val, cfg, &report);
  EXPECT_TRUE(report.early_stopped);
  EXPECT_EQ(report.best_epoch, 1);
  EXPECT_EQ(report.epochs_run, 2);

  TrainConfig one = cfg;
  one.epochs = 1;
  EXPECT_EQ(m, TrainSgd(x, y, one));
}

TEST(TrainTest, ValidationSplitErrors) {
  Matrix x(3, 1);
  x.data = {1, 2, 3};
  const std::vector<int> y = {0, 0, 1};
  TrainConfig cfg;
  cfg.validation_fraction = 0.3;
  EXPECT_EQ(CodeOf([&] { TrainSgd(x, y, cfg); }), ErrorCode::kDegenerateSplit);
  const std::vector<int> single = {1, 1, 1};
  EXPECT_EQ(CodeOf([&] { TrainSgd(x, single, TrainConfig{}); }),
            ErrorCode::kSingleClass);
  TrainConfig bad;
  bad.learning_rate = 0;
  EXPECT_EQ(CodeOf([&] { TrainSgd(x, y, bad); }), ErrorCode::kInvalidConfig);
}

TEST(PredictTest, Examples) {
  LinearModel m;
  m.weights = {0, 0};
  const std::vector<double> x = {std::log(3.0), 5};
  EXPECT_EQ(PredictProba(m, x), 0.5);
  m.bias = 800;
  EXPECT_EQ(PredictProba(m, x), 1.0);
  m.bias = 0;
  m.weights = {1, 0};
  EXPECT_NEAR(PredictProba(m, x), 0.75, 1e-15);
  const std::vector<double> wrong = {1};
  EXPECT_EQ(CodeOf([&] { PredictProba(m, wrong); }), ErrorCode::kDimMismatch);
}

TEST(ModelFileTest, RoundTrip) {
  LinearModel m;
  m.weights = {0.1, -2.5e-7, 3};
  m.bias = -0.25;
  m.l2_lambda = 1e-4;
  TrainConfig cfg;
  cfg.class_weight_mode = ClassWeightMode::kExplicit;
  cfg.explicit_w0 = 1;
  cfg.explicit_w1 = 8.23;
  const OrderedJson j = ModelToJson(m, cfg);
  EXPECT_EQ(j["dim"], 3);
  TrainConfig back_cfg;
  const LinearModel back = ModelFromJson(Json::parse(j.dump()), &back_cfg);
  EXPECT_EQ(back, m);
  EXPECT_EQ(back_cfg.class_weight_mode, ClassWeightMode::kExplicit);
  EXPECT_EQ(back_cfg.explicit_w1, 8.23);
  EXPECT_EQ(CodeOf([] {
              ModelFromJson(Json::parse(R"({"dim":2,"weights":[1],"bias":0,"lambda":0})"));
            }),
            ErrorCode::kDimMismatch);
}

TEST(AucTest, MatchesPairwiseOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 30;
    std::vector<double> s(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = static_cast<double>(rng() % 5);  // plenty of ties
      y[i] = static_cast<int>(rng() % 2);
    }
    y[0] = 0;
    y[1] = 1;
    EXPECT_NEAR(RocAuc(s, y), PairwiseAuc(s, y), 1e-12);
  }
  const std::vector<double> s = {0.1};
  const std::vector<int> y = {1};
  EXPECT_EQ(CodeOf([&] { RocAuc(s, y); }), ErrorCode::kSingleClass);
}

TEST(VotingTest, Examples) {
  const std::vector<std::vector<double>> same = {{0.1, 0.7}, {0.1, 0.7}};
  EXPECT_EQ(SoftVote(same), same[0]);
  const std::vector<std::vector<double>> two = {{0.2}, {0.8}};
  EXPECT_DOUBLE_EQ(SoftVote(two)[0], 0.5);
  const std::vector<std::vector<double>> three = {
      {0.1, 0.9}, {0.4, 0.6}, {0.7, 0.0}};
  const auto mean = SoftVote(three);
  EXPECT_NEAR(mean[0], 0.4, 1e-15);
  EXPECT_NEAR(mean[1], 0.5, 1e-15);

  const std::vector<std::vector<double>> ragged = {{0.1}, {0.1, 0.2}};
  EXPECT_EQ(CodeOf([&] { SoftVote(ragged); }), ErrorCode::kLengthMismatch);
  const std::vector<std::vector<double>> out = {{1.1}};
  EXPECT_EQ(CodeOf([&] { SoftVote(out); }), ErrorCode::kOutOfRange);
}

TEST(VotingTest, PermutationInvariant) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<double>> m(3, std::vector<double>(5));
    for (auto& row : m) {
      for (double& p : row) p = u(rng);
    }
    auto shuffled = m;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto a = SoftVote(m);
    const auto b = SoftVote(shuffled);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(a[i], b[i], 1e-15);
  }
}

TEST(DecideTest, ThresholdRule) {
  EXPECT_EQ(Decide(0.5).decision, 1);
  EXPECT_EQ(Decide(0.49).decision, 0);
  EXPECT_EQ(Decide(0.49).score, 0.49);
  int previous = 0;
  for (int i = 0; i <= 1000; ++i) {
    const double p = i / 1000.0;
    const int d = Decide(p, 0.3).decision;
    EXPECT_GE(d, previous);
    EXPECT_EQ(d, p >= 0.3 ? 1 : 0);
    previous = d;
  }
  EXPECT_EQ(CodeOf([] { Decide(-0.1); }), ErrorCode::kOutOfRange);
  EXPECT_EQ(CodeOf([] { Decide(std::nan("")); }), ErrorCode::kOutOfRange);
}

TEST(MemberScoresTest, ParseAndAlign) {
  const MemberScores s = ParseMemberScores(
      "{\"user_id\":\"b\",\"proba\":0.25}\n{\"user_id\":\"a\",\"proba\":1}\n",
      "m");
  EXPECT_EQ(ParseMemberScores(SerializeMemberScores(s), "m"), s);
  const std::vector<std::string> ids = {"a", "b"};
  EXPECT_EQ(AlignMemberScores(s, ids, "m"), (std::vector<double>{1.0, 0.25}));
  const std::vector<std::string> missing = {"c"};
  EXPECT_EQ(CodeOf([&] { AlignMemberScores(s, missing, "m"); }),
            ErrorCode::kMalformedInput);
  EXPECT_EQ(CodeOf([] {
              ParseMemberScores("{\"user_id\":\"a\",\"proba\":2}", "m");
            }),
            ErrorCode::kOutOfRange);
  EXPECT_EQ(CodeOf([] {
              ParseMemberScores(
                  "{\"user_id\":\"a\",\"proba\":0}\n{\"user_id\":\"a\",\"proba\":1}",
                  "m");
            }),
            ErrorCode::kMalformedInput);
}

}  // namespace
}  // namespace riskbench::model
