#include "riskbench/stream/ranking_metrics.h"

#include <algorithm>
#include <cmath>

#include "riskbench/util/error.h"

namespace riskbench::stream {

std::vector<std::string> RankUsers(const UserScores& scores) {
  std::vector<std::pair<std::string, double>> rows(scores.begin(), scores.end());
  // Map order is user_id order, so a stable sort keeps ties by id.
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.second > b.second;
  });
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (auto& [user, score] : rows) out.push_back(std::move(user));
  return out;
}

RankMetrics ComputeRankMetrics(const UserScores& scores,
                               const corpus::LabelTable& labels,
                               std::span<const int> cutoffs) {
  const std::vector<std::string> ranked = RankUsers(scores);
  std::vector<int> rel;
  rel.reserve(ranked.size());
  int positives = 0;
  for (const auto& user : ranked) {
    auto it = labels.find(user);
    if (it == labels.end()) {
      Fail(ErrorCode::kMissingLabel, "no label for user " + user);
    }
    rel.push_back(it->second);
    positives += it->second;
  }

  RankMetrics m;
  for (int k : cutoffs) {
    if (k < 1) Fail(ErrorCode::kInvalidConfig, "ranking cutoff must be >= 1");
    const std::size_t depth = std::min<std::size_t>(k, rel.size());
    int hits = 0;
    double dcg = 0.0;
    for (std::size_t i = 0; i < depth; ++i) {
      hits += rel[i];
      if (rel[i] == 1) dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
    }
    double idcg = 0.0;
    const std::size_t ideal = std::min<std::size_t>(k, positives);
    for (std::size_t i = 0; i < ideal; ++i) {
      idcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
    }
    m.precision_at[k] = static_cast<double>(hits) / static_cast<double>(k);
    m.ndcg_at[k] = idcg > 0.0 ? dcg / idcg : 0.0;
  }
  return m;
}

OrderedJson RankingReport(std::span<const StreamOutcome> outcomes,
                          const corpus::LabelTable& labels,
                          const StreamMetricConfig& cfg) {
  cfg.Validate();
  OrderedJson checkpoints = OrderedJson::array();
  for (int n : cfg.ranking_checkpoints) {
    const RankMetrics m = ComputeRankMetrics(ScoresAtCheckpoint(outcomes, n),
                                             labels, cfg.ranking_cutoffs);
    OrderedJson metrics = OrderedJson::object();
    for (const auto& [k, v] : m.precision_at) {
      metrics["P@" + std::to_string(k)] = v;
    }
    for (const auto& [k, v] : m.ndcg_at) {
      metrics["NDCG@" + std::to_string(k)] = v;
    }
    checkpoints.push_back({{"writings", n}, {"metrics", metrics}});
  }
  return OrderedJson{{"users", outcomes.size()},
                     {"checkpoints", checkpoints},
                     {"config", StreamMetricConfigToJson(cfg)}};
}

}  // namespace riskbench::stream
