#ifndef RISKBENCH_STREAM_RANKING_METRICS_H_
#define RISKBENCH_STREAM_RANKING_METRICS_H_

#include <map>
#include <span>
#include <string>
#include <vector>

#include "riskbench/corpus/labels.h"
#include "riskbench/stream/decision_metrics.h"
#include "riskbench/stream/simulation.h"

namespace riskbench::stream {

using UserScores = std::map<std::string, double, std::less<>>;

// User ids by descending score; equal scores fall back to user_id order.
std::vector<std::string> RankUsers(const UserScores& scores);

struct RankMetrics {
  // Keyed by cutoff k.
  std::map<int, double> precision_at;
  std::map<int, double> ndcg_at;
};

// P@k = positives among the top k / k. NDCG@k uses binary relevance with
// DCG = sum rel_i / log2(i + 1); zero when no user is positive.
// Throws kMissingLabel.
RankMetrics ComputeRankMetrics(const UserScores& scores,
                               const corpus::LabelTable& labels,
                               std::span<const int> cutoffs);

// One entry per configured checkpoint, scores carried forward.
OrderedJson RankingReport(std::span<const StreamOutcome> outcomes,
                          const corpus::LabelTable& labels,
                          const StreamMetricConfig& cfg);

}  // namespace riskbench::stream

#endif  // RISKBENCH_STREAM_RANKING_METRICS_H_
