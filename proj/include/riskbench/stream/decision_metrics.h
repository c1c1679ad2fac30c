#ifndef RISKBENCH_STREAM_DECISION_METRICS_H_
#define RISKBENCH_STREAM_DECISION_METRICS_H_

#include <optional>
#include <span>
#include <vector>

#include "riskbench/corpus/labels.h"
#include "riskbench/stream/simulation.h"
#include "riskbench/util/io.h"

namespace riskbench::stream {

struct StreamMetricConfig {
  std::vector<int> erde_horizons = {5, 50};
  // Unset: false-positive cost equals the positive prevalence of the
  // evaluated users.
  std::optional<double> c_fp_fixed;
  double latency_p = 0.0078;
  std::vector<int> ranking_checkpoints = {1, 100};
  std::vector<int> ranking_cutoffs = {10, 100};

  void Validate() const;  // throws kInvalidConfig
};

OrderedJson StreamMetricConfigToJson(const StreamMetricConfig& cfg);
// Keys absent from `json` keep their current values. "c_fp" accepts
// "prevalence" or a number.
void ApplyStreamMetricConfig(const Json& json, StreamMetricConfig& cfg);

struct Confusion {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  int tn = 0;
};

// Throws kMissingLabel when an outcome's user has no label.
Confusion CountConfusion(std::span<const StreamOutcome> outcomes,
                         const corpus::LabelTable& labels);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// 0/0 yields 0.
Prf PrecisionRecallF1(const Confusion& c);
Prf PrecisionRecallF1(std::span<const StreamOutcome> outcomes,
                      const corpus::LabelTable& labels);

// Cost of a true positive emitted after k writings: 1 - 1/(1 + e^{k-o}).
double ErdeTruePositiveCost(int k, int o);
double FalsePositiveCost(std::span<const StreamOutcome> outcomes,
                         const corpus::LabelTable& labels,
                         const StreamMetricConfig& cfg);
double Erde(std::span<const StreamOutcome> outcomes,
            const corpus::LabelTable& labels, int o,
            const StreamMetricConfig& cfg);

// -1 + 2 / (1 + e^{-p (k - 1)}); zero at k = 1.
double LatencyPenalty(int k, double p);

struct LatencyMetrics {
  // All unset when there is no true positive.
  std::optional<double> latency_tp;
  std::optional<double> speed;
  std::optional<double> f_latency;
};

LatencyMetrics ComputeLatencyMetrics(std::span<const StreamOutcome> outcomes,
                                     const corpus::LabelTable& labels,
                                     const StreamMetricConfig& cfg);

// Decision-based report: P, R, F1, ERDE_o per horizon, latency-weighted F1,
// confusion counts and the echoed config.
OrderedJson DecisionReport(std::span<const StreamOutcome> outcomes,
                           const corpus::LabelTable& labels,
                           const StreamMetricConfig& cfg);

}  // namespace riskbench::stream

#endif  // RISKBENCH_STREAM_DECISION_METRICS_H_
