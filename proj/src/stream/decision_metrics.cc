#include "riskbench/stream/decision_metrics.h"

#include <cmath>

#include "riskbench/util/error.h"
#include "riskbench/util/stats.h"

namespace riskbench::stream {
namespace {

int LabelOf(const corpus::LabelTable& labels, const std::string& user) {
  auto it = labels.find(user);
  if (it == labels.end()) {
    Fail(ErrorCode::kMissingLabel, "no label for user " + user);
  }
  return it->second;
}

OrderedJson OptionalJson(const std::optional<double>& v) {
  return v ? OrderedJson(*v) : OrderedJson(nullptr);
}

}  // namespace

void StreamMetricConfig::Validate() const {
  for (int o : erde_horizons) {
    if (o < 1) Fail(ErrorCode::kInvalidConfig, "ERDE horizons must be >= 1");
  }
  if (!(latency_p > 0.0) || !std::isfinite(latency_p)) {
    Fail(ErrorCode::kInvalidConfig, "latency_p must be > 0");
  }
  if (c_fp_fixed && !(*c_fp_fixed >= 0.0 && *c_fp_fixed <= 1.0)) {
    Fail(ErrorCode::kInvalidConfig, "fixed c_fp must be in [0,1]");
  }
  for (int n : ranking_checkpoints) {
    if (n < 1) Fail(ErrorCode::kInvalidConfig, "ranking checkpoints must be >= 1");
  }
  for (int k : ranking_cutoffs) {
    if (k < 1) Fail(ErrorCode::kInvalidConfig, "ranking cutoffs must be >= 1");
  }
}

OrderedJson StreamMetricConfigToJson(const StreamMetricConfig& cfg) {
  return OrderedJson{
      {"erde_horizons", cfg.erde_horizons},
      {"c_fp", cfg.c_fp_fixed ? OrderedJson(*cfg.c_fp_fixed)
                              : OrderedJson("prevalence")},
      {"latency_p", cfg.latency_p},
      {"ranking_checkpoints", cfg.ranking_checkpoints},
      {"ranking_cutoffs", cfg.ranking_cutoffs}};
}

void ApplyStreamMetricConfig(const Json& json, StreamMetricConfig& cfg) {
  try {
    if (json.contains("erde_horizons")) {
      cfg.erde_horizons = json.at("erde_horizons").get<std::vector<int>>();
    }
    if (json.contains("c_fp")) {
      const auto& c = json.at("c_fp");
      if (c.is_string()) {
        if (c.get<std::string>() != "prevalence") {
          Fail(ErrorCode::kInvalidConfig,
               "c_fp must be \"prevalence\" or a number");
        }
        cfg.c_fp_fixed.reset();
      } else {
        cfg.c_fp_fixed = c.get<double>();
      }
    }
    if (json.contains("latency_p")) cfg.latency_p = json.at("latency_p");
    if (json.contains("ranking_checkpoints")) {
      cfg.ranking_checkpoints =
          json.at("ranking_checkpoints").get<std::vector<int>>();
    }
    if (json.contains("ranking_cutoffs")) {
      cfg.ranking_cutoffs = json.at("ranking_cutoffs").get<std::vector<int>>();
    }
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kInvalidConfig, std::string("stream config: ") + e.what());
  }
}

Confusion CountConfusion(std::span<const StreamOutcome> outcomes,
                         const corpus::LabelTable& labels) {
  Confusion c;
  for (const auto& o : outcomes) {
    const int truth = LabelOf(labels, o.user_id);
    if (o.final_decision == 1) {
      ++(truth == 1 ? c.tp : c.fp);
    } else {
      ++(truth == 1 ? c.fn : c.tn);
    }
  }
  return c;
}

Prf PrecisionRecallF1(const Confusion& c) {
  Prf r;
  if (c.tp + c.fp > 0) r.precision = static_cast<double>(c.tp) / (c.tp + c.fp);
  if (c.tp + c.fn > 0) r.recall = static_cast<double>(c.tp) / (c.tp + c.fn);
  if (r.precision + r.recall > 0.0) {
    r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
  }
  return r;
}

Prf PrecisionRecallF1(std::span<const StreamOutcome> outcomes,
                      const corpus::LabelTable& labels) {
  return PrecisionRecallF1(CountConfusion(outcomes, labels));
}

double ErdeTruePositiveCost(int k, int o) {
  // 1 - 1/(1+e^x) == e^x/(1+e^x), evaluated without overflow.
  const double x = static_cast<double>(k) - static_cast<double>(o);
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double FalsePositiveCost(std::span<const StreamOutcome> outcomes,
                         const corpus::LabelTable& labels,
                         const StreamMetricConfig& cfg) {
  if (cfg.c_fp_fixed) return *cfg.c_fp_fixed;
  if (outcomes.empty()) return 0.0;
  int positives = 0;
  for (const auto& o : outcomes) positives += LabelOf(labels, o.user_id);
  return static_cast<double>(positives) / static_cast<double>(outcomes.size());
}

double Erde(std::span<const StreamOutcome> outcomes,
            const corpus::LabelTable& labels, int o,
            const StreamMetricConfig& cfg) {
  if (o < 1) Fail(ErrorCode::kInvalidConfig, "ERDE horizon must be >= 1");
  if (outcomes.empty()) return 0.0;
  const double c_fp = FalsePositiveCost(outcomes, labels, cfg);
  double total = 0.0;
  for (const auto& out : outcomes) {
    const int truth = LabelOf(labels, out.user_id);
    if (out.final_decision == 1) {
      total += truth == 1 ? ErdeTruePositiveCost(out.delay, o) : c_fp;
    } else if (truth == 1) {
      total += 1.0;
    }
  }
  return total / static_cast<double>(outcomes.size());
}

double LatencyPenalty(int k, double p) {
  return -1.0 + 2.0 / (1.0 + std::exp(-p * (static_cast<double>(k) - 1.0)));
}

LatencyMetrics ComputeLatencyMetrics(std::span<const StreamOutcome> outcomes,
                                     const corpus::LabelTable& labels,
                                     const StreamMetricConfig& cfg) {
  std::vector<double> delays;
  std::vector<double> penalties;
  for (const auto& o : outcomes) {
    if (o.final_decision == 1 && LabelOf(labels, o.user_id) == 1) {
      delays.push_back(o.delay);
      penalties.push_back(LatencyPenalty(o.delay, cfg.latency_p));
    }
  }
  LatencyMetrics m;
  if (delays.empty()) return m;
  m.latency_tp = Median(delays);
  m.speed = 1.0 - Median(penalties);
  m.f_latency = PrecisionRecallF1(outcomes, labels).f1 * *m.speed;
  return m;
}

OrderedJson DecisionReport(std::span<const StreamOutcome> outcomes,
                           const corpus::LabelTable& labels,
                           const StreamMetricConfig& cfg) {
  cfg.Validate();
  const Confusion c = CountConfusion(outcomes, labels);
  const Prf prf = PrecisionRecallF1(c);
  OrderedJson metrics{{"P", prf.precision}, {"R", prf.recall}, {"F1", prf.f1}};
  for (int o : cfg.erde_horizons) {
    metrics["ERDE_" + std::to_string(o)] = Erde(outcomes, labels, o, cfg);
  }
  const LatencyMetrics lat = ComputeLatencyMetrics(outcomes, labels, cfg);
  metrics["latency_TP"] = OptionalJson(lat.latency_tp);
  metrics["speed"] = OptionalJson(lat.speed);
  metrics["F_latency"] = OptionalJson(lat.f_latency);
  return OrderedJson{
      {"users", outcomes.size()},
      {"confusion", {{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"tn", c.tn}}},
      {"c_fp", FalsePositiveCost(outcomes, labels, cfg)},
      {"metrics", metrics},
      {"config", StreamMetricConfigToJson(cfg)}};
}

}  // namespace riskbench::stream
