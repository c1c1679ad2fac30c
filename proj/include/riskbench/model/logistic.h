#ifndef RISKBENCH_MODEL_LOGISTIC_H_
#define RISKBENCH_MODEL_LOGISTIC_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "riskbench/util/io.h"

namespace riskbench::model {

enum class ClassWeightMode { kBalanced, kNone, kExplicit };

struct TrainConfig {
  double learning_rate = 0.01;
  int epochs = 500;
  double l2_lambda = 1e-4;
  ClassWeightMode class_weight_mode = ClassWeightMode::kBalanced;
  // Used only in kExplicit mode.
  double explicit_w0 = 1.0;
  double explicit_w1 = 1.0;
  std::uint64_t seed = 42;
  double validation_fraction = 0.0;
  int patience = 10;

  void Validate() const;  // throws kInvalidConfig
};

OrderedJson TrainConfigToJson(const TrainConfig& cfg);
// Keys absent from `json` keep their current values.
void ApplyTrainConfig(const Json& json, TrainConfig& cfg);

struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  double l2_lambda = 0.0;

  std::size_t dim() const { return weights.size(); }
  bool operator==(const LinearModel&) const = default;
};

struct ClassWeights {
  double w0 = 1.0;
  double w1 = 1.0;
};

// Balanced: w_c = N / (2 N_c). Throws kSingleClass or kBadLabel.
ClassWeights BalancedClassWeights(std::span<const int> labels);
ClassWeights BalancedClassWeights(std::size_t negatives, std::size_t positives);
ClassWeights ResolveClassWeights(std::span<const int> labels,
                                 const TrainConfig& cfg);

// Row-major dense design matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  std::span<const double> Row(std::size_t i) const {
    return {data.data() + i * cols, cols};
  }
  std::span<double> Row(std::size_t i) { return {data.data() + i * cols, cols}; }
};

double Sigmoid(double z);
// ln(1 + e^z) without overflow.
double Softplus(double z);

struct LossAndGrad {
  double loss = 0.0;
  std::vector<double> grad_w;
  double grad_b = 0.0;
};

// Weighted mean cross-entropy sum_i s_i CE_i / sum_i s_i, where s_i is the
// weight of sample i's class, plus (lambda/2) ||w||^2 on the weights only.
LossAndGrad ComputeLossAndGrad(const LinearModel& model, const Matrix& x,
                               std::span<const int> y,
                               const ClassWeights& weights);

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;
  double validation_auc = 0.0;  // NaN without a validation split
};

struct TrainReport {
  int epochs_run = 0;
  int best_epoch = 0;
  double best_validation_auc = 0.0;
  bool early_stopped = false;
  ClassWeights class_weights;
  std::vector<EpochRecord> history;
};

// Per-sample SGD with a seeded shuffle each epoch. With validation_fraction
// > 0 a stratified split is held out, and the parameters of the epoch with
// the best validation AUC are returned; training stops once `patience`
// consecutive epochs fail to improve on it.
LinearModel TrainSgd(const Matrix& x, std::span<const int> y,
                     const TrainConfig& cfg, TrainReport* report = nullptr);

// Early stopping against an explicit validation set.
LinearModel TrainSgd(const Matrix& x, std::span<const int> y,
                     const Matrix& x_val, std::span<const int> y_val,
                     const TrainConfig& cfg, TrainReport* report = nullptr);

double PredictProba(const LinearModel& model, std::span<const double> x);
std::vector<double> PredictProba(const LinearModel& model, const Matrix& x);

OrderedJson ModelToJson(const LinearModel& model, const TrainConfig& cfg);
LinearModel ModelFromJson(const Json& json, TrainConfig* trained_with = nullptr);

}  // namespace riskbench::model

#endif  // RISKBENCH_MODEL_LOGISTIC_H_
