#include "riskbench/model/logistic.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "riskbench/model/auc.h"
#include "riskbench/model/rng.h"
#include "riskbench/util/error.h"

namespace riskbench::model {
namespace {

const char* ModeName(ClassWeightMode mode) {
  switch (mode) {
    case ClassWeightMode::kBalanced: return "balanced";
    case ClassWeightMode::kNone: return "none";
    case ClassWeightMode::kExplicit: return "explicit";
  }
  return "balanced";
}

ClassWeightMode ParseMode(const std::string& name) {
  if (name == "balanced") return ClassWeightMode::kBalanced;
  if (name == "none") return ClassWeightMode::kNone;
  if (name == "explicit") return ClassWeightMode::kExplicit;
  Fail(ErrorCode::kInvalidConfig, "unknown class_weight_mode '" + name + "'");
}

void CheckLabels(std::span<const int> y) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] != 0 && y[i] != 1) {
      Fail(ErrorCode::kBadLabel, "label at row " + std::to_string(i) +
                                     " is " + std::to_string(y[i]));
    }
  }
}

void CheckShape(const Matrix& x, std::span<const int> y) {
  if (x.rows != y.size()) {
    Fail(ErrorCode::kLengthMismatch, "matrix has " + std::to_string(x.rows) +
                                         " rows but " +
                                         std::to_string(y.size()) + " labels");
  }
  CheckLabels(y);
}

bool AllFinite(const LinearModel& m) {
  return std::isfinite(m.bias) &&
         std::all_of(m.weights.begin(), m.weights.end(),
                     [](double v) { return std::isfinite(v); });
}

Matrix SelectRows(const Matrix& x, std::span<const std::size_t> rows) {
  Matrix out(rows.size(), x.cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy_n(x.Row(rows[i]).begin(), x.cols, out.Row(i).begin());
  }
  return out;
}

double Dot(std::span<const double> w, std::span<const double> x) {
  double z = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) z += w[j] * x[j];
  return z;
}

}  // namespace

void TrainConfig::Validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    Fail(ErrorCode::kInvalidConfig, "learning_rate must be > 0");
  }
  if (epochs < 1) Fail(ErrorCode::kInvalidConfig, "epochs must be >= 1");
  if (!(l2_lambda >= 0.0) || !std::isfinite(l2_lambda)) {
    Fail(ErrorCode::kInvalidConfig, "l2_lambda must be >= 0");
  }
  if (!(validation_fraction >= 0.0 && validation_fraction < 1.0)) {
    Fail(ErrorCode::kInvalidConfig, "validation_fraction must be in [0, 1)");
  }
  if (patience < 0) Fail(ErrorCode::kInvalidConfig, "patience must be >= 0");
  if (class_weight_mode == ClassWeightMode::kExplicit &&
      !(explicit_w0 > 0.0 && explicit_w1 > 0.0)) {
    Fail(ErrorCode::kInvalidConfig, "explicit class weights must be > 0");
  }
}

OrderedJson TrainConfigToJson(const TrainConfig& cfg) {
  OrderedJson j{{"learning_rate", cfg.learning_rate},
                {"epochs", cfg.epochs},
                {"l2_lambda", cfg.l2_lambda},
                {"class_weight_mode", ModeName(cfg.class_weight_mode)}};
  if (cfg.class_weight_mode == ClassWeightMode::kExplicit) {
    j["class_weights"] = {cfg.explicit_w0, cfg.explicit_w1};
  }
  j["seed"] = cfg.seed;
  j["validation_fraction"] = cfg.validation_fraction;
  j["patience"] = cfg.patience;
  return j;
}

void ApplyTrainConfig(const Json& json, TrainConfig& cfg) {
  try {
    if (json.contains("learning_rate")) cfg.learning_rate = json.at("learning_rate");
    if (json.contains("epochs")) cfg.epochs = json.at("epochs");
    if (json.contains("l2_lambda")) cfg.l2_lambda = json.at("l2_lambda");
    if (json.contains("class_weight_mode")) {
      cfg.class_weight_mode =
          ParseMode(json.at("class_weight_mode").get<std::string>());
    }
    if (json.contains("class_weights")) {
      const auto& w = json.at("class_weights");
      if (!w.is_array() || w.size() != 2) {
        Fail(ErrorCode::kInvalidConfig, "class_weights must be [w0, w1]");
      }
      cfg.explicit_w0 = w[0];
      cfg.explicit_w1 = w[1];
    }
    if (json.contains("seed")) cfg.seed = json.at("seed").get<std::uint64_t>();
    if (json.contains("validation_fraction")) {
      cfg.validation_fraction = json.at("validation_fraction");
    }
    if (json.contains("patience")) cfg.patience = json.at("patience");
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kInvalidConfig, std::string("train config: ") + e.what());
  }
}

ClassWeights BalancedClassWeights(std::size_t negatives, std::size_t positives) {
  if (negatives == 0 || positives == 0) {
    Fail(ErrorCode::kSingleClass,
         "balanced class weights need both classes (negatives=" +
             std::to_string(negatives) +
             ", positives=" + std::to_string(positives) + ")");
  }
  const double n = static_cast<double>(negatives + positives);
  return {n / (2.0 * static_cast<double>(negatives)),
          n / (2.0 * static_cast<double>(positives))};
}

ClassWeights BalancedClassWeights(std::span<const int> labels) {
  CheckLabels(labels);
  const auto positives =
      static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  return BalancedClassWeights(labels.size() - positives, positives);
}

ClassWeights ResolveClassWeights(std::span<const int> labels,
                                 const TrainConfig& cfg) {
  switch (cfg.class_weight_mode) {
    case ClassWeightMode::kBalanced: return BalancedClassWeights(labels);
    case ClassWeightMode::kNone: return {1.0, 1.0};
    case ClassWeightMode::kExplicit: return {cfg.explicit_w0, cfg.explicit_w1};
  }
  return {1.0, 1.0};
}

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

LossAndGrad ComputeLossAndGrad(const LinearModel& model, const Matrix& x,
                               std::span<const int> y,
                               const ClassWeights& weights) {
  CheckShape(x, y);
  if (x.cols != model.dim()) {
    Fail(ErrorCode::kDimMismatch, "model dim " + std::to_string(model.dim()) +
                                      " vs data dim " + std::to_string(x.cols));
  }
  LossAndGrad out;
  out.grad_w.assign(model.dim(), 0.0);
  double weight_total = 0.0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    const auto row = x.Row(i);
    const double z = Dot(model.weights, row) + model.bias;
    const double s = y[i] == 1 ? weights.w1 : weights.w0;
    // CE = softplus(z) - y z
    out.loss += s * (Softplus(z) - (y[i] == 1 ? z : 0.0));
    const double g = s * (Sigmoid(z) - static_cast<double>(y[i]));
    for (std::size_t j = 0; j < x.cols; ++j) out.grad_w[j] += g * row[j];
    out.grad_b += g;
    weight_total += s;
  }
  if (weight_total > 0.0) {
    out.loss /= weight_total;
    for (double& g : out.grad_w) g /= weight_total;
    out.grad_b /= weight_total;
  }
  double norm2 = 0.0;
  for (std::size_t j = 0; j < model.dim(); ++j) {
    norm2 += model.weights[j] * model.weights[j];
    out.grad_w[j] += model.l2_lambda * model.weights[j];
  }
  out.loss += 0.5 * model.l2_lambda * norm2;
  return out;
}

namespace {

LinearModel RunSgd(const Matrix& x, std::span<const int> y, const Matrix* x_val,
                   std::span<const int> y_val, const TrainConfig& cfg,
                   Xoshiro256& rng, TrainReport* report) {
  const ClassWeights cw = ResolveClassWeights(y, cfg);
  LinearModel model;
  model.weights.assign(x.cols, 0.0);
  model.l2_lambda = cfg.l2_lambda;

  // Per-sample steps are rescaled so an epoch is an unbiased pass over the
  // weighted-mean objective.
  double weight_total = 0.0;
  for (int label : y) weight_total += label == 1 ? cw.w1 : cw.w0;
  const double scale = static_cast<double>(y.size()) / weight_total;

  TrainReport local;
  local.class_weights = cw;
  LinearModel best = model;
  local.best_validation_auc = -std::numeric_limits<double>::infinity();
  int stale = 0;

  std::vector<std::size_t> order(x.rows);
  std::iota(order.begin(), order.end(), 0);
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    Shuffle(std::span<std::size_t>(order), rng);
    for (std::size_t i : order) {
      const auto row = x.Row(i);
      const double z = Dot(model.weights, row) + model.bias;
      const double s = y[i] == 1 ? cw.w1 : cw.w0;
      const double g = scale * s * (Sigmoid(z) - static_cast<double>(y[i]));
      for (std::size_t j = 0; j < x.cols; ++j) {
        model.weights[j] -=
            cfg.learning_rate * (g * row[j] + cfg.l2_lambda * model.weights[j]);
      }
      model.bias -= cfg.learning_rate * g;
    }
    if (!AllFinite(model)) {
      Fail(ErrorCode::kInvalidConfig, "SGD diverged at epoch " +
                                          std::to_string(epoch) +
                                          "; lower learning_rate");
    }
    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = ComputeLossAndGrad(model, x, y, cw).loss;
    rec.validation_auc = std::numeric_limits<double>::quiet_NaN();
    local.epochs_run = epoch;

    if (x_val != nullptr) {
      rec.validation_auc = RocAuc(PredictProba(model, *x_val), y_val);
      local.history.push_back(rec);
      if (rec.validation_auc > local.best_validation_auc) {
        local.best_validation_auc = rec.validation_auc;
        local.best_epoch = epoch;
        best = model;
        stale = 0;
      } else if (++stale > cfg.patience) {
        local.early_stopped = true;
        break;
      }
    } else {
      local.history.push_back(rec);
    }
  }
  if (x_val == nullptr) {
    best = model;
    local.best_epoch = local.epochs_run;
    local.best_validation_auc = std::numeric_limits<double>::quiet_NaN();
  }
  if (report != nullptr) *report = std::move(local);
  return best;
}

}  // namespace

LinearModel TrainSgd(const Matrix& x, std::span<const int> y,
                     const TrainConfig& cfg, TrainReport* report) {
  cfg.Validate();
  CheckShape(x, y);
  if (x.rows < 2) Fail(ErrorCode::kSingleClass, "need at least 2 samples");
  Xoshiro256 rng(cfg.seed);
  if (cfg.validation_fraction == 0.0) {
    if (cfg.class_weight_mode != ClassWeightMode::kBalanced) {
      BalancedClassWeights(y);  // still require both classes
    }
    return RunSgd(x, y, nullptr, {}, cfg, rng, report);
  }

  // Stratified hold-out: each class contributes round(f * N_c) rows, at
  // least one, and keeps at least one for training.
  std::vector<std::size_t> by_class[2];
  for (std::size_t i = 0; i < y.size(); ++i) by_class[y[i]].push_back(i);
  if (by_class[0].empty() || by_class[1].empty()) {
    Fail(ErrorCode::kSingleClass, "training labels contain a single class");
  }
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> val_rows;
  for (auto& rows : by_class) {
    Shuffle(std::span<std::size_t>(rows), rng);
    const auto take = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::llround(cfg.validation_fraction *
                            static_cast<double>(rows.size()))));
    if (take >= rows.size()) {
      Fail(ErrorCode::kDegenerateSplit,
           "validation split leaves a class without training rows");
    }
    val_rows.insert(val_rows.end(), rows.begin(), rows.begin() + take);
    train_rows.insert(train_rows.end(), rows.begin() + take, rows.end());
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(val_rows.begin(), val_rows.end());
  std::vector<int> y_train;
  std::vector<int> y_val;
  for (auto r : train_rows) y_train.push_back(y[r]);
  for (auto r : val_rows) y_val.push_back(y[r]);
  const Matrix x_train = SelectRows(x, train_rows);
  const Matrix x_val = SelectRows(x, val_rows);
  return RunSgd(x_train, y_train, &x_val, y_val, cfg, rng, report);
}

LinearModel TrainSgd(const Matrix& x, std::span<const int> y,
                     const Matrix& x_val, std::span<const int> y_val,
                     const TrainConfig& cfg, TrainReport* report) {
  cfg.Validate();
  CheckShape(x, y);
  CheckShape(x_val, y_val);
  if (x_val.cols != x.cols) {
    Fail(ErrorCode::kDimMismatch, "validation dim differs from training dim");
  }
  BalancedClassWeights(y);
  const auto val_pos = std::count(y_val.begin(), y_val.end(), 1);
  if (val_pos == 0 || static_cast<std::size_t>(val_pos) == y_val.size()) {
    Fail(ErrorCode::kDegenerateSplit, "validation set contains a single class");
  }
  Xoshiro256 rng(cfg.seed);
  return RunSgd(x, y, &x_val, y_val, cfg, rng, report);
}

double PredictProba(const LinearModel& model, std::span<const double> x) {
  if (x.size() != model.dim()) {
    Fail(ErrorCode::kDimMismatch, "input dim " + std::to_string(x.size()) +
                                      " vs model dim " +
                                      std::to_string(model.dim()));
  }
  return Sigmoid(Dot(model.weights, x) + model.bias);
}

std::vector<double> PredictProba(const LinearModel& model, const Matrix& x) {
  std::vector<double> out;
  out.reserve(x.rows);
  for (std::size_t i = 0; i < x.rows; ++i) out.push_back(PredictProba(model, x.Row(i)));
  return out;
}

OrderedJson ModelToJson(const LinearModel& model, const TrainConfig& cfg) {
  return OrderedJson{{"dim", model.dim()},
                     {"weights", model.weights},
                     {"bias", model.bias},
                     {"lambda", model.l2_lambda},
                     {"trained_with", TrainConfigToJson(cfg)}};
}

LinearModel ModelFromJson(const Json& json, TrainConfig* trained_with) {
  LinearModel model;
  try {
    const auto dim = json.at("dim").get<std::size_t>();
    model.weights = json.at("weights").get<std::vector<double>>();
    model.bias = json.at("bias").get<double>();
    model.l2_lambda = json.at("lambda").get<double>();
    if (model.weights.size() != dim) {
      Fail(ErrorCode::kDimMismatch, "model file dim " + std::to_string(dim) +
                                        " but " +
                                        std::to_string(model.weights.size()) +
                                        " weights");
    }
    if (trained_with != nullptr && json.contains("trained_with")) {
      ApplyTrainConfig(json.at("trained_with"), *trained_with);
    }
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kMalformedInput, std::string("model file: ") + e.what());
  }
  if (!AllFinite(model)) {
    Fail(ErrorCode::kMalformedInput, "model file has non-finite parameters");
  }
  return model;
}

}  // namespace riskbench::model
