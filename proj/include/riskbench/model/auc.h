#ifndef RISKBENCH_MODEL_AUC_H_
#define RISKBENCH_MODEL_AUC_H_

#include <span>

namespace riskbench::model {

// ROC AUC via the Mann-Whitney rank statistic; tied scores share the
// average rank, which credits a positive/negative tie with 0.5.
// Throws kLengthMismatch, or kSingleClass when a class is absent.
double RocAuc(std::span<const double> scores, std::span<const int> labels);

}  // namespace riskbench::model

#endif  // RISKBENCH_MODEL_AUC_H_
