#ifndef RISKBENCH_FEATURES_BOX_STATS_H_
#define RISKBENCH_FEATURES_BOX_STATS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "riskbench/util/io.h"

namespace riskbench::features {

// Tukey box-plot summary. Quartiles interpolate linearly between order
// statistics; outliers lie strictly outside [q1 - 1.5 IQR, q3 + 1.5 IQR];
// whiskers are the most extreme values inside those fences.
struct BoxStats {
  std::size_t count = 0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;  // ascending
};

// Throws kEmptyInput.
BoxStats ComputeBoxStats(std::span<const double> values);

OrderedJson BoxStatsToJson(const BoxStats& stats);

}  // namespace riskbench::features

#endif  // RISKBENCH_FEATURES_BOX_STATS_H_
