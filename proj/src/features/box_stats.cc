#include "riskbench/features/box_stats.h"

#include <algorithm>

#include "riskbench/util/error.h"
#include "riskbench/util/stats.h"

namespace riskbench::features {

BoxStats ComputeBoxStats(std::span<const double> values) {
  if (values.empty()) Fail(ErrorCode::kEmptyInput, "box stats of no values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  BoxStats stats;
  stats.count = sorted.size();
  stats.q1 = QuantileLinear(sorted, 0.25);
  stats.median = QuantileLinear(sorted, 0.5);
  stats.q3 = QuantileLinear(sorted, 0.75);
  const double iqr = stats.q3 - stats.q1;
  const double low_fence = stats.q1 - 1.5 * iqr;
  const double high_fence = stats.q3 + 1.5 * iqr;

  bool have_inlier = false;
  for (double v : sorted) {
    if (v < low_fence || v > high_fence) {
      stats.outliers.push_back(v);
      continue;
    }
    if (!have_inlier) {
      stats.whisker_low = v;
      have_inlier = true;
    }
    stats.whisker_high = v;
  }
  return stats;
}

OrderedJson BoxStatsToJson(const BoxStats& stats) {
  return OrderedJson{{"count", stats.count},
                     {"median", stats.median},
                     {"q1", stats.q1},
                     {"q3", stats.q3},
                     {"whisker_low", stats.whisker_low},
                     {"whisker_high", stats.whisker_high},
                     {"outliers", stats.outliers}};
}

}  // namespace riskbench::features
