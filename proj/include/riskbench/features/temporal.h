#ifndef RISKBENCH_FEATURES_TEMPORAL_H_
#define RISKBENCH_FEATURES_TEMPORAL_H_

#include <span>
#include <vector>

#include "riskbench/util/time.h"

namespace riskbench::features {

// Inclusive range of UTC hours counted as late night. first_hour > last_hour
// wraps past midnight (e.g. 22..3).
struct LateNightWindow {
  int first_hour = 0;
  int last_hour = 5;

  bool Contains(int hour) const;
};

struct TemporalFeatures {
  double hours_since_first = 0.0;
  // Hours since the previous post; 0 for the first post.
  double post_gap = 0.0;
  bool is_late_night = false;
};

// `timestamps` must be ascending. Throws kEmptyTimeline for no posts,
// kMalformedInput for out-of-order input or an invalid window.
std::vector<TemporalFeatures> ComputeTemporalFeatures(
    std::span<const UnixSeconds> timestamps, const LateNightWindow& window = {});

}  // namespace riskbench::features

#endif  // RISKBENCH_FEATURES_TEMPORAL_H_
