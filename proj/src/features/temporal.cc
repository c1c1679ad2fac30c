#include "riskbench/features/temporal.h"

#include "riskbench/util/error.h"

namespace riskbench::features {

bool LateNightWindow::Contains(int hour) const {
  if (first_hour <= last_hour) return hour >= first_hour && hour <= last_hour;
  return hour >= first_hour || hour <= last_hour;
}

std::vector<TemporalFeatures> ComputeTemporalFeatures(
    std::span<const UnixSeconds> timestamps, const LateNightWindow& window) {
  if (timestamps.empty()) Fail(ErrorCode::kEmptyTimeline, "no posts");
  if (window.first_hour < 0 || window.first_hour > 23 ||
      window.last_hour < 0 || window.last_hour > 23) {
    Fail(ErrorCode::kMalformedInput, "late-night hours must be in 0..23");
  }
  std::vector<TemporalFeatures> out;
  out.reserve(timestamps.size());
  const UnixSeconds first = timestamps.front();
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    if (i > 0 && timestamps[i] < timestamps[i - 1]) {
      Fail(ErrorCode::kMalformedInput, "timestamps are not sorted");
    }
    TemporalFeatures f;
    f.hours_since_first = static_cast<double>(timestamps[i] - first) / 3600.0;
    f.post_gap = i == 0 ? 0.0
                        : static_cast<double>(timestamps[i] -
                                              timestamps[i - 1]) /
                              3600.0;
    f.is_late_night = window.Contains(HourOfDayUtc(timestamps[i]));
    out.push_back(f);
  }
  return out;
}

}  // namespace riskbench::features
