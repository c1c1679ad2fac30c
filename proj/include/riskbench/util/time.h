#ifndef RISKBENCH_UTIL_TIME_H_
#define RISKBENCH_UTIL_TIME_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace riskbench {

// Seconds since the Unix epoch, UTC.
using UnixSeconds = std::int64_t;

// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM[:SS[.fff]]" (a space may replace
// the 'T') with an optional "Z" or "+HH:MM"/"-HH:MM"/"+HHMM" offset.
// A missing offset means UTC. Fractional seconds are truncated.
std::optional<UnixSeconds> ParseIso8601(std::string_view text);

// "YYYY-MM-DDTHH:MM:SSZ".
std::string FormatIso8601(UnixSeconds t);

int HourOfDayUtc(UnixSeconds t);

}  // namespace riskbench

#endif  // RISKBENCH_UTIL_TIME_H_
