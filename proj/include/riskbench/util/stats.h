#ifndef RISKBENCH_UTIL_STATS_H_
#define RISKBENCH_UTIL_STATS_H_

#include <span>

namespace riskbench {

// All of these return 0 for an empty input; callers that need to reject
// empty input check first.
double Mean(std::span<const double> values);

// Divide-by-N standard deviation.
double PopulationStd(std::span<const double> values);

// Even-length inputs average the two central values.
double Median(std::span<const double> values);

// Linear interpolation between order statistics at position q*(n-1)
// (the "linear" method of numpy.percentile). q in [0, 1].
double QuantileLinear(std::span<const double> values, double q);

}  // namespace riskbench

#endif  // RISKBENCH_UTIL_STATS_H_
