#ifndef RISKBENCH_STREAM_SIMULATION_H_
#define RISKBENCH_STREAM_SIMULATION_H_

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "riskbench/corpus/timeline.h"

namespace riskbench::stream {

struct RoundEmission {
  int round = 0;  // 1-based
  std::string user_id;
  int decision = 0;
  double score = 0.0;

  friend bool operator==(const RoundEmission&, const RoundEmission&) = default;
};

struct StreamOutcome {
  std::string user_id;
  int final_decision = 0;
  // Writings seen at the first positive decision, else all writings.
  int delay = 0;
  std::vector<double> score_trajectory;

  friend bool operator==(const StreamOutcome&, const StreamOutcome&) = default;
};

struct SimulationResult {
  std::vector<RoundEmission> emissions;  // round-major, user_id order within a round
  std::vector<StreamOutcome> outcomes;   // user_id order
};

// Score in [0, 1] for `user` having seen posts[0 .. seen).
using Scorer =
    std::function<double(const corpus::UserWritings& user, std::size_t seen)>;

// Round t releases the t-th writing of every unresolved user that still has
// one. A decision of 1 (score >= threshold) resolves the user for good.
// Scorer exceptions and scores outside [0, 1] surface as kScorerFailure
// naming the user and round. Throws kEmptyTimeline for a user without posts.
SimulationResult RunSimulation(std::span<const corpus::UserWritings> users,
                               const Scorer& scorer, double threshold = 0.5);

// Emissions file: JSONL {"round", "user", "decision", "score"}.
std::string WriteEmissions(std::span<const RoundEmission> emissions);
std::vector<RoundEmission> ReadEmissions(std::string_view text,
                                         std::string_view context = "emissions");

// Rebuilds outcomes from an emissions log. Throws kMalformedInput when the
// log breaks the protocol (gaps in a user's rounds, repeats, or emissions
// after a positive decision).
std::vector<StreamOutcome> OutcomesFromEmissions(
    std::span<const RoundEmission> emissions);

// Each user's score after `writings` writings; users whose trajectory is
// shorter keep their last score. `writings` must be >= 1.
std::map<std::string, double, std::less<>> ScoresAtCheckpoint(
    std::span<const StreamOutcome> outcomes, int writings);

}  // namespace riskbench::stream

#endif  // RISKBENCH_STREAM_SIMULATION_H_
