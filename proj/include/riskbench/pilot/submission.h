#ifndef RISKBENCH_PILOT_SUBMISSION_H_
#define RISKBENCH_PILOT_SUBMISSION_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "riskbench/pilot/analysis.h"
#include "riskbench/pilot/metrics.h"
#include "riskbench/pilot/symptoms.h"
#include "riskbench/pilot/transcript.h"

namespace riskbench::pilot {

enum class EdlChoice {
  kLastFinalized,  // last Finalized turn, else the final turn
  kLastTurn,
};

EdlChoice ParseEdlChoice(std::string_view name);  // "finalized" | "last"
std::string_view EdlChoiceName(EdlChoice choice);

// Index of the turn that carries the run's estimate. Throws kEmptyInput
// for a transcript without turns.
std::size_t ChooseEstimateTurn(const Transcript& t, EdlChoice choice);

// The chosen turn's total; its item sum when the total is null.
int EstimatedBdi(const Transcript& t, EdlChoice choice);

struct SubmissionEntry {
  std::string persona;
  Category category = Category::kMinimal;
  int bdi = 0;
  std::vector<std::string> symptoms;  // canonical names, at most 4

  friend bool operator==(const SubmissionEntry&, const SubmissionEntry&) = default;
};

// One entry per transcript, sorted by persona. Key symptoms are normalized
// (kUnmappedSymptom on failure) and de-duplicated in order. Throws
// kMalformedInput when a persona appears twice.
std::vector<SubmissionEntry> BuildSubmission(
    std::span<const Transcript> transcripts, EdlChoice choice,
    const SymptomAliases& aliases = SymptomAliases::Default());

OrderedJson SubmissionToJson(std::span<const SubmissionEntry> entries);
std::vector<SubmissionEntry> ParseSubmission(std::string_view bytes);

struct PilotScores {
  double dchr = 0.0;
  double adodl = 0.0;
  AshrResult ashr;
};

PilotScores ScoreSubmission(std::span<const SubmissionEntry> entries,
                            std::span<const GoldPersona> gold);
OrderedJson ToJson(const PilotScores& s);

// Encoded classification of the estimate turn against its total, one point
// per transcript with a total.
OlsFit FitClassificationLevels(std::span<const Transcript> transcripts,
                               EdlChoice choice);

}  // namespace riskbench::pilot

#endif  // RISKBENCH_PILOT_SUBMISSION_H_
