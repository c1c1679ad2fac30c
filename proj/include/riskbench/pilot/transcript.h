#ifndef RISKBENCH_PILOT_TRANSCRIPT_H_
#define RISKBENCH_PILOT_TRANSCRIPT_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "riskbench/util/io.h"

namespace riskbench::pilot {

inline constexpr int kBdiItemCount = 21;
inline constexpr int kMaxBdiTotal = 63;
inline constexpr std::size_t kMaxKeySymptoms = 4;

// Ordered: a transcript's states may only move forward.
enum class AssessmentState {
  kInitializing,
  kGathering,
  kConsolidating,
  kConcluding,
  kFinalized,
};

// Values are the label encoding used in the consistency analysis.
enum class Classification {
  kUncertain = 0,
  kControl = 1,
  kMild = 2,
  kBorderline = 3,
  kModerate = 4,
  kSevere = 5,
  kExtreme = 6,
};

std::string_view StateName(AssessmentState state);
std::optional<AssessmentState> ParseState(std::string_view name);
std::string_view ClassificationName(Classification c);
// Exact, case-sensitive match on the schema enum.
std::optional<Classification> ParseClassification(std::string_view name);

struct ItemScore {
  std::string key;  // e.g. "q01_sadness"
  int score = 0;
  std::string reason;
};

struct Evaluation {
  int assessment_turn = 1;
  AssessmentState assessment_state = AssessmentState::kInitializing;
  bool assessment_complete = false;
  // Null in some run files; treated as missing by the analyses.
  std::optional<int> total_bdi_score;
  Classification classification_suggestion = Classification::kUncertain;
  std::optional<double> confidence;
  std::vector<std::string> key_symptoms;
  // Indexed by item number - 1.
  std::array<ItemScore, kBdiItemCount> bdi_scores;

  int ItemSum() const;
};

struct Turn {
  std::string input_message;
  std::string output_message;
  std::string next_step_reasoning;
  Evaluation evaluation;
};

struct Transcript {
  std::string model;
  std::string persona;
  std::vector<Turn> turns;
};

// Full schema validation. Throws SchemaError with a JSON pointer to the
// offending value: kSchemaViolation for type, range and enum failures,
// kMissingItem for an incomplete or duplicated q01..q21 set, and
// kStateRegression when assessment_state moves backwards.
Transcript ParseTranscript(std::string_view bytes);
Transcript TranscriptFromJson(const Json& json, const std::string& base_path = "");

// A file holding either one transcript object or an array of them.
std::vector<Transcript> ParseTranscriptFile(std::string_view bytes);

OrderedJson TranscriptToJson(const Transcript& t);

}  // namespace riskbench::pilot

#endif  // RISKBENCH_PILOT_TRANSCRIPT_H_
