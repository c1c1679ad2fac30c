#ifndef RISKBENCH_PILOT_ANALYSIS_H_
#define RISKBENCH_PILOT_ANALYSIS_H_

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "riskbench/pilot/transcript.h"
#include "riskbench/util/io.h"

namespace riskbench::pilot {

struct OlsFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Least squares on centered sums. r2 = 1 - SS_res/SS_tot, reported as 1
// when y is constant. Throws kDegenerateX for fewer than two points or
// constant x, kLengthMismatch for unequal inputs.
OlsFit FitOls(std::span<const double> x, std::span<const double> y);

struct SummationAudit {
  double avg_diff = 0.0;
  double std_diff = 0.0;  // population
  int correct_n = 0;
  int n = 0;
  double correct_pct = 0.0;
};

// Per model, over every turn with a reported total:
// diff = |total_bdi_score - sum of item scores|.
std::map<std::string, SummationAudit> AuditSummation(
    std::span<const Transcript> transcripts);

// Picks one turn per transcript: the last, or the latest at or before a
// given assessment turn (carrying earlier values forward).
struct TurnSelector {
  std::optional<int> at_turn;  // unset: last turn

  static TurnSelector Last() { return {}; }
  static TurnSelector AtTurn(int n) { return {n}; }
};

using ItemVector = std::array<int, kBdiItemCount>;
// model -> persona -> assessment_turn -> item scores.
using ItemScoreTable =
    std::map<std::string, std::map<std::string, std::map<int, ItemVector>>>;

ItemScoreTable CollectItemScores(std::span<const Transcript> transcripts);

struct AgreementResult {
  std::array<double, kBdiItemCount> item_std{};  // mean over personas
  double threshold = 0.5;
  double fraction_below = 0.0;  // items with item_std < threshold
  std::vector<std::string> personas;
  std::size_t models = 0;
};

// Population standard deviation across models per item and persona, then
// averaged over the personas every model covers at the selected turn.
// Throws kInsufficientModels with fewer than two models and kEmptyInput
// when no persona is shared.
AgreementResult AgreementStd(const ItemScoreTable& table,
                             const TurnSelector& selector,
                             double threshold = 0.5);

struct Trajectory {
  std::vector<int> rounds;
  // Mean over transcripts with a non-null value at that round.
  std::vector<std::optional<double>> confidence;
  // Mean over transcripts after forward filling each one's totals.
  std::vector<std::optional<double>> total_bdi;
};

Trajectory ComputeTrajectory(std::span<const Transcript> transcripts);

enum class TextField { kInput, kOutput, kReason };

// Throws kInvalidConfig for names other than input, output and reason.
TextField ParseTextField(std::string_view name);

struct TokenStats {
  std::size_t n = 0;
  double sum = 0.0;
  double avg = 0.0;
  double max = 0.0;
  double min = 0.0;
  double std = 0.0;  // population
};

// Maximal runs of non-whitespace bytes.
std::size_t CountWhitespaceTokens(std::string_view text);
TokenStats ComputeTokenStats(std::span<const std::string> texts);
// Per model.
std::map<std::string, TokenStats> TokenStatsByModel(
    std::span<const Transcript> transcripts, TextField field);

OrderedJson ToJson(const SummationAudit& a);
OrderedJson ToJson(const AgreementResult& a);
OrderedJson ToJson(const Trajectory& t);
OrderedJson ToJson(const TokenStats& s);
OrderedJson ToJson(const OlsFit& f);

}  // namespace riskbench::pilot

#endif  // RISKBENCH_PILOT_ANALYSIS_H_
