#ifndef RISKBENCH_PILOT_SYMPTOMS_H_
#define RISKBENCH_PILOT_SYMPTOMS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "riskbench/util/io.h"

namespace riskbench::pilot {

// The 21 BDI-II items, in questionnaire order.
enum class Symptom {
  kSadness,
  kPessimism,
  kPastFailure,
  kLossOfPleasure,
  kGuiltyFeelings,
  kPunishmentFeelings,
  kSelfDislike,
  kSelfCriticalness,
  kSuicidalThoughts,
  kCrying,
  kAgitation,
  kLossOfInterest,
  kIndecisiveness,
  kWorthlessness,
  kLossOfEnergy,
  kChangesInSleep,
  kIrritability,
  kChangesInAppetite,
  kConcentrationDifficulty,
  kTirednessOrFatigue,
  kLossOfInterestInSex,
};

inline constexpr int kSymptomCount = 21;

std::string_view SymptomName(Symptom s);
// Exact canonical spelling only.
std::optional<Symptom> SymptomFromCanonicalName(std::string_view name);

// Lowercase, every non-alphanumeric ASCII byte becomes a space, runs of
// spaces collapse, ends trimmed.
std::string FoldSymptomKey(std::string_view raw);

class SymptomAliases {
 public:
  // The bundled alias table.
  static const SymptomAliases& Default();
  // {"aliases": {raw: canonical name}}. Throws kInvalidConfig for unknown
  // targets or aliases that fold to the same key with different targets.
  static SymptomAliases FromJson(const Json& json);

  std::optional<Symptom> Find(std::string_view folded) const;
  std::size_t size() const { return aliases_.size(); }

 private:
  std::map<std::string, Symptom, std::less<>> aliases_;
};

// Canonical name match after folding, then the alias table.
// Throws kUnmappedSymptom carrying the raw text.
Symptom NormalizeSymptom(std::string_view raw,
                         const SymptomAliases& aliases = SymptomAliases::Default());

}  // namespace riskbench::pilot

#endif  // RISKBENCH_PILOT_SYMPTOMS_H_
