#ifndef RISKBENCH_PILOT_METRICS_H_
#define RISKBENCH_PILOT_METRICS_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "riskbench/pilot/symptoms.h"
#include "riskbench/pilot/transcript.h"
#include "riskbench/util/io.h"

namespace riskbench::pilot {

// Official four-level scale used for DCHR.
enum class Category { kMinimal, kMild, kModerate, kSevere };

std::string_view CategoryName(Category c);  // lowercase
// Case-insensitive. Throws kUnknownLabel.
Category ParseCategory(std::string_view name);

// 0-9 minimal, 10-18 mild, 19-29 moderate, 30-63 severe. Throws kOutOfRange.
Category CategoryOf(int total_bdi);

// The prompt's six-level scale: 0-10 Normal (reported as Control), 11-16
// Mild, 17-20 Borderline, 21-30 Moderate, 31-40 Severe, 41+ Extreme.
Classification PromptCategoryOf(int total_bdi);

// Uncertain 0 ... Extreme 6 after trimming and case folding.
// Throws kUnknownLabel.
int EncodeClassification(std::string_view label);

struct GoldPersona {
  std::string persona;
  int bdi = 0;
  std::vector<Symptom> symptoms;  // exactly 4, distinct

  Category category() const { return CategoryOf(bdi); }
};

// [{"persona", "bdi", "symptoms": [4 canonical names]}]
std::vector<GoldPersona> ParseGold(std::string_view bytes);

// (63 - |adl - edl|) / 63. Throws kOutOfRange outside 0..63.
double AdodlScore(int adl, int edl);

// Metrics average over the gold personas; predictions for other personas
// are ignored. A gold persona without a prediction throws kMissingPersona.
double Dchr(const std::map<std::string, Category, std::less<>>& predicted,
            std::span<const GoldPersona> gold);
double Adodl(const std::map<std::string, int, std::less<>>& edl,
             std::span<const GoldPersona> gold);

struct AshrResult {
  std::map<std::string, double> per_persona;
  double mean = 0.0;
};

// |pred ∩ gold| / 4 with up to four predicted canonical names per persona.
// Throws kUnnormalizedInput for a name that is not an exact canonical
// spelling, kOutOfRange for more than four.
AshrResult Ashr(
    const std::map<std::string, std::vector<std::string>, std::less<>>& predicted,
    std::span<const GoldPersona> gold);

}  // namespace riskbench::pilot

#endif  // RISKBENCH_PILOT_METRICS_H_
