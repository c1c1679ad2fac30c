#include "riskbench/pilot/symptoms.h"

#include <cctype>

#include "riskbench/util/embedded_data.h"
#include "riskbench/util/error.h"

namespace riskbench::pilot {
namespace {

constexpr std::string_view kNames[kSymptomCount] = {
    "Sadness",
    "Pessimism",
    "Past failure",
    "Loss of pleasure",
    "Guilty feelings",
    "Punishment feelings",
    "Self-dislike",
    "Self-criticalness",
    "Suicidal thoughts or wishes",
    "Crying",
    "Agitation",
    "Loss of interest in others",
    "Indecisiveness",
    "Worthlessness",
    "Loss of energy",
    "Changes in sleeping pattern",
    "Irritability",
    "Changes in appetite",
    "Concentration difficulty",
    "Tiredness or fatigue",
    "Loss of interest in sex",
};

const std::map<std::string, Symptom, std::less<>>& FoldedCanonical() {
  static const auto* table = [] {
    auto* m = new std::map<std::string, Symptom, std::less<>>();
    for (int i = 0; i < kSymptomCount; ++i) {
      m->emplace(FoldSymptomKey(kNames[i]), static_cast<Symptom>(i));
    }
    return m;
  }();
  return *table;
}

}  // namespace

std::string_view SymptomName(Symptom s) { return kNames[static_cast<int>(s)]; }

std::optional<Symptom> SymptomFromCanonicalName(std::string_view name) {
  for (int i = 0; i < kSymptomCount; ++i) {
    if (kNames[i] == name) return static_cast<Symptom>(i);
  }
  return std::nullopt;
}

std::string FoldSymptomKey(std::string_view raw) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : raw) {
    // Non-ASCII bytes are kept so accented input still has to match exactly.
    if (std::isalnum(c) || c >= 0x80) {
      if (pending_space && !out.empty()) out += ' ';
      pending_space = false;
      out += static_cast<char>(std::tolower(c));
    } else {
      pending_space = true;
    }
  }
  return out;
}

const SymptomAliases& SymptomAliases::Default() {
  static const SymptomAliases* table = new SymptomAliases(
      FromJson(ParseJson(embedded::SymptomAliasesJson(), "symptom aliases")));
  return *table;
}

SymptomAliases SymptomAliases::FromJson(const Json& json) {
  if (!json.is_object() || !json.contains("aliases") ||
      !json.at("aliases").is_object()) {
    Fail(ErrorCode::kInvalidConfig, "symptom aliases need an \"aliases\" object");
  }
  SymptomAliases out;
  for (const auto& [raw, target] : json.at("aliases").items()) {
    if (!target.is_string()) {
      Fail(ErrorCode::kInvalidConfig, "alias '" + raw + "' target is not a string");
    }
    const auto symptom = SymptomFromCanonicalName(target.get<std::string>());
    if (!symptom) {
      Fail(ErrorCode::kInvalidConfig, "alias '" + raw + "' targets unknown symptom '" +
                                          target.get<std::string>() + "'");
    }
    const std::string key = FoldSymptomKey(raw);
    if (key.empty()) Fail(ErrorCode::kInvalidConfig, "empty alias");
    auto [it, inserted] = out.aliases_.emplace(key, *symptom);
    if (!inserted && it->second != *symptom) {
      Fail(ErrorCode::kInvalidConfig, "alias '" + raw + "' has conflicting targets");
    }
  }
  return out;
}

std::optional<Symptom> SymptomAliases::Find(std::string_view folded) const {
  auto it = aliases_.find(folded);
  if (it == aliases_.end()) return std::nullopt;
  return it->second;
}

Symptom NormalizeSymptom(std::string_view raw, const SymptomAliases& aliases) {
  const std::string key = FoldSymptomKey(raw);
  const auto& canonical = FoldedCanonical();
  if (auto it = canonical.find(key); it != canonical.end()) return it->second;
  if (auto hit = aliases.Find(key)) return *hit;
  Fail(ErrorCode::kUnmappedSymptom, "no canonical symptom for '" + std::string(raw) + "'");
}

}  // namespace riskbench::pilot
