#include "riskbench/pilot/metrics.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>

#include "riskbench/util/error.h"

namespace riskbench::pilot {
namespace {

constexpr std::string_view kCategoryNames[] = {"minimal", "mild", "moderate",
                                               "severe"};

std::string FoldLabel(std::string_view label) {
  std::size_t b = 0;
  std::size_t e = label.size();
  while (b < e && std::isspace(static_cast<unsigned char>(label[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(label[e - 1]))) --e;
  std::string out(label.substr(b, e - b));
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void CheckTotal(int total) {
  if (total < 0 || total > kMaxBdiTotal) {
    Fail(ErrorCode::kOutOfRange,
         "BDI-II total " + std::to_string(total) + " outside 0..63");
  }
}

template <typename Map>
const typename Map::mapped_type& Lookup(const Map& m, const std::string& persona) {
  auto it = m.find(persona);
  if (it == m.end()) {
    Fail(ErrorCode::kMissingPersona, "no prediction for persona " + persona);
  }
  return it->second;
}

}  // namespace

std::string_view CategoryName(Category c) {
  return kCategoryNames[static_cast<int>(c)];
}

Category ParseCategory(std::string_view name) {
  const std::string folded = FoldLabel(name);
  for (int i = 0; i < 4; ++i) {
    if (kCategoryNames[i] == folded) return static_cast<Category>(i);
  }
  Fail(ErrorCode::kUnknownLabel, "unknown category '" + std::string(name) + "'");
}

Category CategoryOf(int total_bdi) {
  CheckTotal(total_bdi);
  if (total_bdi <= 9) return Category::kMinimal;
  if (total_bdi <= 18) return Category::kMild;
  if (total_bdi <= 29) return Category::kModerate;
  return Category::kSevere;
}

Classification PromptCategoryOf(int total_bdi) {
  CheckTotal(total_bdi);
  if (total_bdi <= 10) return Classification::kControl;
  if (total_bdi <= 16) return Classification::kMild;
  if (total_bdi <= 20) return Classification::kBorderline;
  if (total_bdi <= 30) return Classification::kModerate;
  if (total_bdi <= 40) return Classification::kSevere;
  return Classification::kExtreme;
}

int EncodeClassification(std::string_view label) {
  const std::string folded = FoldLabel(label);
  for (int i = 0; i <= 6; ++i) {
    if (FoldLabel(ClassificationName(static_cast<Classification>(i))) == folded) {
      return i;
    }
  }
  Fail(ErrorCode::kUnknownLabel, "unknown classification '" + std::string(label) + "'");
}

std::vector<GoldPersona> ParseGold(std::string_view bytes) {
  const Json json = ParseJson(bytes, "gold file");
  if (!json.is_array()) {
    throw SchemaError(ErrorCode::kSchemaViolation, "", "gold file must be an array");
  }
  std::vector<GoldPersona> gold;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < json.size(); ++i) {
    const std::string path = "/" + std::to_string(i);
    const Json& row = json[i];
    GoldPersona g;
    try {
      g.persona = row.at("persona").get<std::string>();
      g.bdi = row.at("bdi").get<int>();
      for (const auto& s : row.at("symptoms")) {
        const auto name = s.get<std::string>();
        const auto symptom = SymptomFromCanonicalName(name);
        if (!symptom) {
          throw SchemaError(ErrorCode::kUnnormalizedInput, path + "/symptoms",
                            "'" + name + "' is not a canonical symptom name");
        }
        g.symptoms.push_back(*symptom);
      }
    } catch (const Json::exception& e) {
      throw SchemaError(ErrorCode::kSchemaViolation, path, e.what());
    }
    if (g.bdi < 0 || g.bdi > kMaxBdiTotal) {
      throw SchemaError(ErrorCode::kSchemaViolation, path + "/bdi", "outside 0..63");
    }
    std::set<Symptom> distinct(g.symptoms.begin(), g.symptoms.end());
    if (g.symptoms.size() != 4 || distinct.size() != 4) {
      throw SchemaError(ErrorCode::kSchemaViolation, path + "/symptoms",
                        "expected exactly 4 distinct symptoms");
    }
    if (!seen.insert(g.persona).second) {
      throw SchemaError(ErrorCode::kSchemaViolation, path + "/persona",
                        "duplicate persona " + g.persona);
    }
    gold.push_back(std::move(g));
  }
  return gold;
}

double AdodlScore(int adl, int edl) {
  CheckTotal(adl);
  CheckTotal(edl);
  return static_cast<double>(kMaxBdiTotal - std::abs(adl - edl)) / kMaxBdiTotal;
}

double Dchr(const std::map<std::string, Category, std::less<>>& predicted,
            std::span<const GoldPersona> gold) {
  if (gold.empty()) return 0.0;
  int hits = 0;
  for (const auto& g : gold) {
    if (Lookup(predicted, g.persona) == g.category()) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

double Adodl(const std::map<std::string, int, std::less<>>& edl,
             std::span<const GoldPersona> gold) {
  if (gold.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& g : gold) sum += AdodlScore(g.bdi, Lookup(edl, g.persona));
  return sum / static_cast<double>(gold.size());
}

AshrResult Ashr(
    const std::map<std::string, std::vector<std::string>, std::less<>>& predicted,
    std::span<const GoldPersona> gold) {
  AshrResult result;
  if (gold.empty()) return result;
  double sum = 0.0;
  for (const auto& g : gold) {
    const auto& names = Lookup(predicted, g.persona);
    if (names.size() > 4) {
      Fail(ErrorCode::kOutOfRange,
           "persona " + g.persona + " has more than four symptoms");
    }
    std::set<Symptom> pred;
    for (const auto& name : names) {
      const auto s = SymptomFromCanonicalName(name);
      if (!s) {
        Fail(ErrorCode::kUnnormalizedInput,
             "persona " + g.persona + ": '" + name + "' is not a canonical name");
      }
      pred.insert(*s);
    }
    int matched = 0;
    for (Symptom s : g.symptoms) matched += pred.count(s) ? 1 : 0;
    const double rate = matched / 4.0;
    result.per_persona[g.persona] = rate;
    sum += rate;
  }
  result.mean = sum / static_cast<double>(gold.size());
  return result;
}

}  // namespace riskbench::pilot
