#include "riskbench/features/lexicon.h"

#include "riskbench/corpus/tokens.h"
#include "riskbench/util/embedded_data.h"
#include "riskbench/util/error.h"

namespace riskbench::features {
namespace {

void CheckLowercase(const std::string& token) {
  if (token.empty() || corpus::Lowercase(token) != token) {
    Fail(ErrorCode::kInvalidConfig,
         "lexicon tokens must be lowercase: '" + token + "'");
  }
}

template <typename Map>
void ReadWeights(const Json& json, const char* key, Map& out) {
  if (!json.contains(key)) return;
  out.clear();
  for (const auto& [token, value] : json.at(key).items()) {
    CheckLowercase(token);
    if (!value.is_number()) {
      Fail(ErrorCode::kInvalidConfig,
           std::string("lexicon ") + key + ": '" + token + "' is not a number");
    }
    out.emplace(token, value.template get<double>());
  }
}

template <typename Set>
void ReadSet(const Json& json, const char* key, Set& out) {
  if (!json.contains(key)) return;
  out.clear();
  for (const Json& value : json.at(key)) {
    if (!value.is_string()) {
      Fail(ErrorCode::kInvalidConfig,
           std::string("lexicon ") + key + " entries must be strings");
    }
    const std::string token = value.get<std::string>();
    CheckLowercase(token);
    out.insert(token);
  }
}

}  // namespace

const LexiconConfig& LexiconConfig::Default() {
  static const LexiconConfig lexicon = [] {
    LexiconConfig empty;
    const Json json = ParseJson(embedded::LexiconJson(), "lexicon.json");
    ReadWeights(json, "valence", empty.valence);
    ReadWeights(json, "boosters", empty.boosters);
    ReadSet(json, "negators", empty.negators);
    ReadSet(json, "first_person", empty.first_person);
    ReadSet(json, "neg_emotion", empty.neg_emotion);
    ReadSet(json, "social", empty.social);
    return empty;
  }();
  return lexicon;
}

LexiconConfig LexiconConfig::FromJson(const Json& json) {
  if (!json.is_object()) {
    Fail(ErrorCode::kInvalidConfig, "lexicon must be a JSON object");
  }
  LexiconConfig lexicon = Default();
  ReadWeights(json, "valence", lexicon.valence);
  ReadWeights(json, "boosters", lexicon.boosters);
  ReadSet(json, "negators", lexicon.negators);
  ReadSet(json, "first_person", lexicon.first_person);
  ReadSet(json, "neg_emotion", lexicon.neg_emotion);
  ReadSet(json, "social", lexicon.social);
  lexicon.idioms = json.value("idioms", false);
  lexicon.emoticons = json.value("emoticons", false);
  lexicon.caps_boost = json.value("caps_boost", false);
  return lexicon;
}

}  // namespace riskbench::features
