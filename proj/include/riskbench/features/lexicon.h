#ifndef RISKBENCH_FEATURES_LEXICON_H_
#define RISKBENCH_FEATURES_LEXICON_H_

#include <functional>
#include <map>
#include <set>
#include <string>

#include "riskbench/util/io.h"

namespace riskbench::features {

// Word lists behind the sentiment and LIWC-style counts. All tokens are
// lowercase.
struct LexiconConfig {
  std::map<std::string, double, std::less<>> valence;
  // Signed increments: positive intensifies ("very"), negative dampens
  // ("slightly").
  std::map<std::string, double, std::less<>> boosters;
  std::set<std::string, std::less<>> negators;
  std::set<std::string, std::less<>> first_person;
  std::set<std::string, std::less<>> neg_emotion;
  std::set<std::string, std::less<>> social;

  // Recognized but inert: idiom rules, emoticon valences and the ALL-CAPS
  // boost are not part of the sentiment model.
  bool idioms = false;
  bool emoticons = false;
  bool caps_boost = false;

  static const LexiconConfig& Default();
  // Missing sections fall back to the bundled defaults. Throws
  // kInvalidConfig for non-lowercase tokens.
  static LexiconConfig FromJson(const Json& json);
};

}  // namespace riskbench::features

#endif  // RISKBENCH_FEATURES_LEXICON_H_
