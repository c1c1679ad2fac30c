#ifndef RISKBENCH_CORPUS_CONTRACTIONS_H_
#define RISKBENCH_CORPUS_CONTRACTIONS_H_

#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "riskbench/util/io.h"

namespace riskbench::corpus {

// Lowercase contraction -> expansion. Construction validates that keys are
// lowercase ASCII, expansions carry no apostrophe, and no expansion contains
// a key as a whole word, so a single expansion pass is already a fixpoint.
class ContractionTable {
 public:
  using Map = std::map<std::string, std::string, std::less<>>;

  // The bundled table: standard English contractions plus common slang
  // ("gonna", "wanna", "dunno", ...).
  static const ContractionTable& Default();

  // Throws Error(kInvalidConfig) when the table breaks an invariant.
  static ContractionTable FromJson(const Json& object);
  explicit ContractionTable(Map entries);

  const std::string* Find(std::string_view lowercase_key) const;
  const Map& entries() const { return entries_; }

 private:
  Map entries_;
};

// Replaces every word whose lowercase form is a key. Words are maximal runs
// of Unicode letters, decimal digits and apostrophes; outer apostrophes
// are peeled off when the whole word is not a key ("'don't'"). A capitalized
// word gets a capitalized expansion ("Don't" -> "Do not").
std::string ExpandContractions(std::string_view text,
                               const ContractionTable& table);

}  // namespace riskbench::corpus

#endif  // RISKBENCH_CORPUS_CONTRACTIONS_H_
