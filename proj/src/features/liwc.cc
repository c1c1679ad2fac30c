#include "riskbench/features/liwc.h"

#include <string>

#include "riskbench/corpus/tokens.h"

namespace riskbench::features {

LiwcCounts& LiwcCounts::operator+=(const LiwcCounts& other) {
  first_person += other.first_person;
  neg_emotion += other.neg_emotion;
  social += other.social;
  word_count += other.word_count;
  return *this;
}

LiwcCounts CountLiwc(std::string_view text, const LexiconConfig& lexicon) {
  LiwcCounts counts;
  for (std::string_view token : corpus::WhitespaceTokens(text)) {
    ++counts.word_count;
    const std::string term = corpus::NormalizeTerm(token);
    if (lexicon.first_person.contains(term)) ++counts.first_person;
    if (lexicon.neg_emotion.contains(term)) ++counts.neg_emotion;
    if (lexicon.social.contains(term)) ++counts.social;
  }
  return counts;
}

}  // namespace riskbench::features
