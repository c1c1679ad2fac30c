#ifndef RISKBENCH_FEATURES_LIWC_H_
#define RISKBENCH_FEATURES_LIWC_H_

#include <cstddef>
#include <string_view>

#include "riskbench/features/lexicon.h"

namespace riskbench::features {

struct LiwcCounts {
  std::size_t first_person = 0;
  std::size_t neg_emotion = 0;
  std::size_t social = 0;
  std::size_t word_count = 0;

  LiwcCounts& operator+=(const LiwcCounts& other);
};

// Whitespace tokens matched case-insensitively (after trimming edge
// punctuation) against the lexicon's word sets. word_count counts every
// token.
LiwcCounts CountLiwc(std::string_view text, const LexiconConfig& lexicon);

}  // namespace riskbench::features

#endif  // RISKBENCH_FEATURES_LIWC_H_
