#ifndef RISKBENCH_CORPUS_TEXT_CLEAN_H_
#define RISKBENCH_CORPUS_TEXT_CLEAN_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "riskbench/corpus/contractions.h"

namespace riskbench::corpus {

// Known mis-decodings (UTF-8 bytes read as cp1252) and typographic
// apostrophes, each mapped to the intended text. Every key is non-ASCII and
// strictly longer than its replacement, so repeated application terminates.
class MojibakeTable {
 public:
  static const MojibakeTable& Default();
  static MojibakeTable FromJson(const Json& object);

  // Longest key first.
  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

// The cleaning pipeline, in order:
//   1. encoding repair: mojibake replacement and NFC normalization, repeated
//      to a fixpoint; invalid UTF-8 becomes U+FFFD;
//   2. HTML entity decoding, then encoding repair again;
//   3. URL removal;
//   4. contraction expansion;
//   5. character filtering: letters, decimal digits, apostrophe, hyphen,
//      '&', '.', ',', '!', '?' survive; whitespace and every other character
//      become a space;
//   6. whitespace collapse and trim.
// The result is a fixpoint: CleanText(CleanText(x)) == CleanText(x).
std::string CleanText(std::string_view text, const ContractionTable& table);
std::string CleanText(std::string_view text, const ContractionTable& table,
                      const MojibakeTable& mojibake);

// Individual stages, exposed for testing.
std::string RepairEncoding(std::string_view text, const MojibakeTable& table);
std::string DecodeHtmlEntities(std::string_view text);
std::string RemoveUrls(std::string_view text);
std::string FilterCharacters(std::string_view text);
std::string CollapseWhitespace(std::string_view text);

bool IsRetainedCodePoint(char32_t c);

}  // namespace riskbench::corpus

#endif  // RISKBENCH_CORPUS_TEXT_CLEAN_H_
