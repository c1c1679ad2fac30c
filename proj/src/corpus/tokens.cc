#include "riskbench/corpus/tokens.h"

#include <unicode/locid.h>
#include <unicode/unistr.h>

namespace riskbench::corpus {
namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsEdgePunct(char c) {
  return c == '.' || c == ',' || c == '!' || c == '?' || c == '\'' ||
         c == '-' || c == '"';
}

}  // namespace

std::vector<std::string_view> WhitespaceTokens(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }
  return tokens;
}

std::string Lowercase(std::string_view text) {
  bool ascii = true;
  for (char c : text) {
    if (static_cast<unsigned char>(c) >= 0x80) {
      ascii = false;
      break;
    }
  }
  std::string out;
  if (ascii) {
    out.assign(text);
    for (char& c : out) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
    }
    return out;
  }
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  s.toLower(icu::Locale::getRoot());
  s.toUTF8String(out);
  return out;
}

std::string NormalizeTerm(std::string_view token) {
  std::size_t first = 0;
  std::size_t last = token.size();
  while (first < last && IsEdgePunct(token[first])) ++first;
  while (last > first && IsEdgePunct(token[last - 1])) --last;
  return Lowercase(token.substr(first, last - first));
}

}  // namespace riskbench::corpus
