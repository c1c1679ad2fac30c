#ifndef RISKBENCH_SRC_CORPUS_UNICODE_UTIL_H_
#define RISKBENCH_SRC_CORPUS_UNICODE_UTIL_H_

#include <string>
#include <string_view>

namespace riskbench::corpus::internal {

// Ill-formed sequences decode to U+FFFD.
std::u32string DecodeUtf8(std::string_view text);
std::string EncodeUtf8(std::u32string_view text);
void AppendUtf8(char32_t c, std::string& out);

bool IsAlnum(char32_t c);
bool IsWhitespace(char32_t c);

}  // namespace riskbench::corpus::internal

#endif  // RISKBENCH_SRC_CORPUS_UNICODE_UTIL_H_
