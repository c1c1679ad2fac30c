#ifndef RISKBENCH_CORPUS_TOKENS_H_
#define RISKBENCH_CORPUS_TOKENS_H_

#include <string>
#include <string_view>
#include <vector>

namespace riskbench::corpus {

// Maximal runs of non-whitespace characters.
std::vector<std::string_view> WhitespaceTokens(std::string_view text);

// Unicode lowercase (root locale).
std::string Lowercase(std::string_view text);

// Lookup form of a token: lowercased with the sentence punctuation the
// cleaner keeps (. , ! ? ' -) peeled from both ends. May be empty.
std::string NormalizeTerm(std::string_view token);

}  // namespace riskbench::corpus

#endif  // RISKBENCH_CORPUS_TOKENS_H_
