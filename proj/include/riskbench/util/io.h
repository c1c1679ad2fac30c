#ifndef RISKBENCH_UTIL_IO_H_
#define RISKBENCH_UTIL_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace riskbench {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

std::string ReadFile(const std::filesystem::path& path);

// Writes to a sibling temp file, then renames over `path`, so readers never
// observe a partially written artifact.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view data);

// `context` names the source (usually a file path) in error messages.
Json ParseJson(std::string_view text, std::string_view context);

// One JSON value per non-blank line.
std::vector<Json> ParseJsonLines(std::string_view text,
                                 std::string_view context);

template <typename JsonT>
std::string DumpJsonLines(const std::vector<JsonT>& rows) {
  std::string out;
  for (const auto& row : rows) {
    out += row.dump();
    out += '\n';
  }
  return out;
}

}  // namespace riskbench

#endif  // RISKBENCH_UTIL_IO_H_
