#include "riskbench/corpus/labels.h"

#include "riskbench/util/error.h"

namespace riskbench::corpus {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

LabelTable LoadLabels(std::string_view bytes) {
  LabelTable labels;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    std::size_t end = bytes.find('\n', pos);
    if (end == std::string_view::npos) end = bytes.size();
    std::string_view line = bytes.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (Trim(line).empty()) continue;

    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos ||
        line.find('\t', tab + 1) != std::string_view::npos) {
      Fail(ErrorCode::kMalformedInput,
           "labels line " + std::to_string(line_no) +
               ": expected user_id<TAB>label");
    }
    const std::string_view user = Trim(line.substr(0, tab));
    const std::string_view label = Trim(line.substr(tab + 1));
    if (line_no == 1 && user == "user_id" && label == "label") continue;
    if (user.empty()) {
      Fail(ErrorCode::kMalformedInput,
           "labels line " + std::to_string(line_no) + ": empty user_id");
    }
    if (label != "0" && label != "1") {
      Fail(ErrorCode::kBadLabel, "labels line " + std::to_string(line_no) +
                                     ": label '" + std::string(label) +
                                     "' is not 0 or 1");
    }
    if (!labels.emplace(std::string(user), label == "1" ? 1 : 0).second) {
      Fail(ErrorCode::kMalformedInput,
           "labels line " + std::to_string(line_no) + ": duplicate user '" +
               std::string(user) + "'");
    }
  }
  return labels;
}

std::string WriteLabels(const LabelTable& labels) {
  std::string out;
  for (const auto& [user, label] : labels) {
    out += user;
    out += '\t';
    out += label == 1 ? '1' : '0';
    out += '\n';
  }
  return out;
}

LabelCounts CountLabels(const LabelTable& labels) {
  LabelCounts counts;
  for (const auto& [user, label] : labels) {
    (label == 1 ? counts.positives : counts.negatives) += 1;
  }
  return counts;
}

}  // namespace riskbench::corpus
