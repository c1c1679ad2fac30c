#ifndef RISKBENCH_CORPUS_LABELS_H_
#define RISKBENCH_CORPUS_LABELS_H_

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

namespace riskbench::corpus {

// user_id -> 0 (control) or 1 (depressed).
using LabelTable = std::map<std::string, int, std::less<>>;

struct LabelCounts {
  std::size_t negatives = 0;
  std::size_t positives = 0;

  std::size_t total() const { return negatives + positives; }
};

// TSV lines "user_id<TAB>label". Blank lines and an optional
// "user_id<TAB>label" header are skipped. Throws kMalformedInput for lines
// without exactly two fields or repeated users, kBadLabel for labels outside
// {0, 1}.
LabelTable LoadLabels(std::string_view bytes);

std::string WriteLabels(const LabelTable& labels);

LabelCounts CountLabels(const LabelTable& labels);

}  // namespace riskbench::corpus

#endif  // RISKBENCH_CORPUS_LABELS_H_
