#ifndef RISKBENCH_FEATURES_TFIDF_H_
#define RISKBENCH_FEATURES_TFIDF_H_

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "riskbench/util/io.h"

namespace riskbench::features {

struct SparseVector {
  std::size_t dim = 0;
  // Sorted by index, no duplicates, no explicit zeros.
  std::vector<std::pair<std::size_t, double>> entries;

  double Norm() const;
  std::vector<double> ToDense() const;
};

// Unigram TF-IDF with smoothed idf(t) = ln((1 + N) / (1 + df(t))) + 1.
// Column indices follow lexicographic term order.
struct TfidfModel {
  std::map<std::string, std::size_t, std::less<>> vocabulary;
  std::vector<double> idf;
  std::size_t max_features = 0;
  std::size_t document_count = 0;

  std::size_t dim() const { return vocabulary.size(); }
  // Terms in column order.
  std::vector<std::string> Terms() const;
};

// Terms are corpus::NormalizeTerm of whitespace tokens. The vocabulary keeps
// the `max_features` terms with the highest total count across documents,
// ties broken lexicographically. Throws kEmptyCorpus when no document has a
// term, kInvalidConfig when max_features is 0.
TfidfModel FitTfidf(std::span<const std::string> documents,
                    std::size_t max_features);

// term_count * idf per vocabulary term, L2-normalized when nonzero. Unknown
// terms are ignored.
SparseVector TfidfTransform(const TfidfModel& model, std::string_view text);

OrderedJson TfidfToJson(const TfidfModel& model);
TfidfModel TfidfFromJson(const Json& json);

}  // namespace riskbench::features

#endif  // RISKBENCH_FEATURES_TFIDF_H_
