#include "riskbench/features/tfidf.h"

#include <algorithm>
#include <cmath>

#include "riskbench/corpus/tokens.h"
#include "riskbench/util/error.h"

namespace riskbench::features {

double SparseVector::Norm() const {
  double ss = 0.0;
  for (const auto& [index, value] : entries) ss += value * value;
  return std::sqrt(ss);
}

std::vector<double> SparseVector::ToDense() const {
  std::vector<double> dense(dim, 0.0);
  for (const auto& [index, value] : entries) dense[index] = value;
  return dense;
}

std::vector<std::string> TfidfModel::Terms() const {
  std::vector<std::string> terms(vocabulary.size());
  for (const auto& [term, index] : vocabulary) terms[index] = term;
  return terms;
}

TfidfModel FitTfidf(std::span<const std::string> documents,
                    std::size_t max_features) {
  if (max_features == 0) {
    Fail(ErrorCode::kInvalidConfig, "max_features must be positive");
  }
  std::map<std::string, std::size_t, std::less<>> total_count;
  std::map<std::string, std::size_t, std::less<>> doc_freq;
  for (const std::string& doc : documents) {
    std::map<std::string, std::size_t, std::less<>> counts;
    for (std::string_view token : corpus::WhitespaceTokens(doc)) {
      std::string term = corpus::NormalizeTerm(token);
      if (!term.empty()) ++counts[std::move(term)];
    }
    for (const auto& [term, count] : counts) {
      total_count[term] += count;
      ++doc_freq[term];
    }
  }
  if (total_count.empty()) {
    Fail(ErrorCode::kEmptyCorpus, "no document contains a term");
  }

  std::vector<std::pair<std::string, std::size_t>> ranked(total_count.begin(),
                                                          total_count.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     if (a.second != b.second) return a.second > b.second;
                     return a.first < b.first;
                   });
  if (ranked.size() > max_features) ranked.resize(max_features);

  std::vector<std::string> kept;
  kept.reserve(ranked.size());
  for (auto& [term, count] : ranked) kept.push_back(std::move(term));
  std::sort(kept.begin(), kept.end());

  TfidfModel model;
  model.max_features = max_features;
  model.document_count = documents.size();
  const double n = static_cast<double>(documents.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const double df = static_cast<double>(doc_freq.find(kept[i])->second);
    model.idf.push_back(std::log((1.0 + n) / (1.0 + df)) + 1.0);
    model.vocabulary.emplace(kept[i], i);
  }
  return model;
}

SparseVector TfidfTransform(const TfidfModel& model, std::string_view text) {
  std::map<std::size_t, double> counts;
  for (std::string_view token : corpus::WhitespaceTokens(text)) {
    const std::string term = corpus::NormalizeTerm(token);
    auto it = model.vocabulary.find(term);
    if (it != model.vocabulary.end()) counts[it->second] += 1.0;
  }
  SparseVector vec;
  vec.dim = model.dim();
  for (const auto& [index, count] : counts) {
    vec.entries.emplace_back(index, count * model.idf[index]);
  }
  const double norm = vec.Norm();
  if (norm > 0.0) {
    for (auto& entry : vec.entries) entry.second /= norm;
  }
  return vec;
}

OrderedJson TfidfToJson(const TfidfModel& model) {
  return OrderedJson{{"max_features", model.max_features},
                     {"document_count", model.document_count},
                     {"terms", model.Terms()},
                     {"idf", model.idf}};
}

TfidfModel TfidfFromJson(const Json& json) {
  TfidfModel model;
  try {
    model.max_features = json.at("max_features").get<std::size_t>();
    model.document_count = json.at("document_count").get<std::size_t>();
    const auto terms = json.at("terms").get<std::vector<std::string>>();
    model.idf = json.at("idf").get<std::vector<double>>();
    if (terms.size() != model.idf.size()) {
      Fail(ErrorCode::kMalformedInput, "tfidf: terms/idf length mismatch");
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (!(model.idf[i] > 0.0)) {
        Fail(ErrorCode::kMalformedInput, "tfidf: idf must be positive");
      }
      if (!model.vocabulary.emplace(terms[i], i).second) {
        Fail(ErrorCode::kMalformedInput, "tfidf: duplicate term " + terms[i]);
      }
    }
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kMalformedInput, std::string("tfidf model: ") + e.what());
  }
  return model;
}

}  // namespace riskbench::features
