#include "riskbench/features/sentiment.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "riskbench/corpus/tokens.h"

namespace riskbench::features {
namespace {

struct Analysis {
  std::vector<double> valences;
  double sum = 0.0;
};

double Sign(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

Analysis Analyze(std::string_view text, const LexiconConfig& lexicon) {
  std::vector<std::string> terms;
  for (std::string_view token : corpus::WhitespaceTokens(text)) {
    terms.push_back(corpus::NormalizeTerm(token));
  }
  Analysis result;
  result.valences.reserve(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    double v = 0.0;
    if (auto it = lexicon.valence.find(terms[i]); it != lexicon.valence.end()) {
      v = it->second;
    }
    if (v != 0.0) {
      if (i >= 1) {
        if (auto b = lexicon.boosters.find(terms[i - 1]);
            b != lexicon.boosters.end()) {
          v += Sign(v) * b->second;
        }
      }
      const std::size_t lo =
          i >= static_cast<std::size_t>(kNegationWindow) ? i - kNegationWindow
                                                         : 0;
      for (std::size_t j = lo; j < i; ++j) {
        if (lexicon.negators.contains(terms[j])) {
          v *= kNegationScalar;
          break;
        }
      }
    }
    result.valences.push_back(v);
    result.sum += v;
  }
  if (result.sum != 0.0) {
    const auto bangs = std::count(text.begin(), text.end(), '!');
    const double emphasis =
        kExclamationIncrement *
        static_cast<double>(std::min<std::ptrdiff_t>(bangs, kMaxExclamations));
    result.sum += Sign(result.sum) * emphasis;
  }
  return result;
}

}  // namespace

double NormalizeCompound(double sum, double alpha) {
  return std::clamp(sum / std::sqrt(sum * sum + alpha), -1.0, 1.0);
}

double SentimentSum(std::string_view text, const LexiconConfig& lexicon) {
  return Analyze(text, lexicon).sum;
}

SentimentScores ComputeSentiment(std::string_view text,
                                 const LexiconConfig& lexicon) {
  const Analysis analysis = Analyze(text, lexicon);
  SentimentScores scores;
  if (analysis.valences.empty()) return scores;
  double pos_mass = 0.0, neg_mass = 0.0, neu_count = 0.0;
  for (double v : analysis.valences) {
    if (v > 0) {
      pos_mass += v;
    } else if (v < 0) {
      neg_mass -= v;
    } else {
      neu_count += 1.0;
    }
  }
  const double total = pos_mass + neg_mass + neu_count;
  scores.pos = pos_mass / total;
  scores.neg = neg_mass / total;
  scores.neu = neu_count / total;
  scores.compound = NormalizeCompound(analysis.sum);
  return scores;
}

}  // namespace riskbench::features
