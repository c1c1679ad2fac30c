#ifndef RISKBENCH_FEATURES_SENTIMENT_H_
#define RISKBENCH_FEATURES_SENTIMENT_H_

#include <string_view>

#include "riskbench/features/lexicon.h"

namespace riskbench::features {

struct SentimentScores {
  double neg = 0.0;
  double neu = 0.0;
  double pos = 0.0;
  double compound = 0.0;
};

inline constexpr double kNegationScalar = -0.74;
inline constexpr int kNegationWindow = 3;
inline constexpr double kExclamationIncrement = 0.292;
inline constexpr int kMaxExclamations = 4;
inline constexpr double kCompoundAlpha = 15.0;

// S / sqrt(S^2 + alpha), clamped to [-1, 1].
double NormalizeCompound(double sum, double alpha = kCompoundAlpha);

// Lexicon sentiment in the style of VADER, reduced to:
//  - token valence from the lexicon (0 when absent);
//  - a booster as the immediately preceding token adds its increment in the
//    direction of the valence sign;
//  - a negator among the three preceding tokens multiplies by -0.74;
//  - every '!' in the text, up to four, adds 0.292 in the direction of the
//    summed valence;
//  - compound = NormalizeCompound(sum).
// neg/pos are the shares of absolute valence mass carried by negative and
// positive tokens; each zero-valence token contributes 1 to neu. Empty text
// scores all zeros.
SentimentScores ComputeSentiment(std::string_view text,
                                 const LexiconConfig& lexicon);

// The adjusted valence sum S before normalization (exclamations included).
double SentimentSum(std::string_view text, const LexiconConfig& lexicon);

}  // namespace riskbench::features

#endif  // RISKBENCH_FEATURES_SENTIMENT_H_
