#ifndef RISKBENCH_FEATURES_FEATURE_ROW_H_
#define RISKBENCH_FEATURES_FEATURE_ROW_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "riskbench/corpus/timeline.h"
#include "riskbench/features/lexicon.h"
#include "riskbench/features/temporal.h"
#include "riskbench/features/tfidf.h"

namespace riskbench::features {

struct FeatureModels {
  TfidfModel tfidf;
  LexiconConfig lexicon = LexiconConfig::Default();
  LateNightWindow late_night;
};

struct FeatureRow {
  std::string user_id;
  std::vector<double> features;
};

// User-level activity figures shared by the feature row and the EDA box
// plots.
struct UserActivity {
  std::size_t post_count = 0;
  double span_hours = 0.0;
  // Posts per day over the active span, with the span floored at one day.
  double post_frequency = 0.0;
  std::size_t late_night_posts = 0;
  double mean_post_gap = 0.0;
};

UserActivity ComputeActivity(std::span<const corpus::CleanPost> posts,
                             const LateNightWindow& window);

// Row layout (see FeatureHeader):
//   [tfidf of all posts joined | mean neg, neu, pos, compound |
//    summed first_person, neg_emotion, social, word_count |
//    last hours_since_first | mean post_gap | late-night post count |
//    post_frequency]
// Throws kEmptyTimeline for a user without posts.
FeatureRow AssembleRow(const corpus::UserWritings& user,
                       const FeatureModels& models);

inline constexpr std::size_t kDenseFeatureCount = 12;

std::vector<std::string> FeatureColumnNames(const FeatureModels& models);

// Sidecar header: column names plus the block layout and the user-level
// pooling applied to each block.
OrderedJson FeatureHeader(const FeatureModels& models);

// JSONL {"user_id": ..., "features": [...]}.
std::string WriteFeatureRows(std::span<const FeatureRow> rows);
std::vector<FeatureRow> ReadFeatureRows(std::string_view bytes,
                                        std::string_view context = "features");

}  // namespace riskbench::features

#endif  // RISKBENCH_FEATURES_FEATURE_ROW_H_
