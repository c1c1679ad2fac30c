#include "riskbench/features/feature_row.h"

#include <algorithm>

#include "riskbench/features/liwc.h"
#include "riskbench/features/sentiment.h"
#include "riskbench/util/error.h"

namespace riskbench::features {

UserActivity ComputeActivity(std::span<const corpus::CleanPost> posts,
                             const LateNightWindow& window) {
  std::vector<UnixSeconds> stamps;
  stamps.reserve(posts.size());
  for (const auto& post : posts) stamps.push_back(post.timestamp);
  const auto temporal = ComputeTemporalFeatures(stamps, window);

  UserActivity activity;
  activity.post_count = posts.size();
  activity.span_hours = temporal.back().hours_since_first;
  double gap_sum = 0.0;
  for (const auto& t : temporal) {
    gap_sum += t.post_gap;
    if (t.is_late_night) ++activity.late_night_posts;
  }
  activity.mean_post_gap = gap_sum / static_cast<double>(temporal.size());
  activity.post_frequency = static_cast<double>(posts.size()) /
                            std::max(1.0, activity.span_hours / 24.0);
  return activity;
}

FeatureRow AssembleRow(const corpus::UserWritings& user,
                       const FeatureModels& models) {
  if (user.posts.empty()) {
    Fail(ErrorCode::kEmptyTimeline, "user " + user.user_id + " has no posts");
  }
  FeatureRow row;
  row.user_id = user.user_id;
  row.features.reserve(models.tfidf.dim() + kDenseFeatureCount);

  std::string joined;
  for (const auto& post : user.posts) {
    if (post.text.empty()) continue;
    if (!joined.empty()) joined += ' ';
    joined += post.text;
  }
  const std::vector<double> tfidf =
      TfidfTransform(models.tfidf, joined).ToDense();
  row.features.insert(row.features.end(), tfidf.begin(), tfidf.end());

  SentimentScores mean;
  LiwcCounts liwc;
  for (const auto& post : user.posts) {
    const SentimentScores s = ComputeSentiment(post.text, models.lexicon);
    mean.neg += s.neg;
    mean.neu += s.neu;
    mean.pos += s.pos;
    mean.compound += s.compound;
    liwc += CountLiwc(post.text, models.lexicon);
  }
  const double n = static_cast<double>(user.posts.size());
  row.features.push_back(mean.neg / n);
  row.features.push_back(mean.neu / n);
  row.features.push_back(mean.pos / n);
  row.features.push_back(mean.compound / n);
  row.features.push_back(static_cast<double>(liwc.first_person));
  row.features.push_back(static_cast<double>(liwc.neg_emotion));
  row.features.push_back(static_cast<double>(liwc.social));
  row.features.push_back(static_cast<double>(liwc.word_count));

  const UserActivity activity = ComputeActivity(user.posts, models.late_night);
  row.features.push_back(activity.span_hours);
  row.features.push_back(activity.mean_post_gap);
  row.features.push_back(static_cast<double>(activity.late_night_posts));
  row.features.push_back(activity.post_frequency);
  return row;
}

std::vector<std::string> FeatureColumnNames(const FeatureModels& models) {
  std::vector<std::string> names;
  for (const std::string& term : models.tfidf.Terms()) {
    names.push_back("tfidf:" + term);
  }
  for (const char* name :
       {"sentiment_neg_mean", "sentiment_neu_mean", "sentiment_pos_mean",
        "sentiment_compound_mean", "first_person_count", "neg_emotion_count",
        "social_count", "word_count", "hours_since_first_last",
        "post_gap_mean", "late_night_posts", "post_frequency"}) {
    names.emplace_back(name);
  }
  return names;
}

OrderedJson FeatureHeader(const FeatureModels& models) {
  const std::size_t t = models.tfidf.dim();
  OrderedJson blocks = OrderedJson::array();
  blocks.push_back({{"name", "tfidf"}, {"start", 0}, {"length", t},
                    {"pooling", "tfidf of all posts joined by a space"}});
  blocks.push_back({{"name", "sentiment"}, {"start", t}, {"length", 4},
                    {"pooling", "mean over posts"}});
  blocks.push_back({{"name", "liwc"}, {"start", t + 4}, {"length", 4},
                    {"pooling", "sum over posts"}});
  blocks.push_back({{"name", "hours_since_first"}, {"start", t + 8},
                    {"length", 1}, {"pooling", "value at last post"}});
  blocks.push_back({{"name", "post_gap"}, {"start", t + 9}, {"length", 1},
                    {"pooling", "mean over posts (first gap is 0)"}});
  blocks.push_back({{"name", "late_night_posts"}, {"start", t + 10},
                    {"length", 1},
                    {"pooling", "count of posts in the late-night window"}});
  blocks.push_back({{"name", "post_frequency"}, {"start", t + 11},
                    {"length", 1},
                    {"pooling", "posts per day over the active span, span "
                                "floored at one day"}});
  return OrderedJson{
      {"dim", t + kDenseFeatureCount},
      {"columns", FeatureColumnNames(models)},
      {"blocks", blocks},
      {"late_night_window_utc",
       {models.late_night.first_hour, models.late_night.last_hour}}};
}

std::string WriteFeatureRows(std::span<const FeatureRow> rows) {
  std::string out;
  for (const FeatureRow& row : rows) {
    OrderedJson line = {{"user_id", row.user_id}, {"features", row.features}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::vector<FeatureRow> ReadFeatureRows(std::string_view bytes,
                                        std::string_view context) {
  std::vector<FeatureRow> rows;
  std::size_t line = 0;
  for (const Json& json : ParseJsonLines(bytes, context)) {
    ++line;
    try {
      FeatureRow row;
      row.user_id = json.at("user_id").get<std::string>();
      row.features = json.at("features").get<std::vector<double>>();
      if (!rows.empty() && rows.front().features.size() != row.features.size()) {
        Fail(ErrorCode::kDimMismatch, std::string(context) + " row " +
                                          std::to_string(line) +
                                          ": feature length differs");
      }
      rows.push_back(std::move(row));
    } catch (const Json::exception& e) {
      Fail(ErrorCode::kMalformedInput, std::string(context) + " row " +
                                           std::to_string(line) + ": " +
                                           e.what());
    }
  }
  return rows;
}

}  // namespace riskbench::features
