#include "riskbench/attention/temporal_attention.h"

#include <algorithm>
#include <cmath>

#include "riskbench/util/error.h"

namespace riskbench::attention {

void AttentionConfig::Validate() const {
  if (dim == 0) Fail(ErrorCode::kInvalidConfig, "attention dim must be > 0");
  if (content_indices.size() != content_weights.size()) {
    Fail(ErrorCode::kInvalidConfig,
         "content_indices and content_weights differ in length");
  }
  for (std::size_t k = 0; k < content_indices.size(); ++k) {
    if (content_indices[k] >= dim) {
      Fail(ErrorCode::kInvalidConfig, "content index " +
                                          std::to_string(content_indices[k]) +
                                          " is outside dim");
    }
    if (k > 0 && content_indices[k] <= content_indices[k - 1]) {
      Fail(ErrorCode::kInvalidConfig,
           "content indices must be strictly increasing");
    }
  }
  if (!(ramp_low > 0.0) || !(ramp_low <= ramp_high)) {
    Fail(ErrorCode::kInvalidConfig, "need 0 < ramp_low <= ramp_high");
  }
}

OrderedJson AttentionConfigToJson(const AttentionConfig& cfg) {
  return OrderedJson{{"dim", cfg.dim},
                     {"content_indices", cfg.content_indices},
                     {"content_weights", cfg.content_weights},
                     {"ramp_low", cfg.ramp_low},
                     {"ramp_high", cfg.ramp_high},
                     {"window", cfg.window}};
}

void ApplyAttentionConfig(const Json& json, AttentionConfig& cfg) {
  try {
    if (json.contains("dim")) cfg.dim = json.at("dim").get<std::size_t>();
    if (json.contains("content_indices")) {
      cfg.content_indices =
          json.at("content_indices").get<std::vector<std::size_t>>();
    }
    if (json.contains("content_weights")) {
      cfg.content_weights =
          json.at("content_weights").get<std::vector<double>>();
    }
    if (json.contains("ramp_low")) cfg.ramp_low = json.at("ramp_low");
    if (json.contains("ramp_high")) cfg.ramp_high = json.at("ramp_high");
    if (json.contains("window")) cfg.window = json.at("window");
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kInvalidConfig, std::string("attention config: ") +
                                        e.what());
  }
}

std::vector<double> TemporalWeights(std::size_t n, const AttentionConfig& cfg) {
  if (n == 0) Fail(ErrorCode::kZeroPosts, "temporal weights for zero posts");
  if (n == 1) return {cfg.ramp_high};
  std::vector<double> w(n);
  const double span = cfg.ramp_high - cfg.ramp_low;
  const double last = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = cfg.ramp_low + span * static_cast<double>(i) / last;
  }
  return w;
}

std::vector<double> ContentScores(EmbeddingRows posts,
                                  const AttentionConfig& cfg) {
  std::vector<double> scores;
  scores.reserve(posts.size());
  for (std::size_t i = 0; i < posts.size(); ++i) {
    if (posts[i].size() != cfg.dim) {
      Fail(ErrorCode::kDimMismatch, "post " + std::to_string(i) + " has dim " +
                                        std::to_string(posts[i].size()) +
                                        ", expected " +
                                        std::to_string(cfg.dim));
    }
    double s = 0.0;
    for (std::size_t k = 0; k < cfg.content_indices.size(); ++k) {
      s += cfg.content_weights[k] *
           static_cast<double>(posts[i][cfg.content_indices[k]]);
    }
    scores.push_back(s);
  }
  return scores;
}

std::vector<double> Softmax(std::span<const double> scores) {
  if (scores.empty()) return {};
  const double max = *std::max_element(scores.begin(), scores.end());
  std::vector<double> p(scores.size());
  double total = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    p[i] = std::exp(scores[i] - max);
    total += p[i];
  }
  for (double& v : p) v /= total;
  return p;
}

std::vector<double> AttentionWeights(std::span<const double> content_scores,
                                     std::span<const double> temporal_weights) {
  if (content_scores.size() != temporal_weights.size()) {
    Fail(ErrorCode::kLengthMismatch, "scores and temporal weights differ");
  }
  const std::size_t n = content_scores.size();
  if (n == 0) Fail(ErrorCode::kZeroPosts, "attention over zero posts");

  std::vector<double> alpha(n);
  double total = 0.0;
  const bool uniform =
      std::all_of(content_scores.begin(), content_scores.end(),
                  [&](double s) { return s == content_scores.front(); });
  if (uniform) {
    // Uniform content probabilities cancel in the renormalization.
    for (std::size_t i = 0; i < n; ++i) total += temporal_weights[i];
    for (std::size_t i = 0; i < n; ++i) alpha[i] = temporal_weights[i] / total;
    return alpha;
  }
  const std::vector<double> p = Softmax(content_scores);
  for (std::size_t i = 0; i < n; ++i) {
    alpha[i] = p[i] * temporal_weights[i];
    total += alpha[i];
  }
  for (double& a : alpha) a /= total;
  return alpha;
}

UserEmbedding AggregateUser(EmbeddingRows posts, const AttentionConfig& cfg) {
  if (posts.empty()) Fail(ErrorCode::kZeroPosts, "user has no embeddings");
  UserEmbedding result;
  if (cfg.window > 0 && posts.size() > cfg.window) {
    result.first_post = posts.size() - cfg.window;
    posts = posts.subspan(result.first_post);
  }
  const std::vector<double> scores = ContentScores(posts, cfg);
  const std::vector<double> weights = TemporalWeights(posts.size(), cfg);
  result.alpha = AttentionWeights(scores, weights);

  std::vector<double> sum(cfg.dim, 0.0);
  for (std::size_t i = 0; i < posts.size(); ++i) {
    const double a = result.alpha[i];
    for (std::size_t k = 0; k < cfg.dim; ++k) {
      sum[k] += a * static_cast<double>(posts[i][k]);
    }
  }
  result.embedding.resize(cfg.dim);
  for (std::size_t k = 0; k < cfg.dim; ++k) {
    result.embedding[k] = static_cast<float>(sum[k]);
  }
  return result;
}

UserEmbedding AggregateUser(const std::vector<std::vector<float>>& posts,
                            const AttentionConfig& cfg) {
  std::vector<std::span<const float>> rows(posts.begin(), posts.end());
  return AggregateUser(EmbeddingRows(rows), cfg);
}

}  // namespace riskbench::attention
