#ifndef RISKBENCH_ATTENTION_TEMPORAL_ATTENTION_H_
#define RISKBENCH_ATTENTION_TEMPORAL_ATTENTION_H_

#include <cstddef>
#include <span>
#include <vector>

#include "riskbench/util/io.h"

namespace riskbench::attention {

// Fixed sparse content vector plus a chronological linear ramp.
struct AttentionConfig {
  std::size_t dim = 768;
  std::vector<std::size_t> content_indices = {15, 42, 127, 256, 512};
  std::vector<double> content_weights = {0.9, 0.7, 0.8, 0.6, 0.7};
  double ramp_low = 0.1;
  double ramp_high = 1.0;
  // Trailing window of posts to aggregate; 0 means every post seen so far.
  std::size_t window = 0;

  // Throws kInvalidConfig.
  void Validate() const;
};

OrderedJson AttentionConfigToJson(const AttentionConfig& cfg);
// Keys absent from `json` keep the values already in `cfg`.
void ApplyAttentionConfig(const Json& json, AttentionConfig& cfg);

// n == 1 -> {ramp_high}; otherwise ramp_low + (ramp_high - ramp_low) * i/(n-1)
// for i = 0 (oldest) .. n-1 (newest). Throws kZeroPosts for n == 0.
std::vector<double> TemporalWeights(std::size_t n, const AttentionConfig& cfg);

using EmbeddingRows = std::span<const std::span<const float>>;

// s_i = sum_k content_weights[k] * E_i[content_indices[k]].
// Throws kDimMismatch when a row is not cfg.dim long.
std::vector<double> ContentScores(EmbeddingRows posts,
                                  const AttentionConfig& cfg);

// Numerically stable softmax.
std::vector<double> Softmax(std::span<const double> scores);

// alpha_i = softmax(s)_i * w_i / sum_j softmax(s)_j * w_j.
std::vector<double> AttentionWeights(std::span<const double> content_scores,
                                     std::span<const double> temporal_weights);

struct UserEmbedding {
  std::vector<float> embedding;
  // Attention weights of the aggregated posts, oldest first.
  std::vector<double> alpha;
  // Index of the first aggregated post (non-zero when a window applies).
  std::size_t first_post = 0;
};

// Sum_i alpha_i E_i over chronologically ordered post embeddings,
// accumulated in double. Throws kZeroPosts or kDimMismatch.
UserEmbedding AggregateUser(EmbeddingRows posts, const AttentionConfig& cfg);
UserEmbedding AggregateUser(const std::vector<std::vector<float>>& posts,
                            const AttentionConfig& cfg);

}  // namespace riskbench::attention

#endif  // RISKBENCH_ATTENTION_TEMPORAL_ATTENTION_H_
