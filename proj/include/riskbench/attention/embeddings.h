#ifndef RISKBENCH_ATTENTION_EMBEDDINGS_H_
#define RISKBENCH_ATTENTION_EMBEDDINGS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace riskbench::attention {

inline constexpr std::string_view kErkvMagic = "ERKV1\n";

// Post embeddings keyed by post id, in file order. Values are finite f32.
class EmbeddingMatrix {
 public:
  explicit EmbeddingMatrix(std::size_t dim = 768);

  std::size_t dim() const { return dim_; }
  std::size_t count() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }

  std::span<const float> Row(std::size_t i) const;
  std::optional<std::span<const float>> Find(std::string_view id) const;

  // Throws kDimMismatch for a wrong-length vector, kMalformedInput for
  // non-finite values or a repeated id.
  void Add(std::string id, std::span<const float> values);

 private:
  std::size_t dim_;
  std::vector<std::string> ids_;
  std::vector<float> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

// ERKV1 layout:
//   "ERKV1\n"
//   {"dim":<int>,"count":<int>,"dtype":"f32le"}\n
//   count x [u32 LE id length][id bytes (UTF-8)][dim x f32 LE]
// Throws kBadMagic, kTruncatedFile (data ends inside a record),
// kDimMismatch (header dim differs from `expected_dim`) or kMalformedInput.
EmbeddingMatrix ReadEmbeddings(std::string_view bytes,
                               std::optional<std::size_t> expected_dim = {});

std::string WriteEmbeddings(const EmbeddingMatrix& matrix);

}  // namespace riskbench::attention

#endif  // RISKBENCH_ATTENTION_EMBEDDINGS_H_
