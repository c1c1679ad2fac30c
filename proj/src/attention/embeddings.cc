#include "riskbench/attention/embeddings.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>

#include "riskbench/util/error.h"
#include "riskbench/util/io.h"

namespace riskbench::attention {
namespace {

std::uint32_t LoadU32(std::string_view bytes, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) {
    v = (v << 8) | static_cast<unsigned char>(bytes[offset + i]);
  }
  return v;
}

void StoreU32(std::uint32_t v, std::string& out) {
  for (int i = 0; i < 4; ++i) {
    out += static_cast<char>((v >> (8 * i)) & 0xFF);
  }
}

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(std::size_t dim) : dim_(dim) {
  if (dim == 0) Fail(ErrorCode::kDimMismatch, "embedding dim must be positive");
}

std::span<const float> EmbeddingMatrix::Row(std::size_t i) const {
  return std::span<const float>(values_).subspan(i * dim_, dim_);
}

std::optional<std::span<const float>> EmbeddingMatrix::Find(
    std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return Row(it->second);
}

void EmbeddingMatrix::Add(std::string id, std::span<const float> values) {
  if (values.size() != dim_) {
    Fail(ErrorCode::kDimMismatch, "embedding '" + id + "' has " +
                                      std::to_string(values.size()) +
                                      " values, expected " +
                                      std::to_string(dim_));
  }
  for (float v : values) {
    if (!std::isfinite(v)) {
      Fail(ErrorCode::kMalformedInput,
           "embedding '" + id + "' has a non-finite value");
    }
  }
  if (!index_.emplace(id, ids_.size()).second) {
    Fail(ErrorCode::kMalformedInput, "duplicate embedding id '" + id + "'");
  }
  ids_.push_back(std::move(id));
  values_.insert(values_.end(), values.begin(), values.end());
}

EmbeddingMatrix ReadEmbeddings(std::string_view bytes,
                               std::optional<std::size_t> expected_dim) {
  if (bytes.substr(0, kErkvMagic.size()) != kErkvMagic) {
    Fail(ErrorCode::kBadMagic, "not an ERKV1 file");
  }
  std::size_t pos = kErkvMagic.size();
  const std::size_t eol = bytes.find('\n', pos);
  if (eol == std::string_view::npos) {
    Fail(ErrorCode::kTruncatedFile, "ERKV1 header line is not terminated");
  }
  const Json header = ParseJson(bytes.substr(pos, eol - pos), "ERKV1 header");
  pos = eol + 1;

  std::size_t dim = 0, count = 0;
  try {
    if (header.at("dtype").get<std::string>() != "f32le") {
      Fail(ErrorCode::kMalformedInput, "ERKV1 dtype must be f32le");
    }
    const auto raw_dim = header.at("dim").get<std::int64_t>();
    const auto raw_count = header.at("count").get<std::int64_t>();
    if (raw_dim <= 0 || raw_count < 0) {
      Fail(ErrorCode::kMalformedInput, "ERKV1 dim/count out of range");
    }
    dim = static_cast<std::size_t>(raw_dim);
    count = static_cast<std::size_t>(raw_count);
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kMalformedInput, std::string("ERKV1 header: ") + e.what());
  }
  if (expected_dim && *expected_dim != dim) {
    Fail(ErrorCode::kDimMismatch, "ERKV1 dim " + std::to_string(dim) +
                                      ", expected " +
                                      std::to_string(*expected_dim));
  }

  EmbeddingMatrix matrix(dim);
  std::vector<float> row(dim);
  const std::size_t row_bytes = dim * 4;
  for (std::size_t r = 0; r < count; ++r) {
    const std::string where = "ERKV1 record " + std::to_string(r);
    if (bytes.size() - pos < 4) {
      Fail(ErrorCode::kTruncatedFile, where + ": missing id length");
    }
    const std::uint32_t id_len = LoadU32(bytes, pos);
    pos += 4;
    if (bytes.size() - pos < id_len) {
      Fail(ErrorCode::kTruncatedFile, where + ": id cut short");
    }
    std::string id(bytes.substr(pos, id_len));
    pos += id_len;
    if (bytes.size() - pos < row_bytes) {
      Fail(ErrorCode::kTruncatedFile,
           where + ": expected " + std::to_string(dim) + " floats, found " +
               std::to_string((bytes.size() - pos) / 4));
    }
    for (std::size_t k = 0; k < dim; ++k) {
      row[k] = std::bit_cast<float>(LoadU32(bytes, pos + 4 * k));
    }
    pos += row_bytes;
    matrix.Add(std::move(id), row);
  }
  if (pos != bytes.size()) {
    Fail(ErrorCode::kMalformedInput,
         "ERKV1 has " + std::to_string(bytes.size() - pos) +
             " bytes after the last record");
  }
  return matrix;
}

std::string WriteEmbeddings(const EmbeddingMatrix& matrix) {
  std::string out(kErkvMagic);
  const OrderedJson header = {{"dim", matrix.dim()},
                              {"count", matrix.count()},
                              {"dtype", "f32le"}};
  out += header.dump();
  out += '\n';
  for (std::size_t r = 0; r < matrix.count(); ++r) {
    const std::string& id = matrix.ids()[r];
    StoreU32(static_cast<std::uint32_t>(id.size()), out);
    out += id;
    for (float v : matrix.Row(r)) StoreU32(std::bit_cast<std::uint32_t>(v), out);
  }
  return out;
}

}  // namespace riskbench::attention
