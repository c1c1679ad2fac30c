#ifndef RISKBENCH_MODEL_RNG_H_
#define RISKBENCH_MODEL_RNG_H_

#include <cstdint>
#include <span>
#include <utility>

namespace riskbench::model {

// xoshiro256** (Blackman and Vigna), state seeded through splitmix64 so
// every 64-bit seed yields the same stream on every platform.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t Next();
  // Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t Below(std::uint64_t bound);
  // Uniform double in [0, 1) with 53 random bits.
  double Uniform();

 private:
  std::uint64_t s_[4];
};

std::uint64_t SplitMix64(std::uint64_t& state);

// Fisher-Yates, walking from the back.
template <typename T>
void Shuffle(std::span<T> items, Xoshiro256& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.Below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace riskbench::model

#endif  // RISKBENCH_MODEL_RNG_H_
