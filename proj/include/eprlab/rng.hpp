#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace eprlab {

/// SplitMix64. Small state, so one generator per block is cheap, and streams
/// derived from (master seed, index) are independent of evaluation order.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Seed of the stream for `index` under `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);
/// Named sub-stream, e.g. derive_seed(seed, "attack").
std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose);

inline Rng stream(std::uint64_t master, std::uint64_t index) {
  return Rng(derive_seed(master, index));
}

/// Uniform integer in [0, n). n must be positive.
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(Rng& rng);

inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

/// Membership mask of a uniformly random m-subset of {0..n-1}.
std::vector<bool> choose_subset(std::size_t n, std::size_t m, Rng& rng);

/// Uniform random permutation of {0..n-1}.
std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);

}  // namespace eprlab
