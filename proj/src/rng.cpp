#include "eprlab/rng.hpp"

#include <numeric>
#include <stdexcept>

namespace eprlab {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
  z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
  return z ^ (z >> 33);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix(mix(master) ^ (index * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose) {
  // FNV-1a over the tag
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : purpose) {
    h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  }
  return mix(master ^ mix(h));
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("uniform_below: empty range");
  }
  // Lemire's multiply-shift with rejection
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<bool> choose_subset(std::size_t n, std::size_t m, Rng& rng) {
  if (m > n) {
    throw std::invalid_argument("choose_subset: subset larger than population");
  }
  auto order = random_permutation(n, rng);
  std::vector<bool> mask(n, false);
  for (std::size_t i = 0; i < m; ++i) mask[order[i]] = true;
  return mask;
}

std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  shuffle(std::span<std::size_t>(perm), rng);
  return perm;
}

}  // namespace eprlab
