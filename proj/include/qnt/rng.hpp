// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace qnt {

// k-th output of the splitmix64 stream started at `seed` (Vigna's generator,
// state advances by the 64-bit golden ratio). Stream outputs are the standard
// way to derive independent sub-seeds: worker w uses splitmix64_at(seed, w).
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + (k + 1) * 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64_at(seed, index);
}

// Order-sensitive combiner for tagging streams with a tuple of integers.
inline std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x243f6a8885a308d3ull;
  for (std::uint64_t w : words) h = splitmix64_at(h ^ w, 0);
  return h;
}

// mt19937_64 with a fixed 53-bit mapping to doubles. The engine's output
// sequence is pinned by the standard; std::uniform_real_distribution is not,
// so the mapping is done here to keep streams bit-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // uniform in [0, 1)
  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace qnt
