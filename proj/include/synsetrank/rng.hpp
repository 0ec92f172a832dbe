#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "synsetrank/error.hpp"

namespace synsetrank {

// splitmix64, used to derive independent sub-seeds from one master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic random source. mt19937_64 output is pinned by the standard,
// but the std:: distribution adapters are not, so sampling is done by hand
// here; identical seeds give identical streams on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [0, bound) via rejection.
  std::uint64_t uniform_index(std::uint64_t bound) {
    if (bound == 0) throw Error::invalid("uniform_index: bound must be positive");
    std::uint64_t threshold = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= threshold);
    return x % bound;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform_real() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform_real(double lo, double hi) {
    return lo + (hi - lo) * uniform_real();
  }

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_index(i));
      std::swap(values[i - 1], values[j]);
    }
  }

  // k distinct values from [0, population), in random order.
  std::vector<std::uint32_t> sample_without_replacement(std::uint32_t population,
                                                        std::uint32_t k) {
    if (k > population)
      throw Error::invalid("sample_without_replacement: k exceeds population");
    std::vector<std::uint32_t> pool(population);
    for (std::uint32_t i = 0; i < population; ++i) pool[i] = i;
    for (std::uint32_t i = 0; i < k; ++i) {
      std::size_t j = i + static_cast<std::size_t>(uniform_index(population - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
  }

private:
  std::mt19937_64 engine_;
};

} // namespace synsetrank
