#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bnt {

// Counter-based deterministic RNG (splitmix64 over a counter). A (seed, stream)
// pair selects an independent substream, so per-trial streams can be handed to
// worker threads and still reproduce the serial results bit-for-bit.
class Rng {
 public:
  Rng(uint64_t seed, uint64_t stream = 0)
      : base_(mix(seed ^ mix(stream + 0x9E3779B97F4A7C15ULL))), counter_(0) {}

  uint64_t next_u64() { return mix(base_ + (++counter_) * 0x9E3779B97F4A7C15ULL); }

  // Uniform double in [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi], inclusive. Lemire-style scaling; the tiny
  // modulo bias of plain % would be harmless here but this keeps draws cheap
  // and platform-stable.
  int uniform_int(int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("uniform_int: empty range");
    uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
    unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * span;
    return lo + static_cast<int>(wide >> 64);
  }

  size_t uniform_index(size_t count) {
    if (count == 0) throw std::invalid_argument("uniform_index: empty range");
    unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * count;
    return static_cast<size_t>(wide >> 64);
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = uniform_index(i);
      std::swap(items[i - 1], items[j]);
    }
  }

  // `count` distinct values from {0, ..., population-1}, ascending.
  std::vector<int> sample_distinct(int population, int count) {
    if (count < 0 || count > population)
      throw std::invalid_argument("sample_distinct: bad count");
    std::vector<int> pool(population);
    for (int i = 0; i < population; ++i) pool[i] = i;
    for (int i = 0; i < count; ++i) {
      size_t j = i + uniform_index(pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

 private:
  static uint64_t mix(uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  uint64_t base_;
  uint64_t counter_;
};

}  // namespace bnt
