#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace gcaofp {

/// SplitMix64 finalizer. Used to derive independent sub-seeds from one user seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Named random streams. Each consumer of randomness draws from its own stream
/// so that, e.g., changing the sweep order never perturbs initial opinions.
enum class Stream : std::uint64_t {
  opinions = 1,
  partition = 2,
  sweeps = 3,
  graph = 4,
};

inline std::uint64_t derive_seed(std::uint64_t seed, Stream stream) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stream)));
}

/// Portable random source: MT19937-64 engine plus hand-written conversions.
///
/// The standard distributions (uniform_real_distribution, uniform_int_distribution,
/// std::shuffle) are implementation-defined, so traces would differ between
/// standard libraries. The conversions below are fixed:
///   - uniform01: top 53 bits of one engine output, scaled by 2^-53, in [0, 1)
///   - below(k):  rejection sampling on the full 64-bit output, r % k
///   - shuffle:   Fisher-Yates from the back, swap(i, below(i + 1))
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, Stream stream) : engine_(derive_seed(seed, stream)) {}

  std::uint64_t next() { return engine_(); }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::uint64_t below(std::uint64_t k) {
    // 2^64 mod k; outputs below it would bias the low residues.
    const std::uint64_t threshold = (0 - k) % k;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % k;
    }
  }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gcaofp
