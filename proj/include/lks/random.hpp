#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace lks {

/// Seedable, platform-stable generator.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Bounded draws use rejection sampling instead of
/// std::uniform_int_distribution, whose algorithm is implementation-defined.
///
/// Stream splitting: sub-stream `i` of seed `s` is seeded with
/// splitmix64(s + (i + 1) * 0x9E3779B97F4A7C15). Trials, retries and workers
/// each take their own stream index so results never depend on scheduling.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);
  static Rng stream(std::uint64_t seed, std::uint64_t index) { return Rng(stream_seed(seed, index)); }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  /// One fair bit. Bits are taken from 64-bit words, least significant first.
  bool coin();

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t bits_ = 0;
  int bits_left_ = 0;
};

}  // namespace lks
