#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace kfactor {

/// 64-bit mixing function (the SplitMix64 finalizer).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Identifies one reproducible random stream.
///
/// Streams are counter based: the i-th output of stream (seed, stream) is
/// mix64(key + i * golden) with key = mix64(seed ^ mix64(stream)). Outputs
/// depend only on (seed, stream, i), so trials that derive their own stream
/// produce the same values regardless of scheduling or worker count.
struct RandomSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  /// Child stream; distinct `sub` values give unrelated streams.
  [[nodiscard]] constexpr RandomSeed derive(std::uint64_t sub) const noexcept {
    return {seed, mix64(stream ^ mix64(sub + 0x5851f42d4c957f2dULL))};
  }

  [[nodiscard]] constexpr std::uint64_t key() const noexcept {
    return mix64(seed ^ mix64(stream));
  }

  friend constexpr bool operator==(const RandomSeed&, const RandomSeed&) = default;
};

/// Maps 64 random bits to a double uniform on [0, 1) using the top 53 bits.
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Stateless keyed draw: uniform on [0, 1), a pure function of (seed, index).
inline double keyed_uniform(const RandomSeed& s, std::uint64_t index) noexcept {
  return to_unit(mix64(s.key() + index * 0x9e3779b97f4a7c15ULL));
}

/// Sequential generator over a RandomSeed stream.
///
/// Satisfies UniformRandomBitGenerator, but callers that need platform
/// independent results should use `below` / `uniform` rather than std::
/// distributions.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(const RandomSeed& s) noexcept : key_(s.key()) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    return mix64(key_ + (counter_++) * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform integer in [0, bound); bound must be positive. Lemire's method
  /// with rejection, so the result is exactly uniform.
  std::uint64_t below(std::uint64_t bound) noexcept {
    unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>((*this)()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  double uniform() noexcept { return to_unit((*this)()); }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  template <typename T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

  [[nodiscard]] std::uint64_t position() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace kfactor
