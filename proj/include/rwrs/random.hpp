#pragma once

// Counter-based random streams.
//
// Every stream is identified by a 64-bit key derived from (master seed, role,
// replicate, copy, site, ...). Draw k of a stream is a pure function of
// (key, k), so any replicate or scenery site can be regenerated on any worker
// without touching a shared generator.

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace rwrs {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Identifies one independent substream.
class StreamKey {
 public:
  constexpr StreamKey() = default;
  constexpr explicit StreamKey(std::uint64_t seed) : value_(mix64(seed ^ 0x5eed5eed5eed5eedULL)) {}

  /// Child stream for a sub-index (replicate, copy, site, role).
  [[nodiscard]] constexpr StreamKey child(std::uint64_t index) const noexcept {
    StreamKey k;
    k.value_ = mix64(value_ ^ mix64(index + 0x632be59bd9b4e019ULL));
    return k;
  }

  [[nodiscard]] constexpr StreamKey child(std::initializer_list<std::uint64_t> path) const noexcept {
    StreamKey k = *this;
    for (auto i : path) k = k.child(i);
    return k;
  }

  [[nodiscard]] constexpr std::uint64_t value() const noexcept { return value_; }

  friend constexpr bool operator==(StreamKey, StreamKey) = default;

 private:
  std::uint64_t value_ = 0;
};

/// Stream roles used when deriving child keys.
enum class StreamRole : std::uint64_t {
  Walk = 1,
  Scenery = 2,
  Fbm = 3,
  BinNoise = 4,
  Oracle = 5,
  Stable = 6,
};

[[nodiscard]] constexpr StreamKey role_key(StreamKey key, StreamRole role) noexcept {
  return key.child(0xA000'0000'0000'0000ULL + static_cast<std::uint64_t>(role));
}

/// UniformRandomBitGenerator over a counter-based stream.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  constexpr explicit CounterRng(StreamKey key) noexcept : key_(key.value()) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    return mix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
  }

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential() noexcept { return -std::log(uniform()); }

  /// Standard normal via the Marsaglia polar method; caches the second variate.
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double a, b, s;
    do {
      a = 2.0 * uniform() - 1.0;
      b = 2.0 * uniform() - 1.0;
      s = a * a + b * b;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = b * f;
    has_spare_ = true;
    return a * f;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rwrs
