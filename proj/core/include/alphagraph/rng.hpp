#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace alphagraph {

/// SplitMix64 finalizer. Bijective 64-bit mixer used for stream key derivation.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256** engine. Satisfies UniformRandomBitGenerator.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) noexcept {
    std::uint64_t x = seed;
    for (auto& word : state_) {
      x += 0x9e3779b97f4a7c15ULL;
      word = mix64(x);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in (0, 1]. Never returns 0.
  double uniform_open_closed() noexcept {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform double in [0, 1).
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    // Lemire's multiply-shift with rejection.
    std::uint64_t x = (*this)();
    u128 m = static_cast<u128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        x = (*this)();
        m = static_cast<u128>(x) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  __extension__ using u128 = unsigned __int128;

  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

/// A named position in the splittable seeding tree.
///
/// A stream is a 64-bit key. Children are derived from (parent key, index)
/// so that any replicate or distance class can be reached directly without
/// consuming random numbers from a sibling. Two streams with the same key
/// always produce the same engine.
class Stream {
 public:
  constexpr explicit Stream(std::uint64_t key) noexcept : key_(key) {}

  [[nodiscard]] constexpr Stream child(std::uint64_t index) const noexcept {
    return Stream(mix64(key_ ^ mix64(index ^ 0x6a09e667f3bcc909ULL)));
  }

  [[nodiscard]] Xoshiro256 engine() const noexcept { return Xoshiro256(key_); }
  [[nodiscard]] constexpr std::uint64_t key() const noexcept { return key_; }

  friend constexpr bool operator==(Stream, Stream) = default;

 private:
  std::uint64_t key_;
};

/// Reserved child indices. Distance classes use children 1..floor(n/2).
namespace stream_tag {
inline constexpr std::uint64_t kActivations = 0x8000000000000001ULL;
inline constexpr std::uint64_t kNaive = 0x8000000000000002ULL;
inline constexpr std::uint64_t kAnalysis = 0x8000000000000003ULL;
inline constexpr std::uint64_t kGraph = 0x8000000000000004ULL;
}  // namespace stream_tag

/// Stream of replicate `index` under `master_seed`.
constexpr Stream replicate_stream(std::uint64_t master_seed, std::uint64_t index) noexcept {
  return Stream(master_seed).child(index);
}

}  // namespace alphagraph
