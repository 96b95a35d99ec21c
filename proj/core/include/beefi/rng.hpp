#pragma once

#include <cstdint>
#include <limits>

namespace beefi {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Substream derivation used everywhere a run fans out into independent
/// streams (per scout, per day, per component):
///
///   child = mix64(parent ^ mix64(index + 0x632be59bd9b4e019))
///
/// The rule is part of the reproducibility contract; changing it changes
/// every golden file.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return mix64(parent ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Stream tags for derive_seed at the top level of a run.
namespace stream {
inline constexpr std::uint64_t kScouting = 1;
inline constexpr std::uint64_t kForaging = 2;
inline constexpr std::uint64_t kWeather = 3;
inline constexpr std::uint64_t kSplit = 4;
inline constexpr std::uint64_t kClassifier = 5;
inline constexpr std::uint64_t kRegions = 6;
}  // namespace stream

/// Counter-based generator: the i-th output (from 0) is mix64(key + i * golden),
/// i.e. SplitMix64 with an explicit counter. All derived quantities
/// (uniform, normal) are computed with portable arithmetic so a seed yields
/// the same sequence on every conforming platform.
///
/// Satisfies UniformRandomBitGenerator, but library distributions from
/// <random> are never used internally because their algorithms are
/// implementation-defined.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept { return next_u64(); }

  constexpr std::uint64_t next_u64() noexcept {
    return mix64(key_ + counter_++ * 0x9e3779b97f4a7c15ULL);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n), unbiased (modulo with rejection).
  std::uint64_t below(std::uint64_t n) noexcept;

  /// Standard normal via Box-Muller; the second variate is cached.
  double normal() noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace beefi
