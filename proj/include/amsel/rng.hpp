#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string_view>

#include "amsel/belief.hpp"

namespace amsel {

/// Counter-based generator: output k of a stream is a SplitMix64 hash of
/// (key, k). Streams with different keys are independent and any stream
/// can be derived without touching another.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key = 0, std::uint64_t counter = 0) noexcept : key_(key), counter_(counter) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Uniform integer in [0, n), unbiased.
  std::uint64_t below(std::uint64_t n) noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives a stream key from a master seed and a path of labels.
std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept;

/// FNV-1a of a label, for keying streams by name.
std::uint64_t label_hash(std::string_view label) noexcept;

/// Draws Theta ~ Beta(a, b) as G_a / (G_a + G_b) with Gamma variates.
double sample_beta(BetaParams p, CounterRng& rng);

}  // namespace amsel
