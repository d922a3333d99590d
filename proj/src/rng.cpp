#include "amsel/rng.hpp"

#include <cmath>

namespace amsel {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

double standard_normal(CounterRng& rng) {
  // Box-Muller; one variate per pair keeps the stream position simple.
  const double u1 = 1.0 - rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

double sample_gamma(int shape, CounterRng& rng) {
  if (shape <= 32) {
    double sum = 0.0;
    for (int i = 0; i < shape; ++i) sum -= std::log(1.0 - rng.uniform());
    return sum;
  }
  // Marsaglia-Tsang for larger shapes.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = 1.0 - rng.uniform();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) return d * v;
  }
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CounterRng::result_type CounterRng::operator()() noexcept {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double CounterRng::uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

std::uint64_t CounterRng::below(std::uint64_t n) noexcept {
  if (n <= 1) return 0;
  const std::uint64_t limit = max() - max() % n;
  std::uint64_t x = 0;
  do {
    x = (*this)();
  } while (x >= limit);
  return x % n;
}

std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> path) noexcept {
  std::uint64_t h = mix64(seed + kGolden);
  for (auto label : path) h = mix64(h ^ mix64(label + kGolden));
  return h;
}

std::uint64_t label_hash(std::string_view label) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double sample_beta(BetaParams p, CounterRng& rng) {
  const double x = sample_gamma(p.alpha_heads, rng);
  const double y = sample_gamma(p.alpha_tails, rng);
  return x / (x + y);
}

}  // namespace amsel
