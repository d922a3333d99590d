#pragma once

#include <cstdint>
#include <filesystem>
#include <shared_mutex>
#include <unordered_map>

#include "amsel/belief.hpp"

namespace amsel {

/// beta_s = 1 - 1/s: the geometric discount whose expected horizon is s flips.
double discount_for_budget(int s);

struct GittinsQuery {
  BetaParams params;
  double discount = 0.0;
  double tolerance = 1e-6;
};

/// Truncation depth of the lattice DP: ceil(ln(tol) / ln(beta)), capped at 200.
int gittins_horizon(double discount, double tolerance);

/// Retirement-calibrated Gittins index of a Beta-Bernoulli arm: the
/// retirement reward per step at which continuing and retiring are
/// indifferent at the root. Bisection over [mean, 1]; each probe is a
/// finite-horizon DP over the Beta lattice.
double gittins_index(const GittinsQuery& query);

/// Memo of indices keyed by (alpha1, alpha2, s, tolerance). Lookups take a
/// shared lock; inserts are idempotent because the index is a pure function.
class GittinsCache {
 public:
  explicit GittinsCache(double tolerance = 1e-6) : tolerance_(tolerance) {}

  double index(BetaParams params, int remaining_budget);

  double tolerance() const noexcept { return tolerance_; }
  std::size_t size() const;

  /// CSV `alpha1,alpha2,s,tolerance,index`; rows for other tolerances are ignored.
  /// A missing file is a cold start.
  void load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

 private:
  struct Key {
    int alpha1;
    int alpha2;
    int s;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::uint64_t h = static_cast<std::uint32_t>(k.alpha1);
      h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(k.alpha2);
      h = h * 0x9E3779B97F4A7C15ULL ^ static_cast<std::uint32_t>(k.s);
      return static_cast<std::size_t>(h ^ (h >> 29));
    }
  };

  double tolerance_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<Key, double, KeyHash> table_;
};

}  // namespace amsel
