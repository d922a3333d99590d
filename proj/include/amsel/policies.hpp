#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "amsel/belief.hpp"
#include "amsel/gittins.hpp"
#include "amsel/rng.hpp"

namespace amsel {

//  Policy          | uses data | uses budget
//  ----------------+-----------+------------
//  round-robin     | no        | no
//  random          | no        | no
//  greedy:<k>      | yes       | no
//  biased-robin    | yes       | no
//  scla            | yes       | yes
//  interval:<g>    | yes       | no
//  gittins         | yes       | yes

enum class PolicyKind { round_robin, random, greedy, biased_robin, scla, interval_estimation, gittins };

struct PolicySpec {
  PolicyKind kind = PolicyKind::round_robin;
  int k = 1;            ///< look-ahead budget for greedy
  double gamma = 1.96;  ///< interval width for interval estimation

  /// Parses `round-robin`, `random`, `greedy:<k>`, `biased-robin`, `scla`,
  /// `interval:<gamma>`, `gittins`. Throws InvalidArgument.
  static PolicySpec parse(std::string_view text);

  /// Canonical identifier; parse(name()) round-trips.
  std::string name() const;

  bool uses_data() const noexcept;
  bool uses_budget() const noexcept;
};

constexpr int kMaxGreedyLookahead = 5;

struct Cursor {
  CoinIndex coin;
  Outcome outcome;
};

struct FlipRecord {
  int time;  ///< 1-based
  CoinIndex coin;
  Outcome outcome;
};

// Stateless choosers. Empty `costs` means every coin costs one unit; coins
// the remaining budget cannot pay for are never returned. Argmax ties go
// to the lowest index.

/// Coin (t - 1) mod n, zero-based, for 1-based time t.
CoinIndex choose_round_robin(int t, std::size_t n);

CoinIndex choose_random(std::size_t n, CounterRng& rng);

/// First flip of the optimal strategy for budget min(k * min cost, remaining).
/// When no flip improves on stopping, the first coin among equals is used.
CoinIndex choose_greedy_k(const BeliefState& state, int k, std::span<const int> costs = {});

/// Stay on heads, advance cyclically on tails; coin 0 first.
CoinIndex choose_biased_robin(std::optional<Cursor> cursor, std::size_t n);

/// Single-coin look-ahead: give every remaining flip to one coin and keep
/// the coin with the best expected highest mean.
CoinIndex choose_scla(const BeliefState& state, std::span<const int> costs = {});

/// argmax mean + gamma * std.
CoinIndex choose_interval_estimation(const BeliefState& state, double gamma, std::span<const int> costs = {});

/// argmax Gittins index at discount 1 - 1/s, s = remaining budget.
CoinIndex choose_gittins(const BeliefState& state, GittinsCache& cache, std::span<const int> costs = {});

/// Per-trial policy state: spec, cursor, clock and the policy's own stream.
class Policy {
 public:
  Policy(PolicySpec spec, CounterRng rng, GittinsCache* gittins = nullptr);

  /// Throws NoAffordableCoin when nothing can be flipped.
  CoinIndex choose(const BeliefState& state, std::span<const int> costs);
  void observe(CoinIndex coin, Outcome outcome);

  const PolicySpec& spec() const noexcept { return spec_; }
  const std::optional<Cursor>& cursor() const noexcept { return cursor_; }
  int time() const noexcept { return time_; }

 private:
  CoinIndex next_affordable(CoinIndex start, const BeliefState& state, std::span<const int> costs) const;

  PolicySpec spec_;
  CounterRng rng_;
  GittinsCache* gittins_;
  std::unique_ptr<GittinsCache> own_cache_;
  std::optional<Cursor> cursor_;
  int time_ = 0;
};

}  // namespace amsel
