#include "amsel/gittins.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "amsel/errors.hpp"

namespace amsel {

namespace {

constexpr int kMaxHorizon = 200;
constexpr int kMaxBisections = 1000;

/// Does pulling beat retiring at the root when retirement pays `lambda`
/// per step? Backward induction over depths H..0 of the Beta lattice.
bool continue_preferred(BetaParams root, double beta, int horizon, double lambda, std::vector<double>& row) {
  const double retire = lambda / (1.0 - beta);
  const double a0 = root.alpha_heads;
  const double total0 = root.total();

  // Depth H: value of retiring or of pulling forever at the frozen mean.
  row.assign(static_cast<std::size_t>(horizon) + 1, 0.0);
  for (int i = 0; i <= horizon; ++i) {
    const double mean = (a0 + i) / (total0 + horizon);
    row[i] = std::max(retire, mean / (1.0 - beta));
  }
  for (int depth = horizon - 1; depth >= 0; --depth) {
    const double total = total0 + depth;
    for (int i = 0; i <= depth; ++i) {
      const double mean = (a0 + i) / total;
      const double pull = mean + beta * (mean * row[i + 1] + (1.0 - mean) * row[i]);
      row[i] = depth == 0 ? pull : std::max(retire, pull);
    }
  }
  return row[0] >= retire;
}

}  // namespace

double discount_for_budget(int s) {
  if (s < 1) throw InvalidArgument("remaining budget must be at least 1");
  return 1.0 - 1.0 / s;
}

int gittins_horizon(double discount, double tolerance) {
  if (discount <= 0.0) return 0;
  const double h = std::ceil(std::log(tolerance) / std::log(discount));
  return static_cast<int>(std::clamp(h, 1.0, static_cast<double>(kMaxHorizon)));
}

double gittins_index(const GittinsQuery& query) {
  if (!(query.discount >= 0.0 && query.discount < 1.0)) throw InvalidArgument("discount must lie in [0, 1)");
  if (!(query.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  const double mean = beta_mean(query.params);
  if (query.discount == 0.0) return mean;

  const int horizon = gittins_horizon(query.discount, query.tolerance);
  std::vector<double> row;
  double lo = mean;
  double hi = 1.0;
  for (int iter = 0; hi - lo > query.tolerance; ++iter) {
    if (iter >= kMaxBisections) throw NonConvergence("Gittins bisection failed to converge");
    const double mid = 0.5 * (lo + hi);
    if (continue_preferred(query.params, query.discount, horizon, mid, row)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double GittinsCache::index(BetaParams params, int remaining_budget) {
  const Key key{params.alpha_heads, params.alpha_tails, remaining_budget};
  {
    std::shared_lock lock(mutex_);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
  }
  const double value = gittins_index({params, discount_for_budget(remaining_budget), tolerance_});
  std::unique_lock lock(mutex_);
  table_.emplace(key, value);
  return value;
}

std::size_t GittinsCache::size() const {
  std::shared_lock lock(mutex_);
  return table_.size();
}

void GittinsCache::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return;
  std::string line;
  std::unique_lock lock(mutex_);
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("alpha1", 0) == 0) continue;
    Key key{};
    double tolerance = 0.0;
    double value = 0.0;
    if (std::sscanf(line.c_str(), "%d,%d,%d,%lf,%lf", &key.alpha1, &key.alpha2, &key.s, &tolerance, &value) != 5) {
      throw Error("malformed Gittins cache line: " + line);
    }
    if (tolerance != tolerance_) continue;
    table_.insert_or_assign(key, value);
  }
}

void GittinsCache::save(const std::filesystem::path& path) const {
  std::vector<std::pair<Key, double>> rows;
  {
    std::shared_lock lock(mutex_);
    rows.assign(table_.begin(), table_.end());
  }
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    const auto& a = x.first;
    const auto& b = y.first;
    if (a.alpha1 != b.alpha1) return a.alpha1 < b.alpha1;
    if (a.alpha2 != b.alpha2) return a.alpha2 < b.alpha2;
    return a.s < b.s;
  });
  std::ofstream out(path);
  if (!out) throw Error("cannot write Gittins cache " + path.string());
  out << "alpha1,alpha2,s,tolerance,index\n";
  char buffer[128];
  for (const auto& [key, value] : rows) {
    // 17 significant digits: reloaded values must be bit-identical.
    std::snprintf(buffer, sizeof buffer, "%d,%d,%d,%.17g,%.17g\n", key.alpha1, key.alpha2, key.s, tolerance_, value);
    out << buffer;
  }
}

}  // namespace amsel
