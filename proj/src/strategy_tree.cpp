#include "amsel/strategy_tree.hpp"

#include <algorithm>
#include <charconv>
#include <string>
#include <vector>

#include "amsel/errors.hpp"

namespace amsel {

struct StrategyTree::Node {
  CoinIndex coin;
  bool stop;
  StrategyTree heads;
  StrategyTree tails;
};

StrategyTree StrategyTree::stop(CoinIndex winner) {
  return StrategyTree(std::make_shared<const Node>(Node{winner, true, StrategyTree(nullptr), StrategyTree(nullptr)}));
}

StrategyTree StrategyTree::flip(CoinIndex coin, StrategyTree on_heads, StrategyTree on_tails) {
  return StrategyTree(std::make_shared<const Node>(Node{coin, false, std::move(on_heads), std::move(on_tails)}));
}

bool StrategyTree::is_stop() const noexcept { return node_->stop; }
CoinIndex StrategyTree::coin() const noexcept { return node_->coin; }

const StrategyTree& StrategyTree::on_heads() const {
  if (node_->stop) throw MalformedTree("stop node has no children");
  return node_->heads;
}

const StrategyTree& StrategyTree::on_tails() const {
  if (node_->stop) throw MalformedTree("stop node has no children");
  return node_->tails;
}

std::size_t StrategyTree::leaf_count() const {
  return is_stop() ? 1 : on_heads().leaf_count() + on_tails().leaf_count();
}

std::size_t StrategyTree::depth() const {
  return is_stop() ? 0 : 1 + std::max(on_heads().depth(), on_tails().depth());
}

bool operator==(const StrategyTree& a, const StrategyTree& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_stop() != b.is_stop() || a.coin() != b.coin()) return false;
  return a.is_stop() || (a.on_heads() == b.on_heads() && a.on_tails() == b.on_tails());
}

namespace {

void write_node(const StrategyTree& tree, std::size_t indent, std::string_view prefix, std::string& out) {
  out.append(indent, ' ');
  out.append(prefix);
  out.append(tree.is_stop() ? "stop " : "flip ");
  out.append(std::to_string(tree.coin() + 1));
  out.push_back('\n');
  if (!tree.is_stop()) {
    write_node(tree.on_heads(), indent + 2, "H: ", out);
    write_node(tree.on_tails(), indent + 2, "T: ", out);
  }
}

struct Line {
  std::size_t indent;
  std::string_view body;
  std::size_t number;
};

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) {
    std::size_t number = 0;
    while (!text.empty()) {
      ++number;
      const auto eol = text.find('\n');
      std::string_view line = text.substr(0, eol);
      text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.find_first_not_of(' ') == std::string_view::npos) continue;
      const auto indent = line.find_first_not_of(' ');
      lines_.push_back({indent, line.substr(indent), number});
    }
  }

  StrategyTree parse() {
    if (lines_.empty()) throw MalformedTree("empty strategy tree");
    auto tree = parse_node(0, "");
    if (pos_ != lines_.size()) fail(lines_[pos_], "unexpected trailing line");
    return tree;
  }

 private:
  [[noreturn]] static void fail(const Line& line, const std::string& what) {
    throw MalformedTree("line " + std::to_string(line.number) + ": " + what);
  }

  StrategyTree parse_node(std::size_t indent, std::string_view prefix) {
    if (pos_ >= lines_.size()) throw MalformedTree("unexpected end of strategy tree");
    const Line& line = lines_[pos_++];
    if (line.indent != indent) fail(line, "bad indentation");
    std::string_view body = line.body;
    if (body.substr(0, prefix.size()) != prefix) fail(line, "expected prefix '" + std::string(prefix) + "'");
    body.remove_prefix(prefix.size());

    bool stop = false;
    if (body.starts_with("stop ")) {
      stop = true;
    } else if (!body.starts_with("flip ")) {
      fail(line, "expected 'stop <i>' or 'flip <i>'");
    }
    body.remove_prefix(5);
    std::size_t coin = 0;
    const auto [end, ec] = std::from_chars(body.data(), body.data() + body.size(), coin);
    if (ec != std::errc{} || end != body.data() + body.size() || coin == 0) fail(line, "bad coin index");

    if (stop) return StrategyTree::stop(coin - 1);
    auto heads = parse_node(indent + 2, "H: ");
    auto tails = parse_node(indent + 2, "T: ");
    return StrategyTree::flip(coin - 1, std::move(heads), std::move(tails));
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

struct Walker {
  std::span<const int> costs;
  double e_max_root;
  StrategyEvaluation result;

  void walk(const StrategyTree& node, const BeliefState& state, double probability) {
    if (node.coin() >= state.size()) throw MalformedTree("tree names coin " + std::to_string(node.coin() + 1) +
                                                         " of " + std::to_string(state.size()));
    if (node.is_stop()) {
      const double mean = beta_mean(state[node.coin()]);
      result.expected_highest_mean += probability * mean;
      result.regret += probability * (expected_theta_max(state) - mean);
      return;
    }
    const int cost = costs.empty() ? 1 : costs[node.coin()];
    if (cost > state.remaining_budget()) throw MalformedTree("branch exceeds the budget");
    const double p_heads = beta_mean(state[node.coin()]);
    walk(node.on_heads(), update(state, node.coin(), Outcome::heads, cost), probability * p_heads);
    walk(node.on_tails(), update(state, node.coin(), Outcome::tails, cost), probability * (1.0 - p_heads));
  }
};

}  // namespace

std::string to_text(const StrategyTree& tree) {
  std::string out;
  write_node(tree, 0, "", out);
  return out;
}

StrategyTree parse_strategy_tree(std::string_view text) { return TreeParser(text).parse(); }

StrategyEvaluation evaluate_strategy(const StrategyTree& tree, const BeliefState& root, std::span<const int> costs) {
  if (!costs.empty() && costs.size() != root.size()) throw InvalidArgument("costs do not match coin count");
  Walker walker{costs, expected_theta_max(root), {}};
  walker.walk(tree, root, 1.0);
  walker.result.regret_from_root = walker.e_max_root - walker.result.expected_highest_mean;
  return walker.result;
}

double strategy_regret(const StrategyTree& tree, const BeliefState& root, std::span<const int> costs) {
  return evaluate_strategy(tree, root, costs).regret;
}

}  // namespace amsel
