#include "maxbell/tree_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace maxbell {

namespace {

constexpr int kMaxArity = 36;
constexpr std::size_t kDefaultMaxLeaves = std::size_t{1} << 24;

std::size_t checked_power(int base, int exponent, std::size_t cap) {
  std::size_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (result > cap / static_cast<std::size_t>(base)) {
      throw std::invalid_argument("tree size arity^depth exceeds the leaf budget of " +
                                  std::to_string(cap));
    }
    result *= static_cast<std::size_t>(base);
  }
  return result;
}

char digit_char(int d) { return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10); }

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

// Sum groups of `arity` neighbours, left to right. The order is fixed so that
// any other code summing a node's children in sequence gets the same bits.
Eigen::ArrayXd reduce_level(const Eigen::ArrayXd& level, int arity) {
  const Eigen::Index parents = level.size() / arity;
  Eigen::ArrayXd out(parents);
  for (Eigen::Index i = 0; i < parents; ++i) {
    double acc = level[i * arity];
    for (int j = 1; j < arity; ++j) acc += level[i * arity + j];
    out[i] = acc;
  }
  return out;
}

}  // namespace

std::size_t TreeConfig::nodes_at(int level) const {
  std::size_t n = 1;
  for (int i = 0; i < level; ++i) n *= static_cast<std::size_t>(arity);
  return n;
}

std::size_t max_leaves() {
  if (const char* env = std::getenv("MAXBELL_MAX_LEAVES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxLeaves;
}

TreeConfig make_tree(int arity, int depth) {
  if (arity < 2) throw std::invalid_argument("arity must be at least 2");
  if (arity > kMaxArity) throw std::invalid_argument("arity must be at most 36");
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  checked_power(arity, depth, max_leaves());
  return TreeConfig{arity, depth};
}

NodeId NodeId::parent(int arity) const {
  if (level == 0) throw std::invalid_argument("the root has no parent");
  return {level - 1, index / static_cast<std::size_t>(arity)};
}

NodeId NodeId::child(int arity, int digit) const {
  return {level + 1, index * static_cast<std::size_t>(arity) + static_cast<std::size_t>(digit)};
}

bool NodeId::contains(const NodeId& other, int arity) const {
  if (other.level < level) return false;
  std::size_t idx = other.index;
  for (int l = other.level; l > level; --l) idx /= static_cast<std::size_t>(arity);
  return idx == index;
}

std::string NodeId::digits(int arity) const {
  std::string out(static_cast<std::size_t>(level), '0');
  std::size_t idx = index;
  for (int pos = level - 1; pos >= 0; --pos) {
    out[static_cast<std::size_t>(pos)] = digit_char(static_cast<int>(idx % static_cast<std::size_t>(arity)));
    idx /= static_cast<std::size_t>(arity);
  }
  return out;
}

NodeId NodeId::from_digits(std::string_view digits, int arity) {
  NodeId node;
  for (char c : digits) {
    const int d = digit_value(c);
    if (d < 0 || d >= arity) throw std::invalid_argument("invalid node digit '" + std::string(1, c) + "'");
    node = node.child(arity, d);
  }
  return node;
}

bool is_valid(const TreeConfig& config, const NodeId& node) {
  return node.level >= 0 && node.level <= config.depth && node.index < config.nodes_at(node.level);
}

double node_measure(const TreeConfig& config, const NodeId& node) {
  if (!is_valid(config, node)) throw std::invalid_argument("node id is not part of the tree");
  return 1.0 / static_cast<double>(config.nodes_at(node.level));
}

std::pair<std::size_t, std::size_t> leaf_range(const TreeConfig& config, const NodeId& node) {
  if (!is_valid(config, node)) throw std::invalid_argument("node id is not part of the tree");
  const std::size_t span = config.nodes_at(config.depth - node.level);
  return {node.index * span, (node.index + 1) * span};
}

StepFunction::StepFunction(TreeConfig config, Eigen::ArrayXd values)
    : config_(config), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.size()) != config_.leaf_count()) {
    throw std::invalid_argument("values array length must equal arity^depth");
  }
  if (!values_.allFinite()) throw std::invalid_argument("step function values must be finite");
  if ((values_ < 0.0).any()) throw std::invalid_argument("step function values must be nonnegative");
}

StepFunction StepFunction::constant(const TreeConfig& config, double value) {
  return StepFunction(config, Eigen::ArrayXd::Constant(static_cast<Eigen::Index>(config.leaf_count()), value));
}

double tree_sum(const Eigen::ArrayXd& leaves, int arity) {
  if (leaves.size() == 0) return 0.0;
  Eigen::ArrayXd level = leaves;
  while (level.size() > 1) {
    if (level.size() % arity != 0) throw std::invalid_argument("tree_sum needs a power-of-arity length");
    level = reduce_level(level, arity);
  }
  return level[0];
}

std::vector<Eigen::ArrayXd> level_sums(const StepFunction& phi) {
  const int depth = phi.config().depth;
  std::vector<Eigen::ArrayXd> sums(static_cast<std::size_t>(depth) + 1);
  sums[static_cast<std::size_t>(depth)] = phi.values();
  for (int k = depth - 1; k >= 0; --k) {
    sums[static_cast<std::size_t>(k)] = reduce_level(sums[static_cast<std::size_t>(k) + 1], phi.config().arity);
  }
  return sums;
}

std::vector<Eigen::ArrayXd> level_averages(const StepFunction& phi) {
  auto sums = level_sums(phi);
  const int depth = phi.config().depth;
  for (int k = 0; k <= depth; ++k) {
    sums[static_cast<std::size_t>(k)] /= static_cast<double>(phi.config().nodes_at(depth - k));
  }
  return sums;
}

double integrate(const StepFunction& phi) {
  return tree_sum(phi.values(), phi.config().arity) * phi.config().leaf_measure();
}

double power_integral(const StepFunction& phi, double r) {
  if (!(r >= 1.0)) throw std::invalid_argument("power_integral requires r >= 1");
  return tree_sum(phi.values().pow(r), phi.config().arity) * phi.config().leaf_measure();
}

double distribution(const StepFunction& phi, double lambda) {
  const auto count = (phi.values() > lambda).count();
  return static_cast<double>(count) / static_cast<double>(phi.size());
}

Rearranged::Rearranged(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (breakpoints_.empty() || breakpoints_.size() != values_.size()) {
    throw std::invalid_argument("profile needs one value per segment");
  }
  if (breakpoints_.back() != 1.0) throw std::invalid_argument("profile breakpoints must end at 1");
  double prev_b = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(breakpoints_[i] > prev_b)) throw std::invalid_argument("profile breakpoints must be strictly increasing in (0,1]");
    if (!std::isfinite(values_[i]) || values_[i] < 0.0) {
      throw std::invalid_argument("profile values must be finite and nonnegative");
    }
    if (i > 0 && values_[i] > values_[i - 1]) throw std::invalid_argument("profile must be nonincreasing");
    prev_b = breakpoints_[i];
  }
  cumulative_.resize(values_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    acc += values_[i] * length(i);
    cumulative_[i] = acc;
  }
}

std::size_t Rearranged::segment_of(double t) const {
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
  return it == breakpoints_.end() ? breakpoints_.size() - 1 : static_cast<std::size_t>(it - breakpoints_.begin());
}

double Rearranged::prefix_integral(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return integral();
  const std::size_t i = segment_of(t);
  const double before = i == 0 ? 0.0 : cumulative_[i - 1];
  return before + values_[i] * (t - left_end(i));
}

double Rearranged::value_at(double t) const {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("profile is defined on (0,1]");
  return values_[segment_of(t)];
}

double Rearranged::distribution(double lambda) const {
  double measure = 0.0;
  for (std::size_t i = 0; i < values_.size() && values_[i] > lambda; ++i) measure = breakpoints_[i];
  return measure;
}

Rearranged decreasing_rearrangement(const StepFunction& phi) {
  std::vector<double> sorted(phi.values().data(), phi.values().data() + phi.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double n = static_cast<double>(sorted.size());
  std::vector<double> breakpoints;
  std::vector<double> values;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 == sorted.size() || sorted[i + 1] != sorted[i]) {
      breakpoints.push_back(static_cast<double>(i + 1) / n);
      values.push_back(sorted[i]);
    }
  }
  return Rearranged(std::move(breakpoints), std::move(values));
}

}  // namespace maxbell
