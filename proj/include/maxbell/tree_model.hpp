#pragma once

#include <Eigen/Core>

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace maxbell {

/// Homogeneous m-adic tree over (0,1]: every node splits into `arity`
/// children of equal measure, down to the finest level `depth`.
struct TreeConfig {
  int arity = 2;
  int depth = 0;

  std::size_t nodes_at(int level) const;
  std::size_t leaf_count() const { return nodes_at(depth); }
  double leaf_measure() const { return 1.0 / static_cast<double>(leaf_count()); }

  friend bool operator==(const TreeConfig&, const TreeConfig&) = default;
};

/// Upper bound on leaves per tree. Defaults to 2^24; the environment
/// variable MAXBELL_MAX_LEAVES overrides it.
std::size_t max_leaves();

TreeConfig make_tree(int arity, int depth);

/// A tree cell, addressed by level and left-to-right position on that level.
/// The digit-string form (base `arity`, most significant first) is used for
/// serialization; the root is the empty string.
struct NodeId {
  int level = 0;
  std::size_t index = 0;

  static NodeId root() { return {}; }
  NodeId parent(int arity) const;
  NodeId child(int arity, int digit) const;
  bool contains(const NodeId& other, int arity) const;

  std::string digits(int arity) const;
  static NodeId from_digits(std::string_view digits, int arity);

  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

bool is_valid(const TreeConfig& config, const NodeId& node);
double node_measure(const TreeConfig& config, const NodeId& node);

/// Half-open range [first, last) of leaf indices under `node`.
std::pair<std::size_t, std::size_t> leaf_range(const TreeConfig& config, const NodeId& node);

/// Nonnegative function, constant on each finest-level cell.
class StepFunction {
 public:
  StepFunction(TreeConfig config, Eigen::ArrayXd values);

  static StepFunction constant(const TreeConfig& config, double value);

  const TreeConfig& config() const { return config_; }
  const Eigen::ArrayXd& values() const { return values_; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  double operator[](std::size_t leaf) const { return values_[static_cast<Eigen::Index>(leaf)]; }

 private:
  TreeConfig config_;
  Eigen::ArrayXd values_;
};

/// Tree-shaped reduction: groups of `arity` consecutive entries are summed,
/// level by level. For a leaf array this yields exactly the node sums that
/// `level_sums` produces, so node averages and integrals agree bit for bit.
double tree_sum(const Eigen::ArrayXd& leaves, int arity);

/// sums[k][i] = sum of leaf values under node (k, i), for k = 0..depth.
std::vector<Eigen::ArrayXd> level_sums(const StepFunction& phi);

/// av_I(φ) for every node, indexed like `level_sums`.
std::vector<Eigen::ArrayXd> level_averages(const StepFunction& phi);

double integrate(const StepFunction& phi);
double power_integral(const StepFunction& phi, double r);

/// μ{φ > λ}.
double distribution(const StepFunction& phi, double lambda);

/// Nonincreasing profile on (0,1], one value per segment (b_{i-1}, b_i].
class Rearranged {
 public:
  Rearranged(std::vector<double> breakpoints, std::vector<double> values);

  static Rearranged constant(double value) { return Rearranged({1.0}, {value}); }

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t segment_count() const { return values_.size(); }

  double left_end(std::size_t segment) const { return segment == 0 ? 0.0 : breakpoints_[segment - 1]; }
  double length(std::size_t segment) const { return breakpoints_[segment] - left_end(segment); }

  /// ∫₀^{b_i} of the profile, for each breakpoint b_i.
  const std::vector<double>& cumulative() const { return cumulative_; }

  double integral() const { return cumulative_.back(); }
  double prefix_integral(double t) const;
  double value_at(double t) const;

  /// Segment containing t, i.e. the first i with t ≤ b_i.
  std::size_t segment_of(double t) const;

  double distribution(double lambda) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
  std::vector<double> cumulative_;
};

Rearranged decreasing_rearrangement(const StepFunction& phi);

}  // namespace maxbell
