#pragma once

#include "maxbell/tree_model.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace maxbell {

/// One evaluated inequality instance. `lhs` is always the side claimed to be
/// smaller, so the claim holds iff gap = rhs - lhs is nonnegative.
struct GapReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  std::map<std::string, double> components;
  std::map<std::string, double> params;
};

GapReport make_gap_report(std::string name, double lhs, double rhs);

/// Tree maximal function: at each leaf, the largest average over the cells
/// containing it (the leaf cell included).
StepFunction maximal_function(const StepFunction& phi);

/// A member I of the support family S_φ.
struct SupportNode {
  NodeId id;
  double measure = 0.0;    // μ(I)
  double average = 0.0;    // y_I = av_I(φ)
  double a_measure = 0.0;  // μ(A(φ,I))
  std::size_t a_count = 0; // leaves in A(φ,I)
  std::optional<std::size_t> star;  // index of I* in Linearization::nodes
};

/// Linearization 𝓜φ = Σ_{I∈S_φ} y_I·𝟙_{A(φ,I)}.
///
/// `nodes` is sorted by (level, index), so nodes[0] is the root. `owner[x]`
/// is the index of I_φ(x), the largest cell attaining the maximal average at
/// leaf x; A(φ,I) is the set of leaves owned by I.
struct Linearization {
  TreeConfig config;
  std::vector<SupportNode> nodes;
  std::vector<std::size_t> owner;

  std::optional<std::size_t> find(const NodeId& id) const;

  /// Indices J with J* = I.
  std::vector<std::size_t> star_children(std::size_t i) const;

  /// Leafwise Σ y_I·𝟙_{A(φ,I)}.
  Eigen::ArrayXd reconstruct() const;
};

Linearization linearize(const StepFunction& phi);

/// Weak type (1,1): lhs = μ{𝓜φ > λ}, rhs = (1/λ)∫_{𝓜φ>λ} φ.
GapReport weak_type_gap(const StepFunction& phi, double lambda);

/// Doob-type bound: lhs = ‖𝓜φ‖_p, rhs = p/(p-1)·‖φ‖_p.
GapReport lp_bound_gap(const StepFunction& phi, double p);

/// Per-support-node slack of the first relaxation in the proof of the
/// (q, β) inequality:
///   ∫_{A(I)} φ^q − [μ(I) y_I^q / τ_I^{q−1} − Σ_{J*=I} μ(J) y_J^q / (β+1)^{q−1}],
/// with τ_I = (β+1) − β·μ(A(I))/μ(I). Nonnegative for every support node.
std::map<NodeId, double> linearization_slack(const StepFunction& phi, double q, double beta, double p);
std::map<NodeId, double> linearization_slack(const StepFunction& phi, const Linearization& lin, double q,
                                             double beta, double p);

}  // namespace maxbell
