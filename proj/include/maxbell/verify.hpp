#pragma once

#include "maxbell/maximal.hpp"
#include "maxbell/tree_model.hpp"

#include <cstddef>
#include <cstdint>

namespace maxbell {

/// Integrals shared by the tree inequalities.
struct InequalityTerms {
  double f = 0.0;          // ∫φ
  double F = 0.0;          // ∫φ^p
  double maximal_p = 0.0;  // ∫(𝓜φ)^p
  double k_q = 0.0;        // ∫φ^q (𝓜φ)^{p−q}
};

InequalityTerms inequality_terms(const StepFunction& phi, double p, double q);

/// ∫(𝓜φ)^p ≤ −c1 f^p + c2 ∫φ^q (𝓜φ)^{p−q}, valid for every β > 0.
GapReport ineq_18_report(const StepFunction& phi, double p, double q, double beta);

/// The same inequality divided through by c2:
///   ∫(𝓜φ)^{p−q}φ^q ≥ A_0(β)∫(𝓜φ)^p + (q/p)(β+1)^{1−q} f^p.
/// Stored with lhs = the right-hand expression, rhs = k_q, so gap ≥ 0 means
/// the inequality holds and gap·c2 equals the ineq_18 gap.
GapReport ineq_41_report(const StepFunction& phi, double p, double q, double beta);

/// q = 1, β = 1/(p−1): ∫(𝓜φ)^p ≤ −f^p/(p−1) + (p/(p−1))∫φ(𝓜φ)^{p−1}.
GapReport theorem_a_report(const StepFunction& phi, double p);

/// Worst normalized slack of the three elementary inequalities used in the
/// proof, over random draws: the Hölder form Σ-quotient bound, the Young-type
/// bound p x^q y^{p−q} ≤ q x^p + (p−q) y^p, and the mean-value bound
/// ((β+1)−βx)^{1−q} − (β+1)^{1−q} ≥ (q−1)βx/(β+1)^q.
struct ElementaryReport {
  std::size_t samples = 0;
  double worst_holder = 0.0;
  double worst_young = 0.0;
  double worst_mean_value = 0.0;

  bool ok(double tolerance = 1e-12) const {
    return worst_holder >= -tolerance && worst_young >= -tolerance && worst_mean_value >= -tolerance;
  }
};

ElementaryReport elementary_oracles(std::size_t sample_count, std::uint64_t seed);

}  // namespace maxbell
