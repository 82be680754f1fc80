#pragma once

#include "maxbell/hardy.hpp"
#include "maxbell/tree_model.hpp"

#include <span>
#include <vector>

namespace maxbell {

/// How a nonincreasing profile is laid out on the tree.
enum class SpineLayout {
  /// Values in nonincreasing order left to right: the leftmost cells form a
  /// nested chain K_0 ⊃ K_1 ⊃ … whose averages are the Hardy averages of the
  /// profile at t = arity^{−j}.
  chain,
  /// Recursive proportional mixing. A cell keeps its smallest values in one
  /// descendant node and deals the rest, largest first and in proportion to
  /// size, to the other children along a one- or two-level path; each of those
  /// then holds a scaled copy of the top of the cell's distribution, so its
  /// average tracks the Hardy average on a finer radial grid than the chain.
  interleaved,
};

struct SpineSpec {
  Profile profile;
  int arity = 2;
  int depth = 1;
  SpineLayout layout = SpineLayout::interleaved;
  /// Cells with at least this many levels below them mix over two levels
  /// (radial ratio 1 − arity^{−2}); smaller cells over one.
  int deep_mix_height = 11;
};

/// Cell averages of the profile over the `cells` equal cells of (0,1],
/// nonincreasing.
Eigen::ArrayXd sample_profile(const Profile& g, std::size_t cells);

/// A step function whose decreasing rearrangement is the sampled profile and
/// whose maximal integrals approach the Hardy integrals of the profile.
StepFunction spine_construct(const SpineSpec& spec);

struct Refinement {
  int arity = 2;
  int depth = 10;
};

/// Arity 2, depths 10, 12, …, 20.
std::vector<Refinement> default_ladder();

struct ExtremalSequence {
  double beta = 0.0;
  PowerLaw profile;
  std::vector<Refinement> refinements;
  std::vector<StepFunction> steps;
};

/// Rearrangements of g_β with β = solve_beta(f, F, p), one per refinement.
/// Along the ladder ∫φ^p → F and ∫(𝓜φ)^p → B(f, F).
ExtremalSequence extremal_sequence(double f, double F, double p, std::span<const Refinement> refinements,
                                   SpineLayout layout = SpineLayout::interleaved);

/// ∫|𝓜φ − (β+1)φ|^p.
double stability_metric(const StepFunction& phi, double beta, double p);

struct QTrackPoint {
  double A = 0.0;          // ∫φ^q
  double measured = 0.0;   // ∫(𝓜φ)^q
  double omega = 0.0;      // ω_q(f^q/A)
  double predicted = 0.0;  // ω_q(f^q/A)^q · A
};

std::vector<QTrackPoint> q_integral_track(std::span<const StepFunction> phis, double q, double beta);

struct ExperimentRow {
  std::size_t step = 0;
  int arity = 0;
  int depth = 0;
  double f = 0.0;
  double F_measured = 0.0;
  double maximal_p_integral = 0.0;
  double bellman_target = 0.0;
  double gap18 = 0.0;
  double gap41 = 0.0;
  double stability = 0.0;
  double A_q = 0.0;
  double q_measured = 0.0;
  double q_predicted = 0.0;
};

/// Evaluates one extremal ladder at (p, q) with the matched β.
std::vector<ExperimentRow> run_extremal_experiment(double f, double F, double p, double q,
                                                   std::span<const Refinement> refinements,
                                                   SpineLayout layout = SpineLayout::interleaved);

}  // namespace maxbell
