#pragma once

#include "maxbell/maximal.hpp"
#include "maxbell/tree_model.hpp"

#include <span>
#include <variant>
#include <vector>

namespace maxbell {

/// g(t) = scale · t^(−exponent) on (0,1], with 0 ≤ exponent < 1.
struct PowerLaw {
  double scale = 0.0;
  double exponent = 0.0;

  PowerLaw() = default;
  PowerLaw(double scale, double exponent);

  /// The g_β family: exponent β/(β+1), scale f(1 − exponent), so ∫g = f and
  /// the Hardy average is (β+1)·g.
  static PowerLaw from_f_beta(double f, double beta);

  /// The g_α family: scale f(1 − α), so ∫g = f.
  static PowerLaw from_f_alpha(double f, double alpha);

  double operator()(double t) const;
  double integral() const { return scale / (1.0 - exponent); }
  double prefix_integral(double t) const;
};

using Profile = std::variant<Rearranged, PowerLaw>;

double profile_integral(const Profile& g);

/// (1/t)∫₀ᵗ g.
double hardy_average(const Rearranged& g, double t);
double hardy_average(const PowerLaw& g, double t);
double hardy_average(const Profile& g, double t);

/// ∫₀¹ g^p = scale^p / (1 − exponent·p).
double powerlaw_lp_integral(const PowerLaw& g, double p);

/// ∫₀¹ (Hg)^p.
double hardy_power_integral(const Profile& g, double p);

/// ∫₀¹ (Hg)^{p−q} g^q.
double hardy_mixed_integral(const Profile& g, double p, double q);

/// Hardy-type (p, q, β) inequality on (0,1]:
///   ∫(Hg)^p ≤ −c1 f^p + c2 ∫(Hg)^{p−q} g^q.
/// Components also carry the normalized-form residual ∫(Hg)^{p−q}g^q − A_0(β)∫(Hg)^p
/// ("residual_41"), its target (q/p)(β+1)^{1−q} f^p ("J_beta"), and the
/// β = 1/(p−1) normalization lhs − c2·k ("J_alpha").
GapReport ineq_110_report(const Profile& g, double p, double q, double beta);

struct SweepPoint {
  double alpha = 0.0;
  double G = 0.0;
  double limit = 0.0;
  double abs_err = 0.0;
};

/// G(α) = ((p/(p−1))^q (1−α)^q − 1)/(1 − αp) for each α in (0, 1/p), with
/// the limit q/(p−1) at α → 1/p.
std::vector<SweepPoint> sharpness_sweep(double p, double q, std::span<const double> alphas);

/// α_k = 1/p − δ_k with δ geometric from `delta_max` down to `delta_min`.
std::vector<double> geometric_alpha_grid(double p, std::size_t count, double delta_max, double delta_min);

struct BetaSweepPoint {
  double beta = 0.0;
  double J = 0.0;         // residual_41 / f^p for g_β at matched β
  double expected = 0.0;  // (q/p)(β+1)^{1−q}
  double abs_err = 0.0;
};

std::vector<BetaSweepPoint> beta_sweep(double p, double q, std::span<const double> betas);

}  // namespace maxbell
