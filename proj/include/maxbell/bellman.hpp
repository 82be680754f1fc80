#pragma once

namespace maxbell {

/// Parameter bundle for the (p, q, β) inequalities and the Bellman pair (f, F).
struct Params {
  double p = 2.0;
  double q = 1.0;
  double beta = 1.0;
  double f = 1.0;
  double F = 1.0;

  /// Checks 1 < p, 1 ≤ q ≤ p, β > 0. With `sharpness`, additionally
  /// β ≤ 1/(p−1), the range in which the constants cannot be improved.
  void validate(bool sharpness = false) const;

  /// Checks 0 < f and f^p ≤ F.
  void validate_pair() const;
};

/// H_p(z) = −(p−1) z^p + p z^{p−1}.
double h_p(double z, double p);

/// Inverse of H_p on [1, p/(p−1)]: the w in that interval with H_p(w) = z.
/// Defined for z in (0,1]; nonincreasing in z.
double omega_p(double z, double p);

/// B(f,F) = F·ω_p(f^p/F)^p, the supremum of ∫(𝓜φ)^p over φ ≥ 0 with
/// ∫φ = f and ∫φ^p = F.
double bellman_value(double f, double F, double p);

struct Coefficients {
  double c1 = 0.0;  // magnitude of the f^p coefficient
  double c2 = 0.0;  // coefficient of ∫φ^q(𝓜φ)^{p−q}
};

/// Constants of ∫(𝓜φ)^p ≤ −c1 f^p + c2 ∫φ^q (𝓜φ)^{p−q}:
///   c1 = q(β+1)/((p−1)qβ + (p−q)),  c2 = p(β+1)^q/((p−1)qβ + (p−q)).
Coefficients coefficients_18(double p, double q, double beta);

/// A_0(β) = (q−1)β/(β+1)^q + ((p−q)/p)/(β+1)^{q−1}; equals 1/c2.
double a0(double beta, double p, double q);

/// G(β) = 1/((β+1)^{p−1}(1 − β(p−1))) on [0, 1/(p−1)); 1/G(β) = H_p(β+1).
double g_beta(double beta, double p);

/// Unique β in [0, 1/(p−1)) with G(β) = F/f^p, i.e. β + 1 = ω_p(f^p/F).
double solve_beta(double f, double F, double p);

}  // namespace maxbell
