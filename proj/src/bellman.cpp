#include "maxbell/bellman.hpp"

#include <cmath>
#include <stdexcept>

namespace maxbell {

namespace {

void require_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("p must be greater than 1");
}

void require_q(double p, double q) {
  if (!(q >= 1.0 && q <= p)) throw std::invalid_argument("q must lie in [1,p]");
}

double h_p_derivative(double z, double p) { return p * (p - 1.0) * std::pow(z, p - 2.0) * (1.0 - z); }

// log G(β) − target, and its derivative in β.
double log_g_residual(double beta, double p, double log_target) {
  return -(p - 1.0) * std::log1p(beta) - std::log1p(-beta * (p - 1.0)) - log_target;
}
double log_g_slope(double beta, double p) { return -(p - 1.0) / (1.0 + beta) + (p - 1.0) / (1.0 - beta * (p - 1.0)); }

}  // namespace

void Params::validate(bool sharpness) const {
  require_p(p);
  require_q(p, q);
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be positive");
  if (sharpness && beta > 1.0 / (p - 1.0)) throw std::invalid_argument("sharpness requires beta <= 1/(p-1)");
}

void Params::validate_pair() const {
  require_p(p);
  if (!(f > 0.0) || !std::isfinite(f)) throw std::invalid_argument("f must be positive");
  if (!std::isfinite(F) || std::pow(f, p) > F) throw std::invalid_argument("requires f^p <= F");
}

double h_p(double z, double p) {
  require_p(p);
  if (!(z >= 0.0)) throw std::invalid_argument("H_p is evaluated at z >= 0");
  return -(p - 1.0) * std::pow(z, p) + p * std::pow(z, p - 1.0);
}

double omega_p(double z, double p) {
  require_p(p);
  if (!(z > 0.0 && z <= 1.0)) throw std::invalid_argument("omega_p requires z in (0,1]");
  if (z == 1.0) return 1.0;

  // H_p decreases from 1 to 0 on [1, p/(p−1)].
  double lo = 1.0;
  double hi = p / (p - 1.0);
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (h_p(mid, p) > z) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double w = 0.5 * (lo + hi);

  // One Newton polish, kept only if it stays in the bracket and helps.
  const double slope = h_p_derivative(w, p);
  if (std::abs(slope) > 1e-8) {
    const double candidate = w - (h_p(w, p) - z) / slope;
    if (candidate >= lo && candidate <= hi && std::abs(h_p(candidate, p) - z) <= std::abs(h_p(w, p) - z)) {
      w = candidate;
    }
  }
  return w;
}

double bellman_value(double f, double F, double p) {
  Params{.p = p, .f = f, .F = F}.validate_pair();
  return F * std::pow(omega_p(std::pow(f, p) / F, p), p);
}

Coefficients coefficients_18(double p, double q, double beta) {
  require_p(p);
  require_q(p, q);
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be nonnegative");
  const double denom = (p - 1.0) * q * beta + (p - q);
  if (!(denom > 0.0)) throw std::invalid_argument("(p-1)q*beta + (p-q) must be positive");
  return {q * (beta + 1.0) / denom, p * std::pow(beta + 1.0, q) / denom};
}

double a0(double beta, double p, double q) {
  require_p(p);
  require_q(p, q);
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be nonnegative");
  return (q - 1.0) * beta / std::pow(beta + 1.0, q) + ((p - q) / p) / std::pow(beta + 1.0, q - 1.0);
}

double g_beta(double beta, double p) {
  require_p(p);
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be nonnegative");
  if (!(beta * (p - 1.0) < 1.0)) throw std::invalid_argument("G(beta) requires beta < 1/(p-1)");
  return 1.0 / (std::pow(beta + 1.0, p - 1.0) * (1.0 - beta * (p - 1.0)));
}

double solve_beta(double f, double F, double p) {
  Params{.p = p, .f = f, .F = F}.validate_pair();
  const double z = std::pow(f, p) / F;
  if (z == 1.0) return 0.0;
  double beta = omega_p(z, p) - 1.0;

  // Near β = 1/(p−1) G is steep; two Newton steps on log G sharpen the
  // relative accuracy of G(β) = F/f^p without leaving the domain.
  const double log_target = -std::log(z);
  for (int it = 0; it < 2; ++it) {
    const double slope = log_g_slope(beta, p);
    if (!(slope > 0.0)) break;
    const double candidate = beta - log_g_residual(beta, p, log_target) / slope;
    if (!(candidate >= 0.0 && candidate * (p - 1.0) < 1.0)) break;
    if (std::abs(log_g_residual(candidate, p, log_target)) > std::abs(log_g_residual(beta, p, log_target))) break;
    beta = candidate;
  }
  return beta;
}

}  // namespace maxbell
