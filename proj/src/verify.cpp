#include "maxbell/verify.hpp"

#include "maxbell/bellman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace maxbell {

namespace {

double normalized(double slack, double scale) { return slack / std::max(1.0, std::abs(scale)); }

}  // namespace

InequalityTerms inequality_terms(const StepFunction& phi, double p, double q) {
  const StepFunction m = maximal_function(phi);
  const int arity = phi.config().arity;
  const double w = phi.config().leaf_measure();
  InequalityTerms t;
  t.f = integrate(phi);
  t.F = power_integral(phi, p);
  t.maximal_p = power_integral(m, p);
  t.k_q = tree_sum(phi.values().pow(q) * m.values().pow(p - q), arity) * w;
  return t;
}

GapReport ineq_18_report(const StepFunction& phi, double p, double q, double beta) {
  Params{.p = p, .q = q, .beta = beta}.validate();
  const InequalityTerms t = inequality_terms(phi, p, q);
  const Coefficients c = coefficients_18(p, q, beta);
  GapReport r = make_gap_report("ineq_18", t.maximal_p, -c.c1 * std::pow(t.f, p) + c.c2 * t.k_q);
  r.components = {{"f", t.f}, {"F", t.F}, {"maximal_p_integral", t.maximal_p}, {"k_q", t.k_q},
                  {"c1", c.c1}, {"c2", c.c2}};
  r.params = {{"p", p}, {"q", q}, {"beta", beta}};
  return r;
}

GapReport ineq_41_report(const StepFunction& phi, double p, double q, double beta) {
  const double a = a0(beta, p, q);
  const InequalityTerms t = inequality_terms(phi, p, q);
  const double tail = (q / p) * std::pow(beta + 1.0, 1.0 - q) * std::pow(t.f, p);
  GapReport r = make_gap_report("ineq_41", a * t.maximal_p + tail, t.k_q);
  r.components = {{"f", t.f}, {"F", t.F}, {"maximal_p_integral", t.maximal_p}, {"k_q", t.k_q},
                  {"a0", a}, {"f_term", tail}};
  r.params = {{"p", p}, {"q", q}, {"beta", beta}};
  return r;
}

GapReport theorem_a_report(const StepFunction& phi, double p) {
  if (!(p > 1.0)) throw std::invalid_argument("p must be greater than 1");
  GapReport r = ineq_18_report(phi, p, 1.0, 1.0 / (p - 1.0));
  r.name = "theorem_a";
  return r;
}

ElementaryReport elementary_oracles(std::size_t sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw std::invalid_argument("sample_count must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  ElementaryReport rep;
  rep.samples = sample_count;
  rep.worst_holder = rep.worst_young = rep.worst_mean_value = std::numeric_limits<double>::infinity();

  for (std::size_t s = 0; s < sample_count; ++s) {
    const double p = uniform(1.01, 5.0);
    const double q = uniform(1.0, p);
    const double beta = uniform(0.0, 3.0);

    // (Σλ)^q / (Σσ)^{q−1} ≤ Σ λ^q / σ^{q−1}
    const int m = 1 + static_cast<int>(unit(rng) * 8.0) % 8;
    double sum_l = 0.0;
    double sum_s = 0.0;
    double rhs = 0.0;
    for (int i = 0; i < m; ++i) {
      const double lambda = uniform(0.0, 10.0);
      const double sigma = uniform(1e-3, 10.0);
      sum_l += lambda;
      sum_s += sigma;
      rhs += std::pow(lambda, q) / std::pow(sigma, q - 1.0);
    }
    const double lhs = std::pow(sum_l, q) / std::pow(sum_s, q - 1.0);
    rep.worst_holder = std::min(rep.worst_holder, normalized(rhs - lhs, rhs));

    // p x^q y^{p−q} ≤ q x^p + (p−q) y^p
    const double x = uniform(1e-3, 10.0);
    const double y = uniform(1e-3, 10.0);
    const double young_l = p * std::pow(x, q) * std::pow(y, p - q);
    const double young_r = q * std::pow(x, p) + (p - q) * std::pow(y, p);
    rep.worst_young = std::min(rep.worst_young, normalized(young_r - young_l, young_r));

    // ((β+1)−βx)^{1−q} − (β+1)^{1−q} ≥ (q−1)βx/(β+1)^q on x ∈ [0,1]
    const double u = unit(rng);
    const double mv_l = std::pow((beta + 1.0) - beta * u, 1.0 - q) - std::pow(beta + 1.0, 1.0 - q);
    const double mv_r = (q - 1.0) * beta * u / std::pow(beta + 1.0, q);
    rep.worst_mean_value = std::min(rep.worst_mean_value, normalized(mv_l - mv_r, mv_l));
  }
  return rep;
}

}  // namespace maxbell
