#include "maxbell/hardy.hpp"

#include "maxbell/bellman.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

namespace maxbell {

namespace {

constexpr double kQuadratureTolerance = 1e-10;

void require_t(double t) {
  if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("t must lie in (0,1]");
}

void require_lp(const PowerLaw& g, double p) {
  if (!(g.exponent * p < 1.0)) throw std::invalid_argument("power law is not in L^p (requires exponent*p < 1)");
}

struct Integral {
  double value = 0.0;
  double error = 0.0;
};

// ∫_a^b h(t) dt for 0 < a < b, after t = e^s; Hg is (v + B/t) on a segment,
// which is smooth in log t even when a is tiny.
template <class F>
Integral log_quadrature(F h, double a, double b) {
  auto integrand = [&](double s) {
    const double t = std::exp(s);
    return h(t) * t;
  };
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, std::log(a), std::log(b), 12, 1e-12, &error);
  return {value, error};
}

struct SegmentTerms {
  Integral power;  // ∫(Hg)^p
  Integral mixed;  // ∫(Hg)^{p−q} g^q
};

SegmentTerms hardy_terms(const Rearranged& g, double p, double q) {
  SegmentTerms total;
  for (std::size_t i = 0; i < g.segment_count(); ++i) {
    const double a = g.left_end(i);
    const double b = g.breakpoints()[i];
    const double v = g.values()[i];
    const double before = i == 0 ? 0.0 : g.cumulative()[i - 1];
    // On (a, b]: Hg(t) = v + B/t with B = ∫₀^a g − v·a ≥ 0.
    const double B = std::max(0.0, before - v * a);

    if (i == 0 || B == 0.0) {
      total.power.value += std::pow(v, p) * (b - a);
      total.mixed.value += std::pow(v, p) * (b - a);
      continue;
    }
    if (v == 0.0) {
      total.power.value += std::pow(B, p) * (std::pow(a, 1.0 - p) - std::pow(b, 1.0 - p)) / (p - 1.0);
      continue;
    }
    const Integral pw = log_quadrature([&](double t) { return std::pow(v + B / t, p); }, a, b);
    const Integral mx = log_quadrature([&](double t) { return std::pow(v + B / t, p - q) * std::pow(v, q); }, a, b);
    total.power.value += pw.value;
    total.power.error += pw.error;
    total.mixed.value += mx.value;
    total.mixed.error += mx.error;
  }
  for (const Integral* r : {&total.power, &total.mixed}) {
    if (r->error > kQuadratureTolerance * std::max(1.0, std::abs(r->value))) {
      throw std::runtime_error("Hardy integral quadrature did not reach its tolerance");
    }
  }
  return total;
}

}  // namespace

PowerLaw::PowerLaw(double scale_, double exponent_) : scale(scale_), exponent(exponent_) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) throw std::invalid_argument("power law scale must be nonnegative");
  if (!(exponent >= 0.0 && exponent < 1.0)) throw std::invalid_argument("power law exponent must lie in [0,1)");
}

PowerLaw PowerLaw::from_f_beta(double f, double beta) {
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be nonnegative");
  const double alpha = beta / (beta + 1.0);
  return {f * (1.0 - alpha), alpha};
}

PowerLaw PowerLaw::from_f_alpha(double f, double alpha) { return {f * (1.0 - alpha), alpha}; }

double PowerLaw::operator()(double t) const {
  require_t(t);
  return scale * std::pow(t, -exponent);
}

double PowerLaw::prefix_integral(double t) const {
  if (t <= 0.0) return 0.0;
  return scale * std::pow(std::min(t, 1.0), 1.0 - exponent) / (1.0 - exponent);
}

double profile_integral(const Profile& g) {
  return std::visit([](const auto& h) { return h.integral(); }, g);
}

double hardy_average(const Rearranged& g, double t) {
  require_t(t);
  return g.prefix_integral(t) / t;
}

double hardy_average(const PowerLaw& g, double t) {
  require_t(t);
  return g.scale * std::pow(t, -g.exponent) / (1.0 - g.exponent);
}

double hardy_average(const Profile& g, double t) {
  return std::visit([t](const auto& h) { return hardy_average(h, t); }, g);
}

double powerlaw_lp_integral(const PowerLaw& g, double p) {
  require_lp(g, p);
  return std::pow(g.scale, p) / (1.0 - g.exponent * p);
}

double hardy_power_integral(const Profile& g, double p) {
  if (const auto* pl = std::get_if<PowerLaw>(&g)) {
    return std::pow(1.0 / (1.0 - pl->exponent), p) * powerlaw_lp_integral(*pl, p);
  }
  return hardy_terms(std::get<Rearranged>(g), p, p).power.value;
}

double hardy_mixed_integral(const Profile& g, double p, double q) {
  if (const auto* pl = std::get_if<PowerLaw>(&g)) {
    return std::pow(1.0 / (1.0 - pl->exponent), p - q) * powerlaw_lp_integral(*pl, p);
  }
  return hardy_terms(std::get<Rearranged>(g), p, q).mixed.value;
}

GapReport ineq_110_report(const Profile& g, double p, double q, double beta) {
  Params{.p = p, .q = q, .beta = beta}.validate();
  double lhs = 0.0;
  double k = 0.0;
  double quad_error = 0.0;
  if (const auto* pl = std::get_if<PowerLaw>(&g)) {
    require_lp(*pl, p);
    lhs = hardy_power_integral(g, p);
    k = hardy_mixed_integral(g, p, q);
  } else {
    const SegmentTerms terms = hardy_terms(std::get<Rearranged>(g), p, q);
    lhs = terms.power.value;
    k = terms.mixed.value;
    quad_error = terms.power.error + terms.mixed.error;
  }
  const double f = profile_integral(g);
  const double fp = std::pow(f, p);
  const Coefficients c = coefficients_18(p, q, beta);
  const double a = a0(beta, p, q);

  GapReport r = make_gap_report("ineq_110", lhs, -c.c1 * fp + c.c2 * k);
  r.components["f"] = f;
  r.components["hardy_p_integral"] = lhs;
  r.components["k_q"] = k;
  r.components["c1"] = c.c1;
  r.components["c2"] = c.c2;
  r.components["a0"] = a;
  r.components["residual_41"] = k - a * lhs;
  r.components["J_beta"] = (q / p) * std::pow(beta + 1.0, 1.0 - q) * fp;
  r.components["gap_41"] = r.components["residual_41"] - r.components["J_beta"];
  r.components["J_alpha"] = lhs - c.c2 * k;
  r.components["quadrature_error"] = quad_error;
  r.params = {{"p", p}, {"q", q}, {"beta", beta}};
  return r;
}

std::vector<SweepPoint> sharpness_sweep(double p, double q, std::span<const double> alphas) {
  Params{.p = p, .q = q, .beta = 1.0 / (p - 1.0)}.validate();
  const double ratio = p / (p - 1.0);
  const double limit = q / (p - 1.0);
  std::vector<SweepPoint> out;
  out.reserve(alphas.size());
  for (double alpha : alphas) {
    if (!(alpha > 0.0 && alpha < 1.0 / p)) throw std::invalid_argument("alpha must lie in (0,1/p)");
    // With δ = 1/p − α, (p/(p−1))(1−α) = 1 + (p/(p−1))δ; this form keeps full
    // relative precision as α → 1/p.
    const double delta = 1.0 / p - alpha;
    const double G = std::expm1(q * std::log1p(ratio * delta)) / (p * delta);
    out.push_back({alpha, G, limit, std::abs(G - limit)});
  }
  return out;
}

std::vector<double> geometric_alpha_grid(double p, std::size_t count, double delta_max, double delta_min) {
  if (count < 2) throw std::invalid_argument("grid needs at least two points");
  if (!(delta_min > 0.0 && delta_min < delta_max && delta_max < 1.0 / p)) {
    throw std::invalid_argument("grid requires 0 < delta_min < delta_max < 1/p");
  }
  std::vector<double> alphas(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(count - 1);
    alphas[k] = 1.0 / p - delta_max * std::pow(delta_min / delta_max, s);
  }
  return alphas;
}

std::vector<BetaSweepPoint> beta_sweep(double p, double q, std::span<const double> betas) {
  std::vector<BetaSweepPoint> out;
  out.reserve(betas.size());
  for (double beta : betas) {
    if (!(beta > 0.0 && beta * (p - 1.0) < 1.0)) throw std::invalid_argument("beta must lie in (0,1/(p-1))");
    const GapReport r = ineq_110_report(PowerLaw::from_f_beta(1.0, beta), p, q, beta);
    const double J = r.components.at("residual_41");
    const double expected = (q / p) * std::pow(beta + 1.0, 1.0 - q);
    out.push_back({beta, J, expected, std::abs(J - expected)});
  }
  return out;
}

}  // namespace maxbell
