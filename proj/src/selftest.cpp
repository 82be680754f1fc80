#include "maxbell/selftest.hpp"

#include "maxbell/bellman.hpp"
#include "maxbell/extremal.hpp"
#include "maxbell/hardy.hpp"
#include "maxbell/maximal.hpp"
#include "maxbell/sampling.hpp"
#include "maxbell/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace maxbell {

namespace {

class Suite {
 public:
  explicit Suite(std::string name) { r_.name = std::move(name); }

  void check(bool ok, const std::string& what) {
    ++r_.checks;
    if (!ok) fail(what);
  }

  /// Passes when err ≤ tol; NaN fails.
  void within(double err, double tol, const std::string& what) {
    ++r_.checks;
    const double ratio = err / tol;
    if (std::isnan(ratio)) {
      r_.worst = std::numeric_limits<double>::infinity();
    } else {
      r_.worst = std::max(r_.worst, ratio);
    }
    if (!(err <= tol)) fail(what + " (error " + std::to_string(err) + ")");
  }

  /// Runs `body`, recording an unexpected exception as a failure.
  template <class F>
  void guarded(const std::string& what, F&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      ++r_.checks;
      fail(what + ": " + e.what());
    }
  }

  SuiteResult result() { return std::move(r_); }

 private:
  void fail(const std::string& what) {
    if (r_.failures++ == 0) r_.first_failure = what;
  }

  SuiteResult r_;
};

NodeId ancestor(const TreeConfig& c, std::size_t leaf, int level) {
  return {level, leaf / c.nodes_at(c.depth - level)};
}

// Direct transcription of the definition: each ancestor's average summed
// from its own leaves.
Eigen::ArrayXd brute_maximal(const StepFunction& phi) {
  const TreeConfig& c = phi.config();
  Eigen::ArrayXd out = Eigen::ArrayXd::Constant(static_cast<Eigen::Index>(phi.size()), -1.0);
  for (int k = 0; k <= c.depth; ++k) {
    const std::size_t width = c.nodes_at(c.depth - k);
    for (std::size_t i = 0; i < c.nodes_at(k); ++i) {
      const Eigen::ArrayXd cell = phi.values().segment(static_cast<Eigen::Index>(i * width),
                                                       static_cast<Eigen::Index>(width));
      const double avg = tree_sum(cell, c.arity) / static_cast<double>(width);
      for (std::size_t x = i * width; x < (i + 1) * width; ++x) {
        out[static_cast<Eigen::Index>(x)] = std::max(out[static_cast<Eigen::Index>(x)], avg);
      }
    }
  }
  return out;
}

double log_uniform(Rng& rng, double lo, double hi) { return std::exp(uniform(rng, std::log(lo), std::log(hi))); }

}  // namespace

SuiteResult suite_maximal_oracle(std::uint64_t seed, std::size_t count) {
  Suite s("maximal_oracle");
  Rng rng(seed);
  for (std::size_t n = 0; n < count; ++n) {
    const StepFunction phi = random_step_function(rng);
    const StepFunction m = maximal_function(phi);
    s.check((m.values() == brute_maximal(phi)).all(), "maximal function differs from ancestor max");
  }
  return s.result();
}

SuiteResult suite_linearization(std::uint64_t seed, std::size_t count) {
  Suite s("linearization");
  Rng rng(seed);
  constexpr double tol = 1e-14;
  for (std::size_t n = 0; n < count; ++n) {
    const StepFunction phi = random_step_function(rng);
    s.guarded("linearize", [&] {
      const TreeConfig& c = phi.config();
      const StepFunction m = maximal_function(phi);
      const Linearization lin = linearize(phi);
      const std::size_t size = lin.nodes.size();

      s.check((lin.reconstruct() == m.values()).all(), "reconstruction differs from maximal function");
      s.check((m.values() >= phi.values()).all(), "maximal function below phi");
      s.check((m.values() >= lin.nodes[0].average).all(), "maximal function below the root average");

      double total = 0.0;
      std::vector<double> below(size, 0.0);
      for (std::size_t i = 0; i < size; ++i) {
        const SupportNode& node = lin.nodes[i];
        total += node.a_measure;

        // iv
        double children = 0.0;
        for (std::size_t j : lin.star_children(i)) children += lin.nodes[j].measure;
        s.within(std::abs(node.a_measure - (node.measure - children)), tol, "a_measure identity");

        // I* is the nearest support ancestor.
        std::optional<std::size_t> expected;
        for (NodeId up = node.id; up.level > 0 && !expected;) {
          up = up.parent(c.arity);
          expected = lin.find(up);
        }
        s.check(expected == node.star, "star is not the nearest support ancestor");

        // ii, for cells above the leaves
        if (node.id.level < c.depth) {
          bool missing = false;
          for (int d = 0; d < c.arity && !missing; ++d) missing = !lin.find(node.id.child(c.arity, d));
          s.check(missing, "every child of a support cell is in the support");
        }

        for (std::optional<std::size_t> up = i; up; up = lin.nodes[*up].star) below[*up] += node.a_measure;
      }
      s.within(std::abs(total - 1.0), tol, "a_measure does not sum to 1");
      // iii
      for (std::size_t i = 0; i < size; ++i) {
        s.within(std::abs(below[i] - lin.nodes[i].measure), tol, "support cell not covered by nested A-sets");
      }
      // i: no support cell strictly inside the owner contains the leaf.
      for (std::size_t x = 0; x < phi.size(); ++x) {
        const int owner_level = lin.nodes[lin.owner[x]].id.level;
        bool nested = true;
        for (int k = owner_level + 1; k <= c.depth && nested; ++k) nested = !lin.find(ancestor(c, x, k));
        s.check(nested, "A-set meets a smaller support cell");
      }
    });
  }
  return s.result();
}

SuiteResult suite_classics(std::uint64_t seed, std::size_t count) {
  Suite s("weak_type_and_lp");
  Rng rng(seed);
  for (std::size_t n = 0; n < count; ++n) {
    const StepFunction phi = random_step_function(rng);
    const StepFunction m = maximal_function(phi);
    const double top = m.values().maxCoeff();
    const auto pick = static_cast<Eigen::Index>(uniform(rng, 0.0, static_cast<double>(m.size())));
    for (double lambda : {uniform(rng, 0.0, top), m.values()[std::min(pick, m.values().size() - 1)]}) {
      if (!(lambda > 0.0)) continue;
      s.within(std::max(0.0, -weak_type_gap(phi, lambda).gap), 1e-12, "weak type bound");
    }
    for (double p : {1.5, 2.0, 3.0}) s.within(std::max(0.0, -lp_bound_gap(phi, p).gap), 1e-12, "L^p bound");
  }
  return s.result();
}

SuiteResult suite_omega_inversion() {
  Suite s("omega_inversion");
  for (double p : {1.2, 1.5, 2.0, 3.0, 5.0}) {
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 1000; ++i) {
      const double z = i / 1000.0;
      const double w = omega_p(z, p);
      s.within(std::abs(h_p(w, p) - z), 1e-10, "H_p(omega_p(z)) != z");
      s.check(w <= prev, "omega_p not nonincreasing");
      prev = w;
      if (p == 2.0) s.within(std::abs(w - (1.0 + std::sqrt(1.0 - z))), 1e-12, "omega_2 closed form");
    }
  }
  return s.result();
}

SuiteResult suite_ineq18(std::uint64_t seed, std::size_t count) {
  Suite s("ineq_18");
  Rng rng(seed);
  for (std::size_t n = 0; n < count; ++n) {
    const StepFunction phi = random_step_function(rng);
    const double p = uniform(rng, 1.05, 5.0);
    const double u = uniform(rng, 0.0, 1.0);
    const double q = u < 0.1 ? 1.0 : u < 0.2 ? p : uniform(rng, 1.0, p);
    const double beta = log_uniform(rng, 1e-3, 20.0);

    const GapReport g18 = ineq_18_report(phi, p, q, beta);
    s.within(std::max(0.0, -g18.gap), 1e-11 * std::max(1.0, std::abs(g18.rhs)), "ineq_18 violated");

    const GapReport g41 = ineq_41_report(phi, p, q, beta);
    const Coefficients c = coefficients_18(p, q, beta);
    const double scale = std::max({c.c2 * g18.components.at("k_q"), g18.lhs, c.c1 * std::pow(g18.components.at("f"), p)});
    s.within(std::abs(g41.gap * c.c2 - g18.gap), 1e-10 * scale, "ineq_41 * c2 != ineq_18");
  }

  // Equality cases on constants.
  for (std::size_t n = 0; n < std::max<std::size_t>(1, count / 100); ++n) {
    const TreeConfig config = make_tree(2 + static_cast<int>(n % 3), static_cast<int>(n % 5));
    const StepFunction phi = StepFunction::constant(config, uniform(rng, 0.1, 2.0));
    const double p = uniform(rng, 1.1, 5.0);
    s.within(std::abs(ineq_18_report(phi, p, 1.0, 1.0 / (p - 1.0)).gap), 1e-12, "constant, q=1 equality");
    s.within(std::abs(ineq_18_report(phi, p, uniform(rng, 1.0, p - 0.1), 1e-15).gap), 1e-12,
             "constant, beta->0 equality");
  }
  return s.result();
}

SuiteResult suite_coefficients() {
  Suite s("coefficients");
  for (double p : {1.2, 1.5, 2.0, 3.0, 5.0}) {
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const double q = 1.0 + t * (p - 1.0);
      for (double beta : {0.01, 0.1, 0.5, 1.0, 2.0, 10.0}) {
        const Coefficients c = coefficients_18(p, q, beta);
        s.within(std::abs(a0(beta, p, q) * c.c2 - 1.0), 1e-12, "a0*c2 != 1");
        const double expected = c.c2 * (q / p) * std::pow(beta + 1.0, 1.0 - q);
        s.within(std::abs(c.c1 - expected) / expected, 1e-12, "c1 != c2 (q/p)(beta+1)^(1-q)");
      }
    }
  }
  return s.result();
}

SuiteResult suite_slack(std::uint64_t seed, std::size_t count) {
  Suite s("linearization_slack");
  Rng rng(seed);
  for (std::size_t n = 0; n < count; ++n) {
    const StepFunction phi = random_step_function(rng);
    const double p = uniform(rng, 1.05, 5.0);
    const double q = uniform(rng, 0.0, 1.0) < 0.1 ? p : uniform(rng, 1.0 + 1e-6, p);
    const double beta = log_uniform(rng, 1e-3, 20.0);
    const Linearization lin = linearize(phi);
    const auto slack = linearization_slack(phi, lin, q, beta, p);
    for (const SupportNode& node : lin.nodes) {
      if (node.a_measure <= 0.0) continue;
      const double scale = node.measure * std::pow(node.average, q);
      s.within(std::max(0.0, -slack.at(node.id)), 1e-12 * std::max(1.0, scale), "negative node slack");
    }
  }
  return s.result();
}

SuiteResult suite_hardy_equality(std::uint64_t seed, std::size_t count) {
  Suite s("hardy_q1_equality");
  Rng rng(seed);
  for (std::size_t n = 0; n < count; ++n) {
    const Rearranged g = random_profile(rng);
    for (double p : {1.5, 2.0, 3.0}) {
      s.guarded("hardy quadrature", [&] {
        s.within(std::abs(ineq_110_report(g, p, 1.0, 1.0 / (p - 1.0)).gap), 1e-9, "q=1 Hardy form not an equality");
      });
    }
  }
  return s.result();
}

SuiteResult suite_powerlaw_residual() {
  Suite s("powerlaw_residual");
  for (double p : {1.5, 2.0, 3.0, 5.0}) {
    for (double t : {0.25, 0.5, 0.75}) {
      const double q = 1.0 + t * (p - 1.0);
      for (double b : {0.1, 0.5, 0.9}) {
        const double beta = b / (p - 1.0);
        for (double f : {0.5, 1.0, 2.0}) {
          const GapReport r = ineq_110_report(PowerLaw::from_f_beta(f, beta), p, q, beta);
          s.within(std::abs(r.components.at("residual_41") - r.components.at("J_beta")), 1e-9,
                   "residual differs from (q/p)(beta+1)^(1-q) f^p");
        }
      }
    }
  }
  return s.result();
}

SuiteResult suite_sharpness() {
  Suite s("sharpness_limit");
  for (auto [p, q] : {std::pair{2.0, 2.0}, {3.0, 1.5}, {1.5, 1.2}}) {
    const auto alphas = geometric_alpha_grid(p, 30, 0.5 / p, 1e-6);
    const auto sweep = sharpness_sweep(p, q, alphas);
    for (std::size_t k = 1; k < sweep.size(); ++k) {
      s.check(sweep[k].abs_err < sweep[k - 1].abs_err, "sweep error not strictly decreasing");
    }
    s.within(sweep.back().abs_err / sweep.back().limit, 1e-3, "sweep does not reach the limit");
  }
  return s.result();
}

SuiteResult suite_solve_beta(std::uint64_t seed, std::size_t count) {
  Suite s("solve_beta");
  Rng rng(seed);
  for (std::size_t n = 0; n < count; ++n) {
    const double f = log_uniform(rng, 0.1, 10.0);
    const double p = uniform(rng, 1.1, 5.0);
    const double ratio = log_uniform(rng, 1.0, 50.0);
    const double F = std::pow(f, p) * ratio;
    const double fp = std::pow(f, p);
    const double beta = solve_beta(f, F, p);
    s.within(std::abs(beta + 1.0 - omega_p(std::min(1.0, fp / F), p)), 1e-10, "beta+1 != omega_p");
    s.within(std::abs(g_beta(beta, p) / ratio - 1.0), 1e-10, "G(beta) != F/f^p");
    for (int k = 1; k <= 5; ++k) {
      const double q = 1.0 + (p - 1.0) * k / 6.0;
      const double lhs = F * std::pow(beta + 1.0, p - q);
      const double rhs = a0(beta, p, q) * F * std::pow(beta + 1.0, p) + (q / p) * std::pow(beta + 1.0, 1.0 - q) * fp;
      s.within(std::abs(lhs - rhs) / lhs, 1e-10, "balance identity");
    }
  }
  return s.result();
}

SuiteResult suite_elementary(std::uint64_t seed, std::size_t count) {
  Suite s("elementary");
  const ElementaryReport rep = elementary_oracles(count, seed);
  s.within(std::max(0.0, -rep.worst_holder), 1e-12, "Hoelder quotient bound");
  s.within(std::max(0.0, -rep.worst_young), 1e-12, "Young-type bound");
  s.within(std::max(0.0, -rep.worst_mean_value), 1e-12, "mean-value bound");
  return s.result();
}

SuiteResult suite_spine(std::uint64_t seed, std::size_t count) {
  Suite s("spine");
  Rng rng(seed);
  for (std::size_t n = 0; n < count; ++n) {
    const Profile g = uniform(rng, 0.0, 1.0) < 0.5 ? Profile(random_profile(rng))
                                                  : Profile(PowerLaw::from_f_beta(uniform(rng, 0.2, 3.0),
                                                                                  uniform(rng, 0.0, 0.45)));
    const int arity = 2 + static_cast<int>(n % 3);
    const int depth = 1 + static_cast<int>(uniform(rng, 0.0, arity == 2 ? 10.0 : 5.0));
    const SpineLayout layout = n % 2 == 0 ? SpineLayout::interleaved : SpineLayout::chain;
    s.guarded("spine", [&] {
      const StepFunction phi = spine_construct({g, arity, depth, layout});
      Eigen::ArrayXd sorted = phi.values();
      std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<>());
      s.check((sorted == sample_profile(g, phi.size())).all(), "rearrangement differs from the sampled profile");

      const StepFunction m = maximal_function(phi);
      for (double p : {1.5, 2.0, 3.0}) {
        const double q = 0.5 * (1.0 + p);
        s.within(std::max(0.0, power_integral(m, p) - hardy_power_integral(g, p)), 1e-9,
                 "maximal integral above the Hardy integral");
        const double mixed = tree_sum(phi.values().pow(q) * m.values().pow(p - q), arity) * phi.config().leaf_measure();
        s.within(std::max(0.0, mixed - hardy_mixed_integral(g, p, q)), 1e-9,
                 "mixed maximal integral above the Hardy integral");
      }
    });
  }
  return s.result();
}

std::vector<SuiteResult> run_selftest(std::uint64_t seed, std::size_t samples) {
  const auto sub = [seed](std::uint64_t k) { return seed + 0x9e3779b97f4a7c15ULL * k; };
  const std::size_t n = std::max<std::size_t>(samples, 1);
  return {
      suite_maximal_oracle(sub(1), n),
      suite_linearization(sub(2), n),
      suite_classics(sub(3), n),
      suite_omega_inversion(),
      suite_ineq18(sub(4), n),
      suite_coefficients(),
      suite_slack(sub(5), n),
      suite_hardy_equality(sub(6), std::max<std::size_t>(1, n / 20)),
      suite_powerlaw_residual(),
      suite_sharpness(),
      suite_solve_beta(sub(7), std::max<std::size_t>(1, n / 10)),
      suite_elementary(sub(8), n),
      suite_spine(sub(9), std::max<std::size_t>(1, n / 200)),
  };
}

}  // namespace maxbell
