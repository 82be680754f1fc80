#include "maxbell/extremal.hpp"

#include "maxbell/bellman.hpp"
#include "maxbell/maximal.hpp"
#include "maxbell/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace maxbell {

namespace {

// Lays out one cell. `scratch[offset, offset+n)` holds the cell's values in
// nonincreasing order on entry; the arrangement is written to `out` over the
// same range.
class InterleavedLayout {
 public:
  InterleavedLayout(int arity, int deep_mix_height, Eigen::ArrayXd& out, Eigen::ArrayXd& scratch)
      : arity_(static_cast<std::size_t>(arity)), deep_(deep_mix_height), out_(out), scratch_(scratch) {}

  void place(std::size_t offset, int height) {
    const std::size_t n = power(height);
    const auto first = static_cast<Eigen::Index>(offset);
    const auto count = static_cast<Eigen::Index>(n);
    if (height == 0 || scratch_[first] == scratch_[first + count - 1]) {
      out_.segment(first, count) = scratch_.segment(first, count);
      return;
    }
    const int levels = (height >= deep_ && height >= 2) ? 2 : 1;

    // Sub-cells: children 0..arity−2 of each node on the path that follows
    // the last child; the path ends at the node that keeps the small values.
    struct Cell {
      std::size_t offset;
      int level;
      std::size_t filled = 0;
    };
    std::vector<Cell> cells;
    std::size_t path = offset;
    for (int l = 1; l <= levels; ++l) {
      const std::size_t size = power(height - l);
      for (std::size_t j = 0; j + 1 < arity_; ++j) cells.push_back({path + j * size, l});
      path += (arity_ - 1) * size;
    }
    const std::size_t keep = power(height - levels);

    // Deal the top n − keep values, largest first. A level-l sub-cell takes
    // its k-th value at key k·arity^{l−1} (units of 1/size of a level-1
    // sub-cell); ties go to shallower, then leftward, cells.
    std::size_t next = offset;
    const std::size_t rounds = power(height - 1);
    for (std::size_t u = 1; u <= rounds; ++u) {
      for (Cell& c : cells) {
        if (u % power(c.level - 1) != 0) continue;
        out_[static_cast<Eigen::Index>(c.offset + c.filled++)] = scratch_[static_cast<Eigen::Index>(next++)];
      }
    }
    const auto kept = static_cast<Eigen::Index>(keep);
    out_.segment(static_cast<Eigen::Index>(path), kept) = scratch_.segment(static_cast<Eigen::Index>(next), kept);

    for (const Cell& c : cells) {
      const auto len = static_cast<Eigen::Index>(c.filled);
      scratch_.segment(static_cast<Eigen::Index>(c.offset), len) = out_.segment(static_cast<Eigen::Index>(c.offset), len);
      place(c.offset, height - c.level);
    }
    scratch_.segment(static_cast<Eigen::Index>(path), kept) = out_.segment(static_cast<Eigen::Index>(path), kept);
    place(path, height - levels);
  }

 private:
  std::size_t power(int e) const {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= arity_;
    return r;
  }

  std::size_t arity_;
  int deep_;
  Eigen::ArrayXd& out_;
  Eigen::ArrayXd& scratch_;
};

Eigen::ArrayXd sample_power_law(const PowerLaw& g, std::size_t cells) {
  const double n = static_cast<double>(cells);
  const double s = 1.0 - g.exponent;
  const double scale = g.scale / s * n;
  if (g.exponent == 0.0) return Eigen::ArrayXd::Constant(static_cast<Eigen::Index>(cells), g.scale);
  Eigen::ArrayXd v(static_cast<Eigen::Index>(cells));
  v[0] = scale * std::pow(1.0 / n, s);
  for (std::size_t i = 1; i < cells; ++i) {
    // ((i+1)/n)^s − (i/n)^s without cancellation.
    const double di = static_cast<double>(i);
    v[static_cast<Eigen::Index>(i)] = scale * std::pow(di / n, s) * std::expm1(s * std::log1p(1.0 / di));
  }
  return v;
}

Eigen::ArrayXd sample_rearranged(const Rearranged& g, std::size_t cells) {
  const double n = static_cast<double>(cells);
  Eigen::ArrayXd v(static_cast<Eigen::Index>(cells));
  std::size_t seg = 0;
  for (std::size_t i = 0; i < cells; ++i) {
    const double a = static_cast<double>(i) / n;
    const double b = static_cast<double>(i + 1) / n;
    double acc = 0.0;
    int pieces = 0;
    double only = 0.0;
    while (seg < g.segment_count()) {
      const double lo = std::max(a, g.left_end(seg));
      const double hi = std::min(b, g.breakpoints()[seg]);
      if (hi > lo) {
        acc += g.values()[seg] * (hi - lo);
        only = g.values()[seg];
        ++pieces;
      }
      if (g.breakpoints()[seg] >= b) break;
      ++seg;
    }
    // A cell inside one segment takes its value exactly.
    v[static_cast<Eigen::Index>(i)] = pieces == 1 ? only : acc * n;
  }
  return v;
}

}  // namespace

Eigen::ArrayXd sample_profile(const Profile& g, std::size_t cells) {
  if (cells == 0) throw std::invalid_argument("profile sampling needs at least one cell");
  Eigen::ArrayXd v = std::holds_alternative<PowerLaw>(g) ? sample_power_law(std::get<PowerLaw>(g), cells)
                                                        : sample_rearranged(std::get<Rearranged>(g), cells);
  // Rounding can break monotonicity between nearly equal neighbours.
  for (Eigen::Index i = 1; i < v.size(); ++i) v[i] = std::min(v[i], v[i - 1]);
  return v;
}

StepFunction spine_construct(const SpineSpec& spec) {
  const TreeConfig config = make_tree(spec.arity, spec.depth);
  Eigen::ArrayXd sorted = sample_profile(spec.profile, config.leaf_count());
  if (spec.layout == SpineLayout::chain) return StepFunction(config, std::move(sorted));

  Eigen::ArrayXd out(sorted.size());
  InterleavedLayout layout(spec.arity, spec.deep_mix_height, out, sorted);
  layout.place(0, spec.depth);
  return StepFunction(config, std::move(out));
}

std::vector<Refinement> default_ladder() {
  std::vector<Refinement> ladder;
  for (int depth = 10; depth <= 20; depth += 2) ladder.push_back({2, depth});
  return ladder;
}

ExtremalSequence extremal_sequence(double f, double F, double p, std::span<const Refinement> refinements,
                                   SpineLayout layout) {
  ExtremalSequence seq;
  seq.beta = solve_beta(f, F, p);
  seq.profile = PowerLaw::from_f_beta(f, seq.beta);
  seq.refinements.assign(refinements.begin(), refinements.end());
  for (const Refinement& r : refinements) {
    seq.steps.push_back(spine_construct({seq.profile, r.arity, r.depth, layout}));
  }
  return seq;
}

double stability_metric(const StepFunction& phi, double beta, double p) {
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be nonnegative");
  if (!(p > 1.0)) throw std::invalid_argument("p must be greater than 1");
  const StepFunction m = maximal_function(phi);
  const Eigen::ArrayXd diff = (m.values() - (beta + 1.0) * phi.values()).abs().pow(p);
  return tree_sum(diff, phi.config().arity) * phi.config().leaf_measure();
}

std::vector<QTrackPoint> q_integral_track(std::span<const StepFunction> phis, double q, double beta) {
  if (!(q > 1.0)) throw std::invalid_argument("q must be greater than 1");
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be nonnegative");
  std::vector<QTrackPoint> out;
  double f0 = 0.0;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const StepFunction& phi = phis[i];
    const double f = integrate(phi);
    if (i == 0) {
      f0 = f;
    } else if (std::abs(f - f0) > 1e-9 * std::max(1.0, f0)) {
      throw std::invalid_argument("q_integral_track needs functions sharing the same integral");
    }
    QTrackPoint pt;
    pt.A = power_integral(phi, q);
    pt.measured = power_integral(maximal_function(phi), q);
    pt.omega = omega_p(std::min(1.0, std::pow(f, q) / pt.A), q);
    pt.predicted = std::pow(pt.omega, q) * pt.A;
    out.push_back(pt);
  }
  return out;
}

std::vector<ExperimentRow> run_extremal_experiment(double f, double F, double p, double q,
                                                   std::span<const Refinement> refinements, SpineLayout layout) {
  if (!(q > 1.0 && q < p)) throw std::invalid_argument("q must lie in (1,p)");
  if (!(F > std::pow(f, p))) throw std::invalid_argument("the experiment needs F > f^p");
  const ExtremalSequence seq = extremal_sequence(f, F, p, refinements, layout);
  const double target = bellman_value(f, F, p);
  const auto track = q_integral_track(seq.steps, q, seq.beta);
  std::vector<ExperimentRow> rows;
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    const StepFunction& phi = seq.steps[i];
    const GapReport g18 = ineq_18_report(phi, p, q, seq.beta);
    const GapReport g41 = ineq_41_report(phi, p, q, seq.beta);
    ExperimentRow row;
    row.step = i;
    row.arity = seq.refinements[i].arity;
    row.depth = seq.refinements[i].depth;
    row.f = g18.components.at("f");
    row.F_measured = g18.components.at("F");
    row.maximal_p_integral = g18.components.at("maximal_p_integral");
    row.bellman_target = target;
    row.gap18 = g18.gap;
    row.gap41 = g41.gap;
    row.stability = stability_metric(phi, seq.beta, p);
    row.A_q = track[i].A;
    row.q_measured = track[i].measured;
    row.q_predicted = track[i].predicted;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace maxbell
