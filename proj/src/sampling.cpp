#include "maxbell/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace maxbell {

double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

namespace {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

StepFunction random_step_function(Rng& rng, const TreeConfig& config) {
  Eigen::ArrayXd v(static_cast<Eigen::Index>(config.leaf_count()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double u = uniform(rng, 0.0, 1.0);
    if (i > 0 && u < 0.2) {
      v[i] = v[i - 1];
    } else if (u < 0.45) {
      v[i] = 0.0;
    } else if (u < 0.5) {
      v[i] = uniform(rng, 10.0, 100.0);
    } else {
      v[i] = uniform(rng, 0.0, 2.0);
    }
  }
  if ((v == 0.0).all()) v[0] = 1.0;
  return StepFunction(config, std::move(v));
}

StepFunction random_step_function(Rng& rng, int max_arity, int max_depth) {
  const int arity = uniform_int(rng, 2, max_arity);
  const int depth = uniform_int(rng, 0, max_depth);
  return random_step_function(rng, make_tree(arity, depth));
}

Rearranged random_profile(Rng& rng, int max_segments) {
  const int k = uniform_int(rng, 1, max_segments);
  std::vector<double> breaks;
  while (static_cast<int>(breaks.size()) < k - 1) {
    const double b = uniform(rng, 0.01, 0.99);
    if (std::none_of(breaks.begin(), breaks.end(), [b](double x) { return std::abs(x - b) < 1e-3; })) {
      breaks.push_back(b);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.push_back(1.0);

  std::vector<double> values(static_cast<std::size_t>(k));
  for (double& x : values) x = uniform(rng, 0.05, 5.0);
  std::sort(values.begin(), values.end(), std::greater<>());
  if (k > 1 && uniform(rng, 0.0, 1.0) < 0.2) values.back() = 0.0;
  return Rearranged(std::move(breaks), std::move(values));
}

}  // namespace maxbell
