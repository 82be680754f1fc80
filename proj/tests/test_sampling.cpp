#include "maxbell/sampling.hpp"

#include <doctest.h>

using namespace maxbell;

TEST_CASE("random step functions stay in the requested shapes") {
  Rng rng(51);
  int zeros = 0, spikes = 0, ties = 0;
  for (int n = 0; n < 500; ++n) {
    const StepFunction phi = random_step_function(rng);
    CHECK(phi.config().arity >= 2);
    CHECK(phi.config().arity <= 4);
    CHECK(phi.config().depth <= 6);
    CHECK(phi.values().maxCoeff() > 0.0);
    zeros += (phi.values() == 0.0).count() > 0;
    spikes += (phi.values() >= 10.0).count() > 0;
    for (std::size_t i = 1; i < phi.size(); ++i) ties += phi[i] == phi[i - 1] && phi[i] > 0.0;
  }
  CHECK(zeros > 100);
  CHECK(spikes > 100);
  CHECK(ties > 100);
}

TEST_CASE("sampling is reproducible from the seed") {
  Rng a(52), b(52);
  for (int n = 0; n < 20; ++n) {
    const StepFunction x = random_step_function(a);
    const StepFunction y = random_step_function(b);
    CHECK(x.config() == y.config());
    CHECK((x.values() == y.values()).all());
    const Rearranged g = random_profile(a);
    const Rearranged h = random_profile(b);
    CHECK(g.values() == h.values());
    CHECK(g.breakpoints() == h.breakpoints());
  }
}

TEST_CASE("fixed-shape functions and profiles") {
  Rng rng(53);
  const StepFunction phi = random_step_function(rng, make_tree(3, 4));
  CHECK(phi.size() == 81);
  for (int n = 0; n < 200; ++n) {
    const Rearranged g = random_profile(rng, 5);
    CHECK(g.segment_count() >= 1);
    CHECK(g.segment_count() <= 5);
    CHECK(g.breakpoints().back() == 1.0);
  }
}
