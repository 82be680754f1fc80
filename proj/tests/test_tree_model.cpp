#include "maxbell/sampling.hpp"
#include "maxbell/tree_model.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace maxbell;

namespace {

StepFunction make(int arity, int depth, std::initializer_list<double> v) {
  Eigen::ArrayXd a(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) a[i++] = x;
  return StepFunction(make_tree(arity, depth), a);
}

}  // namespace

TEST_CASE("make_tree sizes") {
  CHECK(make_tree(2, 0).leaf_count() == 1);
  CHECK(make_tree(2, 0).leaf_measure() == 1.0);
  CHECK(make_tree(2, 2).leaf_count() == 4);
  CHECK(make_tree(2, 2).leaf_measure() == 0.25);
  CHECK(make_tree(3, 2).leaf_count() == 9);
  CHECK(make_tree(3, 2).leaf_measure() == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("make_tree rejects bad shapes") {
  CHECK_THROWS_AS(make_tree(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_tree(37, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_tree(2, -1), std::invalid_argument);
  CHECK_THROWS(make_tree(2, 25));
}

TEST_CASE("leaf budget follows MAXBELL_MAX_LEAVES") {
  ::setenv("MAXBELL_MAX_LEAVES", "16", 1);
  CHECK(max_leaves() == 16);
  CHECK_NOTHROW(make_tree(2, 4));
  CHECK_THROWS(make_tree(2, 5));
  ::unsetenv("MAXBELL_MAX_LEAVES");
  CHECK(max_leaves() == (std::size_t{1} << 24));
}

TEST_CASE("levels partition the unit interval") {
  for (int m : {2, 3, 5}) {
    const TreeConfig c = make_tree(m, 4);
    for (int k = 0; k <= c.depth; ++k) {
      double total = 0.0;
      for (std::size_t i = 0; i < c.nodes_at(k); ++i) total += node_measure(c, {k, i});
      CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("node ids") {
  const TreeConfig c = make_tree(3, 3);
  CHECK(node_measure(c, NodeId::root()) == 1.0);
  CHECK(node_measure(make_tree(2, 3), {1, 1}) == 0.5);
  CHECK(node_measure(c, {2, 4}) == doctest::Approx(1.0 / 9.0));
  CHECK_THROWS(node_measure(c, {4, 0}));
  CHECK_THROWS(node_measure(c, {1, 3}));

  const NodeId n{2, 5};
  CHECK(n.digits(3) == "12");
  CHECK(NodeId::from_digits("12", 3) == n);
  CHECK(NodeId::root().digits(3).empty());
  CHECK(n.parent(3) == NodeId{1, 1});
  CHECK(NodeId{1, 1}.child(3, 2) == n);
  CHECK(NodeId{1, 1}.contains(n, 3));
  CHECK_FALSE(n.contains(NodeId{1, 1}, 3));
  CHECK(leaf_range(c, n) == std::pair<std::size_t, std::size_t>{15, 18});
  CHECK(NodeId::from_digits("a", 11) == NodeId{1, 10});
  CHECK_THROWS(NodeId::from_digits("3", 3));
}

TEST_CASE("step function validation") {
  const TreeConfig c = make_tree(2, 1);
  CHECK_THROWS_AS(StepFunction(c, Eigen::ArrayXd::Ones(3)), std::invalid_argument);
  Eigen::ArrayXd neg(2);
  neg << 1.0, -1.0;
  CHECK_THROWS_AS(StepFunction(c, neg), std::invalid_argument);
  Eigen::ArrayXd nan(2);
  nan << 1.0, std::nan("");
  CHECK_THROWS_AS(StepFunction(c, nan), std::invalid_argument);
}

TEST_CASE("integrals of the worked examples") {
  CHECK(integrate(StepFunction::constant(make_tree(3, 3), 3.0)) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(integrate(make(2, 1, {2, 0})) == 1.0);
  CHECK(integrate(make(2, 2, {4, 0, 0, 0})) == 1.0);
  CHECK(power_integral(make(2, 1, {2, 0}), 2.0) == 2.0);
  CHECK(power_integral(StepFunction::constant(make_tree(2, 3), 1.5), 3.0) == doctest::Approx(3.375));
  CHECK_THROWS(power_integral(make(2, 1, {2, 0}), 0.5));
}

TEST_CASE("integrals agree with quadrature and node sums") {
  Rng rng(7);
  for (int n = 0; n < 200; ++n) {
    const StepFunction phi = random_step_function(rng);
    for (double r : {1.0, 1.5, 2.0, 3.0}) {
      const double exact = power_integral(phi, r);
      CHECK(std::abs(exact - oracle::midpoint_power_integral(phi, r)) <= 1e-12 * std::max(1.0, exact));
    }
    const auto sums = level_sums(phi);
    for (int k = 0; k <= phi.config().depth; ++k) {
      for (std::size_t i = 0; i < phi.config().nodes_at(k); ++i) {
        CHECK(sums[static_cast<std::size_t>(k)][static_cast<Eigen::Index>(i)] == oracle::node_sum(phi, k, i));
      }
    }
    CHECK(level_averages(phi)[0][0] == oracle::node_average(phi, 0, 0));
  }
}

TEST_CASE("decreasing rearrangement examples") {
  const Rearranged c = decreasing_rearrangement(StepFunction::constant(make_tree(2, 3), 2.0));
  CHECK(c.segment_count() == 1);
  CHECK(c.values()[0] == 2.0);

  const Rearranged r = decreasing_rearrangement(make(2, 1, {0, 2}));
  CHECK(r.breakpoints() == std::vector<double>{0.5, 1.0});
  CHECK(r.values() == std::vector<double>{2.0, 0.0});
  CHECK(r.prefix_integral(0.25) == 0.5);
  CHECK(r.value_at(0.5) == 2.0);
  CHECK(r.value_at(0.75) == 0.0);
  CHECK(r.integral() == 1.0);
}

TEST_CASE("rearrangement is equimeasurable and preserves integrals") {
  Rng rng(11);
  for (int n = 0; n < 200; ++n) {
    const StepFunction phi = random_step_function(rng);
    const Rearranged g = decreasing_rearrangement(phi);
    for (std::size_t i = 1; i < g.segment_count(); ++i) CHECK(g.values()[i] < g.values()[i - 1]);
    for (int k = 0; k < 100; ++k) {
      const double lambda = uniform(rng, 0.0, 1.1 * phi.values().maxCoeff());
      CHECK(oracle::leaf_distribution(phi, lambda) == g.distribution(lambda));
      CHECK(oracle::profile_distribution(g, lambda) == doctest::Approx(distribution(phi, lambda)).epsilon(1e-14));
    }
    CHECK(g.integral() == doctest::Approx(integrate(phi)).epsilon(1e-13));
    for (double r : {1.5, 2.0, 3.0}) {
      double gr = 0.0;
      for (std::size_t i = 0; i < g.segment_count(); ++i) gr += std::pow(g.values()[i], r) * g.length(i);
      CHECK(gr == doctest::Approx(power_integral(phi, r)).epsilon(1e-13));
    }
  }
}

TEST_CASE("Rearranged validation") {
  CHECK_THROWS(Rearranged({0.5}, {1.0}));
  CHECK_THROWS(Rearranged({0.5, 1.0}, {1.0, 2.0}));
  CHECK_THROWS(Rearranged({0.5, 0.5, 1.0}, {3.0, 2.0, 1.0}));
  CHECK_THROWS(Rearranged({1.0}, {-1.0}));
  CHECK_THROWS(Rearranged({0.5, 1.0}, {1.0}));
}
