#include "maxbell/bellman.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace maxbell;

TEST_CASE("H_p values") {
  for (double p : {1.3, 2.0, 4.0}) {
    CHECK(h_p(1.0, p) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(h_p(p / (p - 1.0), p)) <= 1e-14);
  }
  CHECK(h_p(1.5, 2.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS(h_p(-0.1, 2.0));
  CHECK_THROWS(h_p(1.0, 1.0));
}

TEST_CASE("omega_p inverts H_p") {
  CHECK(omega_p(1.0, 3.0) == 1.0);
  CHECK(omega_p(0.75, 2.0) == doctest::Approx(1.5).epsilon(1e-14));
  for (double p : {1.2, 1.5, 2.0, 3.0, 5.0}) {
    CHECK(omega_p(1e-15, p) == doctest::Approx(p / (p - 1.0)).epsilon(1e-6));
    double prev = omega_p(1e-6, p);
    for (int i = 1; i <= 1000; ++i) {
      const double z = i / 1000.0;
      const double w = omega_p(z, p);
      CHECK(w >= 1.0);
      CHECK(w <= p / (p - 1.0));
      CHECK(std::abs(h_p(w, p) - z) <= 1e-12);
      CHECK(w <= prev);
      prev = w;
    }
  }
  for (int i = 1; i <= 1000; ++i) {
    const double z = i / 1000.0;
    CHECK(std::abs(omega_p(z, 2.0) - (1.0 + std::sqrt(1.0 - z))) <= 1e-12);
  }
  CHECK_THROWS(omega_p(0.0, 2.0));
  CHECK_THROWS(omega_p(1.1, 2.0));
}

TEST_CASE("Bellman value") {
  CHECK(bellman_value(1.0, 1.0, 2.0) == 1.0);
  CHECK(bellman_value(2.0, 8.0, 3.0) == doctest::Approx(8.0));
  CHECK(bellman_value(1.0, 4.0 / 3.0, 2.0) == doctest::Approx(3.0).epsilon(1e-13));
  const double closed = 100.0 * std::pow(1.0 + std::sqrt(1.0 - 1.0 / 100.0), 2.0);
  CHECK(bellman_value(1.0, 100.0, 2.0) == doctest::Approx(closed).epsilon(1e-13));
  CHECK(closed == doctest::Approx(398.0).epsilon(1e-3));
  for (double p : {1.5, 2.0, 4.0}) {
    for (double F : {1.0, 2.0, 50.0}) {
      const double B = bellman_value(1.0, F, p);
      CHECK(B >= F * (1 - 1e-15));
      CHECK(B <= std::pow(p / (p - 1.0), p) * F);
    }
  }
  CHECK_THROWS(bellman_value(2.0, 1.0, 2.0));
  CHECK_THROWS(bellman_value(0.0, 1.0, 2.0));
}

TEST_CASE("coefficients of the (q, beta) inequality") {
  const Coefficients a = coefficients_18(2.0, 2.0, 1.0);
  CHECK(a.c1 == doctest::Approx(2.0));
  CHECK(a.c2 == doctest::Approx(4.0));
  for (double p : {1.5, 2.0, 3.0}) {
    const Coefficients t = coefficients_18(p, 1.0, 1.0 / (p - 1.0));
    CHECK(t.c1 == doctest::Approx(1.0 / (p - 1.0)).epsilon(1e-14));
    CHECK(t.c2 == doctest::Approx(p / (p - 1.0)).epsilon(1e-14));
    for (double q : {1.2, 1.4}) {
      const Coefficients s = coefficients_18(p, q, 1.0 / (p - 1.0));
      CHECK(s.c1 == doctest::Approx(q / (p - 1.0)).epsilon(1e-14));
      CHECK(s.c2 == doctest::Approx(std::pow(p / (p - 1.0), q)).epsilon(1e-14));
    }
  }
  // c2 − c1 ≥ 1, with equality at β = 0 and at q = 1, β = 1/(p−1).
  for (double p : {1.5, 2.0, 3.0}) {
    for (double q : {1.0, 0.5 * (1.0 + p), p}) {
      for (double beta : {0.05, 0.3, 1.0, 4.0}) {
        const Coefficients c = coefficients_18(p, q, beta);
        CHECK(c.c2 - c.c1 >= 1.0 - 1e-14);
      }
      if (q < p) CHECK(std::abs(coefficients_18(p, q, 0.0).c2 - coefficients_18(p, q, 0.0).c1 - 1.0) <= 1e-14);
    }
    const Coefficients e = coefficients_18(p, 1.0, 1.0 / (p - 1.0));
    CHECK(std::abs(e.c2 - e.c1 - 1.0) <= 1e-14);
  }
  CHECK_THROWS(coefficients_18(2.0, 2.5, 1.0));
  CHECK_THROWS(coefficients_18(2.0, 2.0, 0.0));
}

TEST_CASE("A0") {
  for (double p : {1.5, 3.0}) {
    const double q = 0.5 * (1.0 + p);
    CHECK(a0(0.0, p, q) == doctest::Approx((p - q) / p).epsilon(1e-15));
  }
  CHECK(a0(0.5, 2.0, 1.5) * coefficients_18(2.0, 1.5, 0.5).c2 == doctest::Approx(1.0).epsilon(1e-14));
  const double direct = (2.0 - 1.0) * 0.25 / std::pow(1.25, 2.0) + ((3.0 - 2.0) / 3.0) / std::pow(1.25, 1.0);
  CHECK(a0(0.25, 3.0, 2.0) == doctest::Approx(direct).epsilon(1e-15));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 1000; ++n) {
    const double p = 1.05 + 4.0 * u(rng);
    const double q = 1.0 + (p - 1.0) * u(rng);
    const double beta = 5.0 * u(rng);
    const double v = a0(beta, p, q);
    CHECK(v > 0.0);
    CHECK(v <= 1.0 + 1e-15);
  }
  CHECK_THROWS(a0(-0.1, 2.0, 1.5));
  CHECK_THROWS(a0(0.5, 2.0, 2.5));
}

TEST_CASE("G(beta)") {
  CHECK(g_beta(0.0, 2.5) == 1.0);
  CHECK(g_beta(0.5, 2.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(g_beta(1.0 - 1e-12, 2.0) > 1e11);
  CHECK_THROWS(g_beta(1.0, 2.0));
  for (double p : {1.2, 2.0, 4.0}) {
    double prev = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double beta = i / 1000.0 / (p - 1.0);
      const double g = g_beta(beta, p);
      CHECK(g > prev);
      CHECK(std::abs(1.0 / g - h_p(beta + 1.0, p)) <= 1e-12);
      prev = g;
    }
  }
}

TEST_CASE("solve_beta") {
  CHECK(solve_beta(1.0, 1.0, 2.0) == 0.0);
  CHECK(solve_beta(2.0, 8.0, 3.0) == 0.0);
  CHECK(solve_beta(1.0, 4.0 / 3.0, 2.0) == doctest::Approx(0.5).epsilon(1e-13));
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 200; ++n) {
    const double f = 0.1 + 5.0 * u(rng);
    const double p = 1.1 + 3.9 * u(rng);
    const double F = std::pow(f, p) * (1.0 + 20.0 * u(rng));
    const double beta = solve_beta(f, F, p);
    CHECK(beta >= 0.0);
    CHECK(beta * (p - 1.0) < 1.0);
    CHECK(std::abs(beta + 1.0 - omega_p(std::pow(f, p) / F, p)) <= 1e-10);
    CHECK(g_beta(beta, p) == doctest::Approx(F / std::pow(f, p)).epsilon(1e-10));
  }
  CHECK_THROWS_WITH(solve_beta(2.0, 1.0, 2.0), doctest::Contains("f^p"));
}

TEST_CASE("Params validation") {
  CHECK_NOTHROW((Params{.p = 2.0, .q = 1.5, .beta = 0.5}.validate()));
  CHECK_THROWS_WITH((Params{.p = 2.0, .q = 2.5, .beta = 0.5}.validate()), doctest::Contains("q must lie in [1,p]"));
  CHECK_THROWS((Params{.p = 1.0, .q = 1.0, .beta = 0.5}.validate()));
  CHECK_THROWS((Params{.p = 2.0, .q = 1.5, .beta = 0.0}.validate()));
  CHECK_NOTHROW((Params{.p = 2.0, .q = 1.5, .beta = 5.0}.validate()));
  CHECK_THROWS((Params{.p = 2.0, .q = 1.5, .beta = 5.0}.validate(true)));
  CHECK_THROWS_WITH((Params{.p = 2.0, .f = 2.0, .F = 1.0}.validate_pair()), doctest::Contains("requires f^p <= F"));
}
