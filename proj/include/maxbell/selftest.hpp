#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace maxbell {

/// Outcome of one invariant suite. `worst` is the largest observed
/// error/tolerance ratio over the tolerance checks, so passing checks keep it
/// at or below 1.
struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  double worst = 0.0;
  std::string first_failure;

  bool ok() const { return failures == 0; }
};

/// Every leaf of maximal_function equals the max over its ancestors of a
/// directly summed average (bitwise).
SuiteResult suite_maximal_oracle(std::uint64_t seed, std::size_t count);
/// Support properties i–iv, star minimality, reconstruction, 𝓜φ ≥ φ and 𝓜φ ≥ f.
SuiteResult suite_linearization(std::uint64_t seed, std::size_t count);
/// Weak type (1,1) and the L^p bound.
SuiteResult suite_classics(std::uint64_t seed, std::size_t count);
/// ω_p against H_p on a 1000-point grid, and the closed form at p = 2.
SuiteResult suite_omega_inversion();
/// ineq_18 on random draws, its equality cases, and ineq_41·c2 = ineq_18.
SuiteResult suite_ineq18(std::uint64_t seed, std::size_t count);
/// a0·c2 = 1 and c1 = c2(q/p)(β+1)^{1−q} on a grid.
SuiteResult suite_coefficients();
/// Per-node slack of the linearized proof is nonnegative.
SuiteResult suite_slack(std::uint64_t seed, std::size_t count);
/// Hardy form with q = 1, β = 1/(p−1) is an equality on step profiles.
SuiteResult suite_hardy_equality(std::uint64_t seed, std::size_t count);
/// Power-law profiles at matched β leave exactly the residual (q/p)(β+1)^{1−q}f^p.
SuiteResult suite_powerlaw_residual();
/// G(α) → q/(p−1) monotonically on a geometric grid.
SuiteResult suite_sharpness();
/// solve_beta balances the (f, F, q, β) identity and matches ω_p.
SuiteResult suite_solve_beta(std::uint64_t seed, std::size_t count);
/// Hölder quotient, Young-type and mean-value bounds.
SuiteResult suite_elementary(std::uint64_t seed, std::size_t count);
/// spine_construct keeps the sampled rearrangement and stays under the Hardy
/// integrals.
SuiteResult suite_spine(std::uint64_t seed, std::size_t count);

/// All suites, in a fixed order, sized from `samples`.
std::vector<SuiteResult> run_selftest(std::uint64_t seed, std::size_t samples);

}  // namespace maxbell
