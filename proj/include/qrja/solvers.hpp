#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qrja/core.hpp"

namespace qrja {

struct SolveOptions {
  double tolerance = 1e-8;
  std::size_t max_iterations = 10000;
  double irls_clamp = 1e-10;  // residual floor in IRLS weights
  std::uint64_t seed = 0;

  void validate() const;
};

struct SolveResult {
  RatingVector x;
  double loss = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::optional<double> dual_objective;  // l1 only: circulation value sum_i f_i y_i
  std::vector<double> objective_trace;   // IRLS only: accepted objective per iteration
};

/// Weighted least squares: conjugate gradient with a Jacobi preconditioner on
/// the Laplacian of each connected component, one candidate grounded per
/// component. Stops when the normal-equation residual satisfies
/// ||A^T (A x - z)||_inf <= tolerance * max(1, ||z||_inf).
[[nodiscard]] SolveResult solve_l2(const Instance& instance, const SolveOptions& opts = {});

/// Least absolute deviations through the dual min-cost circulation: each
/// judgment (a, b, y, w) becomes arc b->a with cost -y and arc a->b with cost
/// +y, both of capacity w. Optimal node potentials are the ratings; the
/// circulation value is reported as `dual_objective`.
[[nodiscard]] SolveResult solve_l1(const Instance& instance, const SolveOptions& opts = {});

/// Iteratively reweighted least squares for p > 1. Each step re-solves the
/// weighted l2 problem with weights w_i * max(|r_i|, clamp)^(p - 2); a step
/// that would raise the objective is halved until it does not, so the
/// accepted objective sequence never increases.
[[nodiscard]] SolveResult solve_irls(const Instance& instance, LossSpec spec, const SolveOptions& opts = {});

/// Exhaustive grid search for tiny instances (n <= 5). Per component the
/// smallest candidate is held at 0 and the others range over multiples of
/// `grid_step` in [-radius, radius]. Test oracle only.
[[nodiscard]] SolveResult solve_bruteforce(const Instance& instance, LossSpec spec, double grid_step, double radius);

/// Picks the solver for p: 1 -> circulation, 2 -> Laplacian CG, otherwise
/// IRLS. Throws UnsupportedExponent for p < 1 (the problem is NP-hard there).
[[nodiscard]] SolveResult solve(const Instance& instance, LossSpec spec, const SolveOptions& opts = {});

/// ||A^T (A x - z)||_inf for the weighted l2 problem.
[[nodiscard]] double normal_equation_residual(const Instance& instance, std::span<const double> x);

}  // namespace qrja
