#include <algorithm>
#include <cmath>

#include "qrja/errors.hpp"
#include "qrja/solvers.hpp"

namespace qrja {

SolveResult solve_irls(const Instance& instance, LossSpec spec, const SolveOptions& opts) {
  opts.validate();
  const double p = spec.p();
  if (!(p > 1.0)) {
    throw UnsupportedExponent("IRLS needs p > 1 (use solve_l1 for p = 1; p < 1 is NP-hard)");
  }

  // Inner solves run tighter than the outer stopping rule so that solver noise
  // does not masquerade as objective progress.
  SolveOptions inner = opts;
  inner.tolerance = std::max(opts.tolerance * 1e-3, 1e-14);

  SolveResult start = solve_l2(instance, inner);
  std::vector<double> x = start.x.x;
  double objective = qrja_loss(instance, x, spec);

  SolveResult result;
  result.iterations = 0;
  result.objective_trace.push_back(objective);
  result.converged = p == 2.0 || objective == 0.0;

  std::vector<double> weights(instance.num_judgments());
  std::vector<double> trial(x.size());
  while (!result.converged && result.iterations < opts.max_iterations) {
    ++result.iterations;
    const auto r = residuals(instance, x);
    for (std::size_t i = 0; i < weights.size(); ++i) {
      weights[i] = instance[i].w * std::pow(std::max(std::abs(r[i]), opts.irls_clamp), p - 2.0);
    }
    const std::vector<double> candidate = solve_l2(instance.with_weights(weights), inner).x.x;

    double step = 1.0;
    double next = qrja_loss(instance, candidate, spec);
    trial = candidate;
    for (int halvings = 0; next > objective && halvings < 40; ++halvings) {
      step *= 0.5;
      for (std::size_t v = 0; v < x.size(); ++v) trial[v] = x[v] + step * (candidate[v] - x[v]);
      next = qrja_loss(instance, trial, spec);
    }
    if (next > objective) {
      // No descent along the IRLS direction: x is stationary to working precision.
      result.converged = true;
      break;
    }
    const double decrease = (objective - next) / std::max(objective, 1e-300);
    x = trial;
    objective = next;
    result.objective_trace.push_back(objective);
    if (decrease < opts.tolerance || objective == 0.0) result.converged = true;
  }

  result.loss = objective;
  result.x = normalize_gauge(x, instance);
  return result;
}

SolveResult solve(const Instance& instance, LossSpec spec, const SolveOptions& opts) {
  if (spec.p() < 1.0) {
    throw UnsupportedExponent("l_p aggregation with p < 1 is NP-hard (reduction from Max-Cut); no solver is provided");
  }
  if (spec.p() == 1.0) return solve_l1(instance, opts);
  if (spec.p() == 2.0) return solve_l2(instance, opts);
  return solve_irls(instance, spec, opts);
}

}  // namespace qrja
