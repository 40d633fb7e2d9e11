#include <algorithm>
#include <cmath>

#include "component_split.hpp"
#include "qrja/errors.hpp"
#include "qrja/solvers.hpp"

namespace qrja {

void SolveOptions::validate() const {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) throw InvalidArgument("tolerance must be > 0");
  if (max_iterations < 1) throw InvalidArgument("max_iterations must be >= 1");
  if (!(irls_clamp > 0.0) || !std::isfinite(irls_clamp)) throw InvalidArgument("irls_clamp must be > 0");
}

double normal_equation_residual(const Instance& instance, std::span<const double> x) {
  if (x.size() != instance.num_candidates()) throw DimensionError("normal_equation_residual: length mismatch");
  std::vector<double> g(x.size(), 0.0);
  for (const Judgment& j : instance.judgments()) {
    const double r = j.w * (x[j.a] - x[j.b] - j.y);
    g[j.a] += r;
    g[j.b] -= r;
  }
  double worst = 0.0;
  for (double v : g) worst = std::max(worst, std::abs(v));
  return worst;
}

namespace {

// Preconditioned CG on the grounded Laplacian of one component. Local index 0
// is held at zero; `x` enters as the starting point and leaves as the solution.
// Returns the iterations used; `residual` receives the full (ungrounded)
// normal-equation residual in the infinity norm.
std::size_t component_cg(const Instance& instance, std::span<const std::size_t> judgment_ids,
                         std::span<const int> local, std::vector<double>& x, double threshold,
                         std::size_t max_iterations, double& residual) {
  const std::size_t k = x.size();
  std::vector<double> diag(k, 0.0), rhs(k, 0.0);
  for (std::size_t id : judgment_ids) {
    const Judgment& j = instance[id];
    const int a = local[j.a], b = local[j.b];
    diag[a] += j.w;
    diag[b] += j.w;
    rhs[a] += j.w * j.y;
    rhs[b] -= j.w * j.y;
  }
  auto apply = [&](const std::vector<double>& v, std::vector<double>& out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t id : judgment_ids) {
      const Judgment& j = instance[id];
      const int a = local[j.a], b = local[j.b];
      const double t = j.w * (v[a] - v[b]);
      out[a] += t;
      out[b] -= t;
    }
  };
  auto full_residual_norm = [&](const std::vector<double>& r_grounded, double anchor_residual) {
    double worst = std::abs(anchor_residual);
    for (std::size_t i = 1; i < k; ++i) worst = std::max(worst, std::abs(r_grounded[i]));
    return worst;
  };

  std::vector<double> r(k), z(k), p(k), q(k);
  std::size_t iterations = 0;
  x[0] = 0.0;
  // Restart from the true residual whenever the recurrence claims convergence
  // but the recomputed residual disagrees.
  while (true) {
    apply(x, q);
    double anchor = rhs[0] - q[0];
    for (std::size_t i = 0; i < k; ++i) r[i] = rhs[i] - q[i];
    r[0] = 0.0;
    residual = full_residual_norm(r, anchor);
    if (residual <= threshold || iterations >= max_iterations) return iterations;

    double rz = 0.0;
    for (std::size_t i = 1; i < k; ++i) {
      z[i] = r[i] / diag[i];
      rz += r[i] * z[i];
    }
    z[0] = 0.0;
    p = z;
    bool claimed = false;
    while (iterations < max_iterations) {
      ++iterations;
      apply(p, q);
      q[0] = 0.0;
      double pq = 0.0;
      for (std::size_t i = 1; i < k; ++i) pq += p[i] * q[i];
      if (!(pq > 0.0)) break;
      const double alpha = rz / pq;
      double anchor_sum = 0.0;
      for (std::size_t i = 1; i < k; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * q[i];
        anchor_sum += r[i];
      }
      // Columns of the Laplacian sum to zero, so the anchor row residual is
      // minus the sum of the others.
      if (full_residual_norm(r, -anchor_sum) <= threshold) {
        claimed = true;
        break;
      }
      double rz_next = 0.0;
      for (std::size_t i = 1; i < k; ++i) {
        z[i] = r[i] / diag[i];
        rz_next += r[i] * z[i];
      }
      const double beta = rz_next / rz;
      rz = rz_next;
      for (std::size_t i = 1; i < k; ++i) p[i] = z[i] + beta * p[i];
    }
    if (!claimed && iterations >= max_iterations) {
      apply(x, q);
      for (std::size_t i = 0; i < k; ++i) r[i] = rhs[i] - q[i];
      anchor = r[0];
      r[0] = 0.0;
      residual = full_residual_norm(r, anchor);
      return iterations;
    }
  }
}

}  // namespace

SolveResult solve_l2(const Instance& instance, const SolveOptions& opts) {
  opts.validate();
  auto split = detail::split_components(instance);

  double z_inf = 0.0;
  for (const Judgment& j : instance.judgments()) z_inf = std::max(z_inf, std::sqrt(j.w) * std::abs(j.y));
  const double threshold = opts.tolerance * std::max(1.0, z_inf);

  std::vector<double> x(instance.num_candidates(), 0.0);
  SolveResult result;
  result.converged = true;
  for (std::size_t g = 0; g < split.components.count(); ++g) {
    const auto& group = split.components.groups[g];
    if (group.size() < 2) continue;
    std::vector<double> local_x(group.size(), 0.0);
    double residual = 0.0;
    result.iterations += component_cg(instance, split.judgments[g], split.local, local_x, threshold,
                                      opts.max_iterations, residual);
    if (residual > threshold) result.converged = false;
    for (std::size_t i = 0; i < group.size(); ++i) x[group[i]] = local_x[i];
  }
  result.loss = qrja_loss(instance, x, LossSpec(2.0));
  result.x = normalize_gauge(x, instance, std::move(split.components));
  return result;
}

}  // namespace qrja
