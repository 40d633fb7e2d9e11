#include <cmath>
#include <limits>

#include "component_split.hpp"
#include "qrja/errors.hpp"
#include "qrja/solvers.hpp"

namespace qrja {

namespace {

double term(double t, double p) {
  t = std::abs(t);
  if (p == 1.0) return t;
  if (p == 2.0) return t * t;
  return std::pow(t, p);
}

}  // namespace

SolveResult solve_bruteforce(const Instance& instance, LossSpec spec, double grid_step, double radius) {
  if (instance.num_candidates() > 5) throw SizeError("solve_bruteforce is limited to n <= 5 candidates");
  if (!(grid_step > 0.0) || !(radius >= 0.0)) throw InvalidArgument("grid_step must be > 0 and radius >= 0");

  const long half = static_cast<long>(std::floor(radius / grid_step + 1e-9));
  const long points = 2 * half + 1;
  const double p = spec.p();
  auto split = detail::split_components(instance);

  std::vector<double> x(instance.num_candidates(), 0.0);
  SolveResult result;
  result.converged = true;

  // The loss separates over components, so each is searched on its own.
  for (std::size_t g = 0; g < split.components.count(); ++g) {
    const auto& group = split.components.groups[g];
    const int k = static_cast<int>(group.size());
    if (k < 2) continue;
    const int free_vars = k - 1;

    // Judgments bucketed by the highest local index they touch, so the
    // partial loss through depth d only needs the judgments at depth d.
    std::vector<std::vector<std::size_t>> at_depth(k);
    for (std::size_t id : split.judgments[g]) {
      const Judgment& j = instance[id];
      at_depth[std::max(split.local[j.a], split.local[j.b])].push_back(id);
    }
    auto depth_loss = [&](int d, const std::vector<double>& local_x) {
      double s = 0.0;
      for (std::size_t id : at_depth[d]) {
        const Judgment& j = instance[id];
        s += j.w * term(local_x[split.local[j.a]] - local_x[split.local[j.b]] - j.y, p);
      }
      return s;
    };

    std::vector<double> local_x(k, 0.0);
    std::vector<double> best(k, 0.0);
    double best_loss = std::numeric_limits<double>::infinity();
    std::vector<long> index(k, 0);
    std::vector<double> partial(k + 1, 0.0);  // partial[d] = loss of depths < d

    // Odometer over local coordinates 1..k-1; the last one varies fastest.
    int d = 1;
    index[1] = 0;
    partial[1] = 0.0;
    while (d >= 1) {
      if (index[d] >= points) {
        --d;
        if (d >= 1) ++index[d];
        continue;
      }
      local_x[d] = static_cast<double>(index[d] - half) * grid_step;
      const double through = partial[d] + depth_loss(d, local_x);
      if (d == free_vars) {
        if (through < best_loss) {
          best_loss = through;
          best = local_x;
        }
        ++index[d];
      } else if (through >= best_loss) {
        ++index[d];  // partial sums only grow
      } else {
        partial[d + 1] = through;
        ++d;
        index[d] = 0;
      }
    }
    for (int i = 0; i < k; ++i) x[group[i]] = best[i];
    result.iterations += 1;
  }

  result.loss = qrja_loss(instance, x, spec);
  result.x = normalize_gauge(x, instance, std::move(split.components));
  return result;
}

}  // namespace qrja
