#include <algorithm>
#include <cmath>

#include "component_split.hpp"
#include "qrja/errors.hpp"
#include "qrja/network_simplex.hpp"
#include "qrja/solvers.hpp"

namespace qrja {

SolveResult solve_l1(const Instance& instance, const SolveOptions& opts) {
  opts.validate();
  auto split = detail::split_components(instance);

  std::vector<double> x(instance.num_candidates(), 0.0);
  SolveResult result;
  result.converged = true;
  double circulation_value = 0.0;

  for (std::size_t g = 0; g < split.components.count(); ++g) {
    const auto& group = split.components.groups[g];
    if (group.size() < 2) continue;
    const auto& ids = split.judgments[g];

    // Signed flow f_i on judgment i travels b -> a; negative flow is carried
    // by the reverse arc. Max sum f_i y_i is the min-cost circulation below.
    std::vector<flow::Arc> arcs;
    arcs.reserve(2 * ids.size());
    for (std::size_t id : ids) {
      const Judgment& j = instance[id];
      const int a = split.local[j.a], b = split.local[j.b];
      arcs.push_back({b, a, j.w, -j.y});
      arcs.push_back({a, b, j.w, j.y});
    }
    flow::NetworkSimplex simplex(static_cast<int>(group.size()), std::move(arcs));
    const std::size_t pivot_budget = std::max<std::size_t>(opts.max_iterations, 50 * ids.size() + 1000);
    const auto circulation = simplex.solve(pivot_budget);
    if (!circulation.optimal) result.converged = false;
    result.iterations += circulation.pivots;
    circulation_value -= circulation.cost;

    // Tree arcs satisfy pi[from] - pi[to] = cost, so on arc b->a with cost -y
    // the potentials give x[a] - x[b] = y: potentials are ratings directly.
    for (std::size_t i = 0; i < group.size(); ++i) x[group[i]] = circulation.potential[i];
  }

  result.loss = qrja_loss(instance, x, LossSpec(1.0));
  result.dual_objective = circulation_value;
  if (result.converged && circulation_value > result.loss + opts.tolerance * std::max(1.0, result.loss)) {
    throw Error("solve_l1: circulation value exceeds primal loss (weak duality violated)");
  }
  result.x = normalize_gauge(x, instance, std::move(split.components));
  return result;
}

}  // namespace qrja
