#include "qrja/network_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qrja/errors.hpp"

namespace qrja::flow {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

NetworkSimplex::NetworkSimplex(int num_nodes, std::vector<Arc> arcs)
    : num_nodes_(num_nodes), root_(num_nodes), arcs_(std::move(arcs)), num_real_arcs_(arcs_.size()) {
  if (num_nodes < 0) throw InvalidArgument("network simplex: negative node count");
  for (const Arc& a : arcs_) {
    if (a.from < 0 || a.to < 0 || a.from >= num_nodes || a.to >= num_nodes) {
      throw InvalidArgument("network simplex: arc endpoint out of range");
    }
    if (!(a.capacity >= 0.0) || !std::isfinite(a.cost)) {
      throw InvalidArgument("network simplex: capacity must be >= 0 and cost finite");
    }
  }
  for (int v = 0; v < num_nodes_; ++v) arcs_.push_back({v, root_, kInf, 0.0});

  const std::size_t total_nodes = static_cast<std::size_t>(num_nodes_) + 1;
  flow_.assign(arcs_.size(), 0.0);
  state_.assign(arcs_.size(), State::kLower);
  tree_adj_.assign(total_nodes, {});
  for (std::size_t e = num_real_arcs_; e < arcs_.size(); ++e) {
    state_[e] = State::kTree;
    tree_adj_[arcs_[e].from].push_back(static_cast<int>(e));
    tree_adj_[root_].push_back(static_cast<int>(e));
  }
  parent_.assign(total_nodes, -1);
  pred_arc_.assign(total_nodes, -1);
  depth_.assign(total_nodes, 0);
  potential_.assign(total_nodes, 0.0);
  rebuild_tree();
}

void NetworkSimplex::rebuild_tree() {
  std::vector<int> stack{root_};
  parent_[root_] = -1;
  pred_arc_[root_] = -1;
  depth_[root_] = 0;
  potential_[root_] = 0.0;
  std::vector<char> seen(parent_.size(), 0);
  seen[root_] = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int e : tree_adj_[u]) {
      const Arc& a = arcs_[e];
      const int v = a.from == u ? a.to : a.from;
      if (seen[v]) continue;
      seen[v] = 1;
      parent_[v] = u;
      pred_arc_[v] = e;
      depth_[v] = depth_[u] + 1;
      // pi[from] - pi[to] = cost
      potential_[v] = a.from == u ? potential_[u] - a.cost : potential_[u] + a.cost;
      stack.push_back(v);
    }
  }
}

double NetworkSimplex::reduced_cost(int e) const {
  const Arc& a = arcs_[e];
  return a.cost - potential_[a.from] + potential_[a.to];
}

int NetworkSimplex::find_entering(double eps) const {
  for (std::size_t e = 0; e < arcs_.size(); ++e) {
    if (state_[e] == State::kTree) continue;
    const double rc = reduced_cost(static_cast<int>(e));
    if (state_[e] == State::kLower && rc < -eps && arcs_[e].capacity > 0.0) return static_cast<int>(e);
    if (state_[e] == State::kUpper && rc > eps) return static_cast<int>(e);
  }
  return -1;
}

int NetworkSimplex::join_node(int u, int v) const {
  while (u != v) {
    if (depth_[u] >= depth_[v]) {
      u = parent_[u];
    } else {
      v = parent_[v];
    }
  }
  return u;
}

CirculationResult NetworkSimplex::solve(std::size_t max_pivots, double tolerance) {
  double max_cost = 1.0;
  for (std::size_t e = 0; e < num_real_arcs_; ++e) max_cost = std::max(max_cost, std::abs(arcs_[e].cost));
  const double eps = tolerance * max_cost;

  CirculationResult result;
  for (;;) {
    const int in_arc = find_entering(eps);
    if (in_arc < 0) {
      result.optimal = true;
      break;
    }
    if (result.pivots >= max_pivots) break;
    ++result.pivots;

    const bool forward = state_[in_arc] == State::kLower;
    const int first = forward ? arcs_[in_arc].from : arcs_[in_arc].to;
    const int second = forward ? arcs_[in_arc].to : arcs_[in_arc].from;
    const int join = join_node(first, second);

    // Orientation: join -> ... -> first -> second -> ... -> join. The leaving
    // arc is the last blocking arc along that orientation.
    double delta = arcs_[in_arc].capacity;
    int leaving_node = -1;  // -1 means the entering arc itself blocks
    bool leaving_on_first_side = false;
    for (int u = first; u != join; u = parent_[u]) {
      const int e = pred_arc_[u];
      const bool up = arcs_[e].from == u;
      const double residual = up ? flow_[e] : arcs_[e].capacity - flow_[e];
      if (residual < delta) {
        delta = residual;
        leaving_node = u;
        leaving_on_first_side = true;
      }
    }
    for (int u = second; u != join; u = parent_[u]) {
      const int e = pred_arc_[u];
      const bool up = arcs_[e].from == u;
      const double residual = up ? arcs_[e].capacity - flow_[e] : flow_[e];
      if (residual <= delta) {
        delta = residual;
        leaving_node = u;
        leaving_on_first_side = false;
      }
    }
    if (!std::isfinite(delta)) throw Error("network simplex: unbounded negative-cost cycle");

    if (delta > 0.0) {
      flow_[in_arc] += forward ? delta : -delta;
      for (int u = first; u != join; u = parent_[u]) {
        const int e = pred_arc_[u];
        flow_[e] += arcs_[e].from == u ? -delta : delta;
      }
      for (int u = second; u != join; u = parent_[u]) {
        const int e = pred_arc_[u];
        flow_[e] += arcs_[e].from == u ? delta : -delta;
      }
    }

    if (leaving_node < 0) {
      state_[in_arc] = forward ? State::kUpper : State::kLower;
      flow_[in_arc] = forward ? arcs_[in_arc].capacity : 0.0;
      continue;
    }

    const int out_arc = pred_arc_[leaving_node];
    const bool out_up = arcs_[out_arc].from == leaving_node;
    // On the first side flow moves toward `first`, so an up arc drains to 0;
    // on the second side flow moves toward the join, so an up arc saturates.
    const bool out_at_upper = leaving_on_first_side ? !out_up : out_up;
    state_[out_arc] = out_at_upper ? State::kUpper : State::kLower;
    flow_[out_arc] = out_at_upper ? arcs_[out_arc].capacity : 0.0;
    state_[in_arc] = State::kTree;

    auto drop = [&](int node, int e) {
      auto& adj = tree_adj_[node];
      adj.erase(std::find(adj.begin(), adj.end(), e));
    };
    drop(arcs_[out_arc].from, out_arc);
    drop(arcs_[out_arc].to, out_arc);
    tree_adj_[arcs_[in_arc].from].push_back(in_arc);
    tree_adj_[arcs_[in_arc].to].push_back(in_arc);
    rebuild_tree();
  }

  for (std::size_t e = num_real_arcs_; e < arcs_.size(); ++e) {
    if (flow_[e] != 0.0) throw Error("network simplex: artificial arc carries flow");
  }
  result.flow.assign(flow_.begin(), flow_.begin() + static_cast<std::ptrdiff_t>(num_real_arcs_));
  result.potential.assign(potential_.begin(), potential_.begin() + num_nodes_);
  for (std::size_t e = 0; e < num_real_arcs_; ++e) result.cost += arcs_[e].cost * flow_[e];
  return result;
}

}  // namespace qrja::flow
