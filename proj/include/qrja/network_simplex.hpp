#pragma once

// Primal network simplex for min-cost circulation with real capacities.
//
// Every node has zero supply; arcs carry flow in [0, capacity] at cost
// `cost` per unit. The solver keeps a strongly feasible spanning tree rooted
// at an artificial node (artificial arcs v -> root, zero cost, unbounded,
// never able to carry flow), picks the lowest-index eligible entering arc,
// and removes the last blocking arc of the pivot cycle. Together these make
// the pivot sequence deterministic and finite.
//
// Potentials follow the convention pi[u] - pi[v] = cost(u->v) on tree arcs,
// so the reduced cost of u->v is cost - pi[u] + pi[v] and at optimum arcs at
// their lower bound have reduced cost >= 0, saturated arcs <= 0.

#include <cstddef>
#include <vector>

namespace qrja::flow {

struct Arc {
  int from = 0;
  int to = 0;
  double capacity = 0.0;
  double cost = 0.0;
};

struct CirculationResult {
  std::vector<double> flow;       // per arc
  std::vector<double> potential;  // per node, root potential 0
  double cost = 0.0;              // sum of cost * flow
  std::size_t pivots = 0;
  bool optimal = false;           // false when the pivot budget ran out
};

class NetworkSimplex {
 public:
  NetworkSimplex(int num_nodes, std::vector<Arc> arcs);

  /// `tolerance` is the reduced-cost slack below which an arc is not eligible.
  [[nodiscard]] CirculationResult solve(std::size_t max_pivots, double tolerance = 1e-11);

 private:
  enum class State : unsigned char { kLower, kUpper, kTree };

  void rebuild_tree();
  [[nodiscard]] double reduced_cost(int arc) const;
  [[nodiscard]] int find_entering(double eps) const;
  [[nodiscard]] int join_node(int u, int v) const;

  int num_nodes_;  // real nodes; the root is node num_nodes_
  int root_;
  std::vector<Arc> arcs_;  // real arcs followed by one artificial arc per node
  std::size_t num_real_arcs_;

  std::vector<double> flow_;
  std::vector<State> state_;
  std::vector<std::vector<int>> tree_adj_;
  std::vector<int> parent_;
  std::vector<int> pred_arc_;
  std::vector<int> depth_;
  std::vector<double> potential_;
};

}  // namespace qrja::flow
