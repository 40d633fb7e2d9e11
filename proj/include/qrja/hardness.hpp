#pragma once

// Max-Cut -> l_p aggregation (p < 1) reduction. Candidates are the graph
// vertices plus two anchors s and t; with w2 = 2n/(1-p) + 1 and
// w1 = n*w2 + 1 the judgments are
//
//   (t, s, 1) weight w1
//   (s, u, 0) weight w2 and (t, u, 0) weight w2   for every vertex u
//   (u, v, 1) and (v, u, 1) weight 1              for every edge {u, v}
//
// Optimal ratings are 0/1 after shifting x_s to 0, and a cut of size k
// corresponds to loss n*w2 + 2(m - k) + k*2^p.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "qrja/core.hpp"
#include "qrja/random.hpp"

namespace qrja {

class MaxCutGraph {
 public:
  MaxCutGraph() = default;
  /// Rejects out-of-range endpoints, self-loops, and repeated edges.
  MaxCutGraph(int num_vertices, std::vector<std::pair<int, int>> edges);

  [[nodiscard]] int num_vertices() const noexcept { return n_; }
  [[nodiscard]] std::size_t num_edges() const noexcept { return edges_.size(); }
  [[nodiscard]] const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }

  /// Number of edges with endpoints on different sides.
  [[nodiscard]] std::size_t cut_size(std::span<const char> side) const;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
};

[[nodiscard]] MaxCutGraph complete_graph(int n);
[[nodiscard]] MaxCutGraph path_graph(int n);
[[nodiscard]] MaxCutGraph cycle_graph(int n);
[[nodiscard]] MaxCutGraph random_graph(int n, double edge_probability, CounterRng& rng);

/// Edge list text: vertex count on the first line, then one `u v` per line.
/// Blank lines and lines starting with '#' are ignored.
[[nodiscard]] MaxCutGraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const MaxCutGraph& g);

struct ReductionInstance {
  Instance instance;
  double p = 0.5;
  double w1 = 0.0;
  double w2 = 0.0;
  int graph_vertices = 0;
  std::size_t graph_edges = 0;
  CandidateId source = 0;  // v_s, index n
  CandidateId sink = 0;    // v_t, index n + 1
};

/// Throws UnsupportedExponent unless 0 < p < 1.
[[nodiscard]] ReductionInstance build_reduction(const MaxCutGraph& g, double p);

/// n*w2 + 2(m - k) + k*2^p: the loss of the 0/1 assignment induced by a cut of size k.
[[nodiscard]] double cut_loss(const ReductionInstance& r, std::size_t cut);

/// Shift so x_s = 0, set x_t = 1, snap each vertex to the nearer of {0, 1}
/// (0.5 goes to 0). Never increases the loss; a violation throws.
[[nodiscard]] std::vector<double> round_solution(std::span<const double> x, const ReductionInstance& r);

struct Cut {
  std::vector<int> zero_side;  // x_u = 0
  std::vector<int> one_side;   // x_u = 1
  std::size_t size = 0;
};

/// Reads the cut off a rounded vector. Throws InvalidArgument unless x_s = 0,
/// x_t = 1 and every vertex is exactly 0 or 1.
[[nodiscard]] Cut extract_cut(std::span<const double> rounded, const ReductionInstance& r);

/// Exact maximum cut by enumeration of the 2^(n-1) partitions; n <= 20.
[[nodiscard]] std::size_t bruteforce_maxcut(const MaxCutGraph& g);

/// Minimum loss over all 2^n assignments of vertices to {0, 1} with x_s = 0
/// and x_t = 1; n <= 20.
[[nodiscard]] double min_integral_loss(const ReductionInstance& r);

struct EquivalenceCheck {
  std::size_t max_cut = 0;
  double min_loss = 0.0;
  double predicted_loss = 0.0;
  bool holds = false;
};

/// Compares min_integral_loss against cut_loss(max cut) to `tolerance`.
[[nodiscard]] EquivalenceCheck verify_equivalence(const MaxCutGraph& g, double p, double tolerance = 1e-9);

/// Evaluates 1 - (1 - d)^p <= p d^p for p in (0, 1), d in (0, 1/2].
[[nodiscard]] bool check_relaxation_lemma(double p, double d);

}  // namespace qrja
