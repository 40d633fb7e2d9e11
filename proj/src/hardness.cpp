#include "qrja/hardness.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "qrja/errors.hpp"

namespace qrja {

MaxCutGraph::MaxCutGraph(int num_vertices, std::vector<std::pair<int, int>> edges)
    : n_(num_vertices), edges_(std::move(edges)) {
  if (n_ < 0) throw InvalidArgument("graph: negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges_) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InvalidArgument("graph: edge endpoint out of range");
    if (u == v) throw InvalidArgument("graph: self-loop on vertex " + std::to_string(u));
    if (!seen.insert(std::minmax(u, v)).second) {
      throw InvalidArgument("graph: duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
  }
}

std::size_t MaxCutGraph::cut_size(std::span<const char> side) const {
  std::size_t k = 0;
  for (auto [u, v] : edges_) k += side[u] != side[v] ? 1 : 0;
  return k;
}

MaxCutGraph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return MaxCutGraph(n, std::move(e));
}

MaxCutGraph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
  return MaxCutGraph(n, std::move(e));
}

MaxCutGraph cycle_graph(int n) {
  if (n < 3) throw InvalidArgument("cycle graph needs n >= 3");
  auto e = path_graph(n).edges();
  e.emplace_back(n - 1, 0);
  return MaxCutGraph(n, std::move(e));
}

MaxCutGraph random_graph(int n, double edge_probability, CounterRng& rng) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(edge_probability)) e.emplace_back(u, v);
  return MaxCutGraph(n, std::move(e));
}

MaxCutGraph read_edge_list(std::istream& in) {
  std::string line;
  int n = -1;
  std::size_t line_no = 0;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (n < 0) {
      if (!(fields >> n) || n < 0) throw ParseError("line " + std::to_string(line_no) + ": expected vertex count");
    } else {
      int u = 0, v = 0;
      if (!(fields >> u >> v)) throw ParseError("line " + std::to_string(line_no) + ": expected `u v`");
      edges.emplace_back(u, v);
    }
    std::string rest;
    if (fields >> rest) throw ParseError("line " + std::to_string(line_no) + ": trailing text");
  }
  if (n < 0) throw ParseError("edge list is empty");
  try {
    return MaxCutGraph(n, std::move(edges));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

void write_edge_list(std::ostream& out, const MaxCutGraph& g) {
  out << g.num_vertices() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

ReductionInstance build_reduction(const MaxCutGraph& g, double p) {
  if (!(p > 0.0 && p < 1.0)) throw UnsupportedExponent("the Max-Cut reduction needs 0 < p < 1");
  const int n = g.num_vertices();
  if (n < 1) throw InvalidArgument("the Max-Cut reduction needs at least one vertex");

  ReductionInstance r;
  r.p = p;
  r.graph_vertices = n;
  r.graph_edges = g.num_edges();
  r.w2 = 2.0 * n / (1.0 - p) + 1.0;
  r.w1 = n * r.w2 + 1.0;
  r.source = n;
  r.sink = n + 1;

  std::vector<Judgment> js;
  js.reserve(1 + 2 * static_cast<std::size_t>(n) + 2 * g.num_edges());
  js.push_back({r.sink, r.source, 1.0, r.w1});
  for (int u = 0; u < n; ++u) js.push_back({r.source, u, 0.0, r.w2});
  for (int u = 0; u < n; ++u) js.push_back({r.sink, u, 0.0, r.w2});
  for (auto [u, v] : g.edges()) {
    js.push_back({u, v, 1.0, 1.0});
    js.push_back({v, u, 1.0, 1.0});
  }
  r.instance = Instance(static_cast<std::size_t>(n) + 2, std::move(js));
  return r;
}

double cut_loss(const ReductionInstance& r, std::size_t cut) {
  const double m = static_cast<double>(r.graph_edges);
  const double k = static_cast<double>(cut);
  return r.graph_vertices * r.w2 + 2.0 * (m - k) + k * std::pow(2.0, r.p);
}

std::vector<double> round_solution(std::span<const double> x, const ReductionInstance& r) {
  if (x.size() != r.instance.num_candidates()) throw DimensionError("round_solution: length must be n + 2");
  const double shift = x[r.source];
  std::vector<double> out(x.size());
  for (int u = 0; u < r.graph_vertices; ++u) out[u] = x[u] - shift <= 0.5 ? 0.0 : 1.0;
  out[r.source] = 0.0;
  out[r.sink] = 1.0;

  const LossSpec spec(r.p);
  const double before = qrja_loss(r.instance, x, spec);
  const double after = qrja_loss(r.instance, out, spec);
  if (after > before * (1.0 + 1e-12) + 1e-12) {
    throw Error("round_solution: rounding increased the loss (" + std::to_string(before) + " -> " +
                std::to_string(after) + ")");
  }
  return out;
}

Cut extract_cut(std::span<const double> rounded, const ReductionInstance& r) {
  if (rounded.size() != r.instance.num_candidates()) throw DimensionError("extract_cut: length must be n + 2");
  if (rounded[r.source] != 0.0 || rounded[r.sink] != 1.0) {
    throw InvalidArgument("extract_cut: expected x_s = 0 and x_t = 1 (round the solution first)");
  }
  Cut cut;
  std::vector<char> side(static_cast<std::size_t>(r.graph_vertices));
  for (int u = 0; u < r.graph_vertices; ++u) {
    if (rounded[u] == 0.0) {
      cut.zero_side.push_back(u);
    } else if (rounded[u] == 1.0) {
      cut.one_side.push_back(u);
      side[u] = 1;
    } else {
      throw InvalidArgument("extract_cut: vertex " + std::to_string(u) + " is not integral");
    }
  }
  for (const Judgment& j : r.instance.judgments()) {
    // each edge appears as two unit-weight judgments; count it once
    if (j.a < r.graph_vertices && j.b < r.graph_vertices && j.a < j.b) cut.size += side[j.a] != side[j.b] ? 1 : 0;
  }
  return cut;
}

std::size_t bruteforce_maxcut(const MaxCutGraph& g) {
  const int n = g.num_vertices();
  if (n > 20) throw SizeError("bruteforce_maxcut is limited to n <= 20");
  if (n <= 1) return 0;
  std::size_t best = 0;
  std::vector<char> side(static_cast<std::size_t>(n), 0);
  // vertex n-1 stays on side 0; complements give the same cut
  const std::uint32_t limit = 1u << (n - 1);
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    for (int u = 0; u + 1 < n; ++u) side[u] = static_cast<char>((mask >> u) & 1u);
    best = std::max(best, g.cut_size(side));
  }
  return best;
}

double min_integral_loss(const ReductionInstance& r) {
  const int n = r.graph_vertices;
  if (n > 20) throw SizeError("min_integral_loss is limited to n <= 20");
  const LossSpec spec(r.p);
  std::vector<double> x(r.instance.num_candidates(), 0.0);
  x[r.source] = 0.0;
  x[r.sink] = 1.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    for (int u = 0; u < n; ++u) x[u] = static_cast<double>((mask >> u) & 1u);
    best = std::min(best, qrja_loss(r.instance, x, spec));
  }
  return best;
}

EquivalenceCheck verify_equivalence(const MaxCutGraph& g, double p, double tolerance) {
  const auto r = build_reduction(g, p);
  EquivalenceCheck c;
  c.max_cut = bruteforce_maxcut(g);
  c.min_loss = min_integral_loss(r);
  c.predicted_loss = cut_loss(r, c.max_cut);
  c.holds = std::abs(c.min_loss - c.predicted_loss) <= tolerance;
  return c;
}

bool check_relaxation_lemma(double p, double d) {
  if (!(p > 0.0 && p < 1.0) || !(d > 0.0 && d <= 0.5)) {
    throw InvalidArgument("relaxation inequality is stated for p in (0, 1) and d in (0, 1/2]");
  }
  return 1.0 - std::pow(1.0 - d, p) <= p * std::pow(d, p);
}

}  // namespace qrja
