#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "qrja/baselines.hpp"
#include "qrja/errors.hpp"

namespace qrja {

double kemeny_disagreements(const PairwiseCounts& counts, std::span<const std::size_t> order) {
  double total = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) total += counts(order[j], order[i]);
  return total;
}

namespace {

KemenyResult exact_dp(const PairwiseCounts& counts) {
  const std::size_t k = counts.k;
  const std::uint32_t full = (1u << k) - 1;
  // g[R]: cheapest internal order of the items in R
  std::vector<double> g(std::size_t{full} + 1, 0.0);
  auto lead_cost = [&](std::size_t c, std::uint32_t rest) {
    double s = 0.0;
    for (std::uint32_t bits = rest; bits != 0; bits &= bits - 1) s += counts(static_cast<std::size_t>(std::countr_zero(bits)), c);
    return s;
  };
  for (std::uint32_t r = 1; r <= full; ++r) {
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t bits = r; bits != 0; bits &= bits - 1) {
      const auto c = static_cast<std::size_t>(std::countr_zero(bits));
      const std::uint32_t rest = r & ~(1u << c);
      best = std::min(best, lead_cost(c, rest) + g[rest]);
    }
    g[r] = best;
  }

  KemenyResult out;
  out.disagreements = g[full];
  std::uint32_t r = full;
  while (r != 0) {
    const double tol = 1e-9 * std::max(1.0, std::abs(g[r]));
    for (std::uint32_t bits = r; bits != 0; bits &= bits - 1) {
      const auto c = static_cast<std::size_t>(std::countr_zero(bits));
      const std::uint32_t rest = r & ~(1u << c);
      if (lead_cost(c, rest) + g[rest] <= g[r] + tol) {
        out.order.push_back(c);
        r = rest;
        break;
      }
    }
  }
  return out;
}

KemenyResult local_search(const PairwiseCounts& counts) {
  const std::size_t k = counts.k;
  std::vector<double> net(k, 0.0);
  for (std::size_t u = 0; u < k; ++u)
    for (std::size_t v = 0; v < k; ++v) net[u] += counts(u, v) - counts(v, u);
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return net[a] > net[b]; });

  double cost = kemeny_disagreements(counts, order);
  const double eps = 1e-9;
  for (;;) {
    double best_delta = -eps * std::max(1.0, cost);
    std::size_t best_from = k, best_to = k;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t e = order[i];
      double delta = 0.0;
      for (std::size_t j = i + 1; j < k; ++j) {  // move e just after order[j]
        delta += counts(e, order[j]) - counts(order[j], e);
        if (delta < best_delta) best_delta = delta, best_from = i, best_to = j;
      }
      delta = 0.0;
      for (std::size_t j = i; j-- > 0;) {  // move e just before order[j]
        delta += counts(order[j], e) - counts(e, order[j]);
        if (delta < best_delta) best_delta = delta, best_from = i, best_to = j;
      }
    }
    if (best_from == k) break;
    const std::size_t e = order[best_from];
    order.erase(order.begin() + static_cast<std::ptrdiff_t>(best_from));
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(best_to), e);
    cost = kemeny_disagreements(counts, order);
  }
  return {std::move(order), cost, true};
}

}  // namespace

KemenyResult kemeny_ranking(const PairwiseCounts& counts) {
  if (counts.k == 0) throw InvalidArgument("kemeny_ranking: no candidates");
  return counts.k <= kKemenyExactLimit ? exact_dp(counts) : local_search(counts);
}

KemenyRanking kemeny_ranking(std::span<const std::vector<std::int32_t>> rankings) {
  std::map<std::int32_t, std::size_t> index;
  for (const auto& r : rankings)
    for (std::int32_t id : r) index.emplace(id, 0);
  if (index.empty()) throw InvalidArgument("kemeny_ranking: empty input");
  std::vector<std::int32_t> ids;
  for (auto& [id, slot] : index) {
    slot = ids.size();
    ids.push_back(id);
  }

  PairwiseCounts counts(ids.size());
  std::vector<char> seen(ids.size());
  for (const auto& r : rankings) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::size_t u = index.at(r[i]);
      if (seen[u]) throw InvalidArgument("kemeny_ranking: candidate " + std::to_string(r[i]) + " repeated in a ranking");
      seen[u] = 1;
      for (std::size_t j = i + 1; j < r.size(); ++j) counts(u, index.at(r[j])) += 1.0;
    }
  }

  const KemenyResult res = kemeny_ranking(counts);
  KemenyRanking out;
  out.disagreements = res.disagreements;
  out.heuristic = res.heuristic;
  for (std::size_t c : res.order) out.order.push_back(ids[c]);
  return out;
}

}  // namespace qrja
