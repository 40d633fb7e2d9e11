#include <algorithm>
#include <numeric>

#include "qrja/baselines.hpp"
#include "qrja/errors.hpp"

namespace qrja {

PartialRatings mean_ratings(const ScoreTable& table) {
  PartialRatings out(table.rows());
  for (std::size_t i = 0; i < table.rows(); ++i) {
    const auto& row = table.row(static_cast<ContestantId>(i));
    if (row.empty()) continue;
    double sum = 0.0;
    for (const auto& [col, value] : row) sum += value;
    out[i] = sum / static_cast<double>(row.size());
  }
  return out;
}

PartialRatings median_ratings(const ScoreTable& table) {
  PartialRatings out(table.rows());
  std::vector<double> values;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    const auto& row = table.row(static_cast<ContestantId>(i));
    if (row.empty()) continue;
    values.clear();
    for (const auto& [col, value] : row) values.push_back(value);
    const std::size_t mid = (values.size() - 1) / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    out[i] = values[mid];
  }
  return out;
}

std::vector<double> borda_points(std::span<const double> scores) {
  const std::size_t n = scores.size();
  std::vector<double> points(n, 0.0);
  if (n < 2) return points;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  const double denom = static_cast<double>(n - 1);
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && scores[order[end]] == scores[order[start]]) ++end;
    // positions start+1 .. end (1-based) share their average
    const double position = 0.5 * static_cast<double>(start + 1 + end);
    const double value = 1.0 - 2.0 * (position - 1.0) / denom;
    for (std::size_t k = start; k < end; ++k) points[order[k]] = value;
    start = end;
  }
  return points;
}

PartialRatings borda_ratings(const ContestSeries& series, std::size_t num_contests) {
  if (num_contests > series.num_contests()) throw InvalidArgument("borda_ratings: not that many contests");
  PartialRatings out(series.num_contestants());
  std::vector<double> scores;
  for (std::size_t c = 0; c < num_contests; ++c) {
    const auto& entries = series[c].entries;
    scores.clear();
    for (const ContestEntry& e : entries) scores.push_back(e.score);
    const auto points = borda_points(scores);
    for (std::size_t k = 0; k < entries.size(); ++k) {
      auto& slot = out[entries[k].contestant];
      slot = slot.value_or(0.0) + points[k];
    }
  }
  return out;
}

}  // namespace qrja
