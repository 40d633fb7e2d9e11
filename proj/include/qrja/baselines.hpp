#pragma once

// Comparison methods for contest prediction: per-contestant mean and median,
// normalized Borda counts, Kemeny-Young rank aggregation, and matrix
// factorization of the contestant x contest table.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qrja/data.hpp"

namespace qrja {

[[nodiscard]] PartialRatings mean_ratings(const ScoreTable& table);

/// Lower median for even counts.
[[nodiscard]] PartialRatings median_ratings(const ScoreTable& table);

/// Points 1 - 2(i-1)/(n_j-1) for position i in a contest of n_j entrants,
/// ranked by descending score; tied scores share the average of the positions
/// they cover, and a lone entrant gets 0.
[[nodiscard]] std::vector<double> borda_points(std::span<const double> scores);

/// Sum of Borda points over the first `num_contests` contests.
[[nodiscard]] PartialRatings borda_ratings(const ContestSeries& series, std::size_t num_contests);

/// Pairwise preference counts over k items: `above[u * k + v]` is how many
/// inputs place u strictly above v.
struct PairwiseCounts {
  std::size_t k = 0;
  std::vector<double> above;

  explicit PairwiseCounts(std::size_t k_) : k(k_), above(k_ * k_, 0.0) {}
  [[nodiscard]] double operator()(std::size_t u, std::size_t v) const { return above[u * k + v]; }
  double& operator()(std::size_t u, std::size_t v) { return above[u * k + v]; }
};

/// Total number of input pairs an order contradicts.
[[nodiscard]] double kemeny_disagreements(const PairwiseCounts& counts, std::span<const std::size_t> order);

struct KemenyResult {
  std::vector<std::size_t> order;  // best first
  double disagreements = 0.0;
  bool heuristic = false;          // true when local search replaced the exact DP
};

inline constexpr std::size_t kKemenyExactLimit = 16;

/// Exact subset DP for k <= 16, returning the lexicographically smallest
/// optimal order; Borda-seeded local search (adjacent swaps and single-item
/// moves) beyond that. Throws InvalidArgument for k = 0.
[[nodiscard]] KemenyResult kemeny_ranking(const PairwiseCounts& counts);

struct KemenyRanking {
  std::vector<std::int32_t> order;
  double disagreements = 0.0;
  bool heuristic = false;
};

/// Rankings are best-first lists of candidate ids; the candidate set is the
/// union of ids that occur, and `order` holds ids. Throws on empty input or
/// an id repeated within one ranking.
[[nodiscard]] KemenyRanking kemeny_ranking(std::span<const std::vector<std::int32_t>> rankings);

struct MfOptions {
  int rank = 1;           // ignored when additive
  bool additive = false;  // A_ij ~ x_i + y_j
  double learning_rate = 0.01;
  std::size_t epochs = 1000;
  double init_value = 0.1;

  void validate() const;
};

/// Fitted factors. Low rank: u is rows x rank, v is cols x rank (row-major).
/// Additive: u holds x (rows), v holds y (cols).
struct MfModel {
  MfOptions options;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> u;
  std::vector<double> v;
  std::vector<double> loss_trace;  // sum of squared errors before training and after every epoch

  [[nodiscard]] double predict(std::size_t i, std::size_t j) const;
};

/// Full-batch gradient descent on the sum of squared errors over observed
/// entries. Initialization: additive zeros; rank 1 every entry init_value;
/// rank >= 2 init_value scaled by a fixed pseudo-random factor in [0.5, 1.5]
/// per entry so the factor columns are not identical. Throws DivergenceError
/// when the loss exceeds 1e12 or stops being finite.
[[nodiscard]] MfModel mf_fit(const ScoreTable& table, const MfOptions& opts);

/// Prediction for a fresh column: the mean of the row's predictions over all
/// filled training columns. Rows without observations stay empty.
[[nodiscard]] PartialRatings mf_predict_new_contest(const MfModel& model, const ScoreTable& table);

}  // namespace qrja
