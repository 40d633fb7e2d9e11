#pragma once

// Contest results: a chronological series of contests, each listing signed
// scores (higher is better) for the contestants who took part, and the
// contestant x contest score table the baselines consume.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace qrja {

using ContestantId = std::int32_t;

/// Per-contestant value; nullopt for contestants a method has nothing on.
using PartialRatings = std::vector<std::optional<double>>;

struct ContestEntry {
  ContestantId contestant = 0;
  double score = 0.0;

  friend bool operator==(const ContestEntry&, const ContestEntry&) = default;
};

struct Contest {
  std::string key;
  std::vector<ContestEntry> entries;

  friend bool operator==(const Contest&, const Contest&) = default;
};

/// Contests in chronological order. Validated on construction: contestant
/// ids index `names`, each contestant appears at most once per contest, and
/// scores are finite.
class ContestSeries {
 public:
  ContestSeries() = default;
  ContestSeries(std::vector<std::string> names, std::vector<Contest> contests);

  [[nodiscard]] std::size_t num_contestants() const noexcept { return names_.size(); }
  [[nodiscard]] std::size_t num_contests() const noexcept { return contests_.size(); }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
  [[nodiscard]] const std::vector<Contest>& contests() const noexcept { return contests_; }
  [[nodiscard]] const Contest& operator[](std::size_t i) const { return contests_[i]; }

  friend bool operator==(const ContestSeries&, const ContestSeries&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Contest> contests_;
};

/// Sparse contestant x contest table with at most one entry per cell.
class ScoreTable {
 public:
  struct Cell {
    ContestantId row = 0;
    std::int32_t col = 0;
    double value = 0.0;
  };

  ScoreTable(std::size_t rows, std::size_t cols);

  /// Rows = contestants of `series`, columns = its first `num_contests` contests.
  static ScoreTable from_series(const ContestSeries& series, std::size_t num_contests);

  /// Throws InvalidArgument for out-of-range or already-filled cells.
  void set(ContestantId row, std::int32_t col, double value);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_.size(); }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] std::size_t size() const noexcept { return cells_.size(); }
  [[nodiscard]] bool empty() const noexcept { return cells_.empty(); }
  [[nodiscard]] const std::vector<Cell>& cells() const noexcept { return cells_; }
  /// (column, value) pairs of one row in insertion order.
  [[nodiscard]] const std::vector<std::pair<std::int32_t, double>>& row(ContestantId r) const { return rows_[r]; }
  /// Columns holding at least one entry.
  [[nodiscard]] std::vector<std::int32_t> filled_columns() const;

 private:
  std::size_t cols_ = 0;
  std::vector<Cell> cells_;
  std::vector<std::vector<std::pair<std::int32_t, double>>> rows_;
};

}  // namespace qrja
