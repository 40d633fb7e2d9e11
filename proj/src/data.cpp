#include "qrja/data.hpp"

#include <cmath>
#include <string>

#include "qrja/errors.hpp"

namespace qrja {

ContestSeries::ContestSeries(std::vector<std::string> names, std::vector<Contest> contests)
    : names_(std::move(names)), contests_(std::move(contests)) {
  std::vector<std::size_t> last_seen(names_.size(), static_cast<std::size_t>(-1));
  for (std::size_t c = 0; c < contests_.size(); ++c) {
    for (const ContestEntry& e : contests_[c].entries) {
      if (e.contestant < 0 || static_cast<std::size_t>(e.contestant) >= names_.size()) {
        throw InvalidArgument("contest " + contests_[c].key + ": contestant id out of range");
      }
      if (!std::isfinite(e.score)) {
        throw InvalidArgument("contest " + contests_[c].key + ": non-finite score for " + names_[e.contestant]);
      }
      if (last_seen[e.contestant] == c) {
        throw InvalidArgument("contest " + contests_[c].key + ": duplicate entry for " + names_[e.contestant]);
      }
      last_seen[e.contestant] = c;
    }
  }
}

ScoreTable::ScoreTable(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

ScoreTable ScoreTable::from_series(const ContestSeries& series, std::size_t num_contests) {
  if (num_contests > series.num_contests()) throw InvalidArgument("score table: not that many contests");
  ScoreTable t(series.num_contestants(), num_contests);
  for (std::size_t c = 0; c < num_contests; ++c) {
    for (const ContestEntry& e : series[c].entries) t.set(e.contestant, static_cast<std::int32_t>(c), e.score);
  }
  return t;
}

void ScoreTable::set(ContestantId row, std::int32_t col, double value) {
  if (row < 0 || static_cast<std::size_t>(row) >= rows_.size() || col < 0 ||
      static_cast<std::size_t>(col) >= cols_) {
    throw InvalidArgument("score table: cell out of range");
  }
  for (const auto& [c, v] : rows_[row]) {
    if (c == col) {
      throw InvalidArgument("score table: duplicate cell (" + std::to_string(row) + ", " + std::to_string(col) + ")");
    }
  }
  rows_[row].emplace_back(col, value);
  cells_.push_back({row, col, value});
}

std::vector<std::int32_t> ScoreTable::filled_columns() const {
  std::vector<char> filled(cols_, 0);
  for (const Cell& c : cells_) filled[c.col] = 1;
  std::vector<std::int32_t> out;
  for (std::size_t j = 0; j < cols_; ++j)
    if (filled[j]) out.push_back(static_cast<std::int32_t>(j));
  return out;
}

}  // namespace qrja
