#include <cmath>
#include <string>

#include "qrja/baselines.hpp"
#include "qrja/errors.hpp"
#include "qrja/random.hpp"

namespace qrja {

void MfOptions::validate() const {
  if (!additive && rank < 1) throw InvalidArgument("MF rank must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) throw InvalidArgument("MF learning rate must be > 0");
  if (epochs < 1) throw InvalidArgument("MF epochs must be >= 1");
  if (!std::isfinite(init_value)) throw InvalidArgument("MF init value must be finite");
}

double MfModel::predict(std::size_t i, std::size_t j) const {
  if (options.additive) return u[i] + v[j];
  const auto r = static_cast<std::size_t>(options.rank);
  double s = 0.0;
  for (std::size_t k = 0; k < r; ++k) s += u[i * r + k] * v[j * r + k];
  return s;
}

namespace {

constexpr double kDivergence = 1e12;

double squared_error(const MfModel& m, const ScoreTable& table, std::vector<double>* residual) {
  double loss = 0.0;
  const auto& cells = table.cells();
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const double e = m.predict(cells[c].row, cells[c].col) - cells[c].value;
    if (residual) (*residual)[c] = e;
    loss += e * e;
  }
  return loss;
}

}  // namespace

MfModel mf_fit(const ScoreTable& table, const MfOptions& opts) {
  opts.validate();
  if (table.empty()) throw InvalidArgument("mf_fit: table has no entries");

  MfModel m;
  m.options = opts;
  m.rows = table.rows();
  m.cols = table.cols();
  const std::size_t r = opts.additive ? 1 : static_cast<std::size_t>(opts.rank);
  if (opts.additive) {
    m.u.assign(m.rows, 0.0);
    m.v.assign(m.cols, 0.0);
  } else {
    m.u.assign(m.rows * r, opts.init_value);
    m.v.assign(m.cols * r, opts.init_value);
    if (r >= 2) {
      CounterRng rng(0x6d66696e6974ULL);
      for (double& x : m.u) x *= rng.uniform(0.5, 1.5);
      for (double& x : m.v) x *= rng.uniform(0.5, 1.5);
    }
  }

  const auto& cells = table.cells();
  std::vector<double> residual(cells.size());
  std::vector<double> gu(m.u.size()), gv(m.v.size());
  double loss = squared_error(m, table, &residual);
  m.loss_trace.reserve(opts.epochs + 1);
  m.loss_trace.push_back(loss);

  for (std::size_t epoch = 0; epoch < opts.epochs; ++epoch) {
    std::fill(gu.begin(), gu.end(), 0.0);
    std::fill(gv.begin(), gv.end(), 0.0);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const auto i = static_cast<std::size_t>(cells[c].row);
      const auto j = static_cast<std::size_t>(cells[c].col);
      const double e2 = 2.0 * residual[c];
      if (opts.additive) {
        gu[i] += e2;
        gv[j] += e2;
      } else {
        for (std::size_t k = 0; k < r; ++k) {
          gu[i * r + k] += e2 * m.v[j * r + k];
          gv[j * r + k] += e2 * m.u[i * r + k];
        }
      }
    }
    for (std::size_t k = 0; k < m.u.size(); ++k) m.u[k] -= opts.learning_rate * gu[k];
    for (std::size_t k = 0; k < m.v.size(); ++k) m.v[k] -= opts.learning_rate * gv[k];

    loss = squared_error(m, table, &residual);
    if (!std::isfinite(loss) || loss > kDivergence) {
      throw DivergenceError("matrix factorization diverged at epoch " + std::to_string(epoch + 1) +
                            "; use a smaller learning rate");
    }
    m.loss_trace.push_back(loss);
  }
  return m;
}

PartialRatings mf_predict_new_contest(const MfModel& model, const ScoreTable& table) {
  if (table.rows() != model.rows || table.cols() != model.cols) {
    throw DimensionError("mf_predict_new_contest: table shape differs from the fitted model");
  }
  const auto columns = table.filled_columns();
  PartialRatings out(table.rows());
  if (columns.empty()) return out;
  for (std::size_t i = 0; i < table.rows(); ++i) {
    if (table.row(static_cast<ContestantId>(i)).empty()) continue;
    double s = 0.0;
    for (std::int32_t j : columns) s += model.predict(i, static_cast<std::size_t>(j));
    out[i] = s / static_cast<double>(columns.size());
  }
  return out;
}

}  // namespace qrja
