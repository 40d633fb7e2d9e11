#include "qrja/subsample.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "component_split.hpp"
#include "qrja/errors.hpp"

namespace qrja {

void SubsampleOptions::validate() const {
  if (count < 1) throw InvalidArgument("subsample count M must be >= 1");
  if (mode == SampleMode::kLewis && !(lewis_p >= 1.0 && lewis_p <= 2.0)) {
    throw InvalidArgument("Lewis-weight sampling needs p in [1, 2]");
  }
  if (lewis_iterations < 1) throw InvalidArgument("lewis_iterations must be >= 1");
}

std::size_t subsample_count(double alpha, std::size_t num_judgments) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("subsample rate alpha must be > 0");
  const auto m = static_cast<std::size_t>(std::floor(alpha * static_cast<double>(num_judgments)));
  return std::max<std::size_t>(m, 1);
}

Instance subsample(const Instance& instance, std::span<const double> s, std::size_t count, CounterRng& rng) {
  const std::size_t m = instance.num_judgments();
  if (s.size() != m) throw DimensionError("subsample: expected " + std::to_string(m) + " sampling weights");
  if (m == 0) throw InvalidArgument("subsample: instance has no judgments");
  if (count < 1) throw InvalidArgument("subsample count M must be >= 1");

  std::vector<double> cdf(m);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(s[i] > 0.0) || !std::isfinite(s[i])) {
      throw InvalidArgument("subsample: sampling weight " + std::to_string(i) + " must be finite and > 0");
    }
    total += s[i];
    cdf[i] = total;
  }

  std::vector<Judgment> drawn;
  drawn.reserve(count);
  const double scale = static_cast<double>(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double u = rng.uniform01() * total;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const auto x = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(m) - 1));
    const double q = s[x] / total;
    Judgment j = instance[x];
    j.w = j.w / (scale * q);
    drawn.push_back(j);
  }
  return Instance(instance.num_candidates(), std::move(drawn));
}

Instance subsample(const Instance& instance, const SubsampleOptions& opts) {
  opts.validate();
  std::vector<double> s;
  if (opts.mode == SampleMode::kLewis) {
    s = lewis_weights(instance, opts.lewis_p, opts.lewis_iterations).values;
  } else {
    s.assign(instance.num_judgments(), 1.0);
  }
  CounterRng rng(opts.seed);
  return subsample(instance, s, opts.count, rng);
}

namespace {

// Sparse row of the augmented matrix after dropping one candidate column per
// component. Dropping it leaves the column space unchanged (the columns of a
// component sum to zero), and Lewis weights only depend on the column space.
struct SparseRow {
  int cols[3];
  double vals[3];
  int nnz = 0;
};

}  // namespace

LewisWeights lewis_weights(const Instance& instance, double p, std::size_t iterations) {
  if (!(p >= 1.0 && p <= 2.0)) throw InvalidArgument("Lewis weights are computed for p in [1, 2]");
  if (instance.empty()) throw InvalidArgument("Lewis weights need a nonempty instance");
  if (iterations < 1) throw InvalidArgument("Lewis iterations must be >= 1");

  const auto split = detail::split_components(instance);
  std::vector<int> column(instance.num_candidates(), -1);
  int d = 0;
  for (const auto& group : split.components.groups) {
    for (std::size_t i = 1; i < group.size(); ++i) column[group[i]] = d++;
  }
  const int y_col = d++;

  const std::size_t m = instance.num_judgments();
  std::vector<SparseRow> rows(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Judgment& j = instance[i];
    const double scale = std::pow(j.w, 1.0 / p);
    SparseRow& row = rows[i];
    if (column[j.a] >= 0) {
      row.cols[row.nnz] = column[j.a];
      row.vals[row.nnz++] = scale;
    }
    if (column[j.b] >= 0) {
      row.cols[row.nnz] = column[j.b];
      row.vals[row.nnz++] = -scale;
    }
    if (j.y != 0.0) {
      row.cols[row.nnz] = y_col;
      row.vals[row.nnz++] = -scale * j.y;
    }
  }

  LewisWeights out;
  out.values.assign(m, 1.0);
  const double exponent = 1.0 - 2.0 / p;
  Eigen::MatrixXd gram(d, d);
  for (std::size_t it = 0; it < iterations; ++it) {
    gram.setZero();
    for (std::size_t i = 0; i < m; ++i) {
      const SparseRow& row = rows[i];
      const double s = exponent == 0.0 ? 1.0 : std::pow(out.values[i], exponent);
      for (int u = 0; u < row.nnz; ++u) {
        for (int v = 0; v < row.nnz; ++v) gram(row.cols[u], row.cols[v]) += s * row.vals[u] * row.vals[v];
      }
    }

    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    const auto diag = ldlt.vectorD();
    const double largest = diag.cwiseAbs().maxCoeff();
    std::size_t rank = 0;
    for (Eigen::Index k = 0; k < diag.size(); ++k) rank += diag(k) > 1e-12 * largest ? 1 : 0;
    out.rank = rank;
    Eigen::MatrixXd inverse;
    if (ldlt.info() != Eigen::Success || rank < static_cast<std::size_t>(d)) {
      out.regularized = true;
      const double ridge = 1e-12 * gram.trace();
      gram.diagonal().array() += ridge;
      inverse = gram.llt().solve(Eigen::MatrixXd::Identity(d, d));
    } else {
      inverse = ldlt.solve(Eigen::MatrixXd::Identity(d, d));
    }

    for (std::size_t i = 0; i < m; ++i) {
      const SparseRow& row = rows[i];
      double quad = 0.0;
      for (int u = 0; u < row.nnz; ++u) {
        for (int v = 0; v < row.nnz; ++v) quad += row.vals[u] * inverse(row.cols[u], row.cols[v]) * row.vals[v];
      }
      const double next = std::pow(std::max(quad, 0.0), p / 2.0);
      out.values[i] = std::clamp(next, 1e-300, 1.0);
    }
  }
  return out;
}

}  // namespace qrja
