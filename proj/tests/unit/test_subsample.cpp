#include <Eigen/Dense>
#include <cmath>
#include <numeric>

#include "doctest.h"
#include "qrja/errors.hpp"
#include "qrja/subsample.hpp"

using namespace qrja;

namespace {

Eigen::MatrixXd augmented(const Instance& inst, double p) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(inst.num_judgments()),
                                            static_cast<Eigen::Index>(inst.num_candidates()) + 1);
  for (std::size_t i = 0; i < inst.num_judgments(); ++i) {
    const auto& j = inst[i];
    const double s = std::pow(j.w, 1.0 / p);
    const auto r = static_cast<Eigen::Index>(i);
    A(r, j.a) = s;
    A(r, j.b) = -s;
    A(r, A.cols() - 1) = -s * j.y;
  }
  return A;
}

// Leverage scores from a thin SVD of the full augmented matrix (no column
// dropping, no Gram matrix): squared row norms of the left singular vectors.
std::vector<double> svd_leverage(const Eigen::MatrixXd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) rank += sv(k) > 1e-10 * sv(0) ? 1 : 0;
  std::vector<double> lev(static_cast<std::size_t>(A.rows()));
  for (Eigen::Index i = 0; i < A.rows(); ++i) lev[static_cast<std::size_t>(i)] = svd.matrixU().row(i).head(rank).squaredNorm();
  return lev;
}

Instance random_instance(CounterRng& rng, std::size_t n, std::size_t m) {
  std::vector<Judgment> js;
  for (std::size_t i = 0; i < m; ++i) {
    const auto a = static_cast<CandidateId>(rng.below(n));
    auto b = static_cast<CandidateId>(rng.below(n - 1));
    if (b >= a) ++b;
    js.push_back({a, b, rng.normal(0, 3), rng.uniform(0.5, 2)});
  }
  return Instance(n, std::move(js));
}

}  // namespace

TEST_CASE("single judgment: M copies of weight w/M") {
  const Instance one(2, {{0, 1, 4.0, 3.0}});
  CounterRng rng(1);
  const auto out = subsample(one, std::vector{1.0}, 6, rng);
  REQUIRE(out.num_judgments() == 6);
  double total = 0;
  for (const auto& j : out.judgments()) {
    CHECK(j.w == doctest::Approx(0.5));
    CHECK(j.y == 4.0);
    total += j.w;
  }
  CHECK(total == doctest::Approx(3.0));
}

TEST_CASE("copy weights follow w / (M q)") {
  const Instance four(3, {{0, 1, 1, 1}, {1, 2, 1, 1}, {0, 2, 1, 1}, {2, 0, 1, 1}});
  CounterRng rng(2);
  const auto uniform = subsample(four, std::vector(4, 1.0), 4, rng);
  for (const auto& j : uniform.judgments()) CHECK(j.w == doctest::Approx(1.0));

  const Instance two(2, {{0, 1, 1.0, 1.0}, {1, 0, 2.0, 1.0}});
  CounterRng rng2(3);
  const auto out = subsample(two, std::vector{3.0, 1.0}, 2, rng2);
  for (const auto& j : out.judgments()) {
    if (j.y == 1.0) CHECK(j.w == doctest::Approx(2.0 / 3.0));
    if (j.y == 2.0) CHECK(j.w == doctest::Approx(2.0));
  }
}

TEST_CASE("invalid sampling weights are rejected") {
  const Instance two(2, {{0, 1, 1.0, 1.0}, {1, 0, 2.0, 1.0}});
  CounterRng rng(4);
  CHECK_THROWS_AS((void)subsample(two, std::vector{1.0, 0.0}, 2, rng), InvalidArgument);
  CHECK_THROWS_AS((void)subsample(two, std::vector{1.0, -1.0}, 2, rng), InvalidArgument);
  CHECK_THROWS_AS((void)subsample(two, std::vector{1.0}, 2, rng), DimensionError);
  SubsampleOptions opts;
  opts.count = 0;
  CHECK_THROWS_AS((void)subsample(two, opts), InvalidArgument);
  opts.count = 2;
  opts.mode = SampleMode::kLewis;
  opts.lewis_p = 3.0;
  CHECK_THROWS_AS((void)subsample(two, opts), InvalidArgument);
}

TEST_CASE("subsampling is deterministic per seed") {
  CounterRng gen(5);
  const auto inst = random_instance(gen, 10, 200);
  for (auto mode : {SampleMode::kUniform, SampleMode::kLewis}) {
    SubsampleOptions opts{50, mode, 1.0, 20, 99};
    CHECK(subsample(inst, opts) == subsample(inst, opts));
    opts.seed = 100;
    const auto other = subsample(inst, opts);
    opts.seed = 99;
    CHECK_FALSE(subsample(inst, opts) == other);
  }
}

TEST_CASE("expected output weight per judgment is preserved") {
  CounterRng gen(6);
  const auto inst = random_instance(gen, 5, 8);
  std::vector<double> s{1, 2, 3, 4, 0.5, 1, 1, 7};
  const int runs = 20000;
  const std::size_t M = 3;
  std::vector<double> sum(8, 0.0), sumsq(8, 0.0);
  CounterRng rng(7);
  for (int r = 0; r < runs; ++r) {
    std::vector<double> got(8, 0.0);
    const auto drawn = subsample(inst, s, M, rng);
    for (const auto& j : drawn.judgments()) {
      for (std::size_t i = 0; i < 8; ++i) {
        if (inst[i] == Judgment{j.a, j.b, j.y, inst[i].w}) {
          got[i] += j.w;
          break;
        }
      }
    }
    for (std::size_t i = 0; i < 8; ++i) {
      sum[i] += got[i];
      sumsq[i] += got[i] * got[i];
    }
  }
  for (std::size_t i = 0; i < 8; ++i) {
    const double mean = sum[i] / runs;
    const double se = std::sqrt((sumsq[i] / runs - mean * mean) / runs);
    CHECK(std::abs(mean - inst[i].w) <= 4 * se);
  }
}

TEST_CASE("leverage scores (p = 2)") {
  SUBCASE("independent rows all get 1") {
    const Instance inst(3, {{0, 1, 1.0, 1.0}, {1, 2, 2.0, 1.0}, {0, 2, 0.5, 1.0}});
    const auto lw = lewis_weights(inst, 2.0);
    for (double v : lw.values) CHECK(v == doctest::Approx(1.0));
    CHECK(lw.rank == 3);
  }
  SUBCASE("duplicated row splits its direction") {
    const Instance inst(3, {{0, 1, 1.0, 1.0}, {0, 1, 1.0, 1.0}, {1, 2, 2.0, 1.0}, {0, 2, 0.5, 1.0}});
    const auto lw = lewis_weights(inst, 2.0);
    const auto oracle = svd_leverage(augmented(inst, 2.0));
    CHECK(lw.values[0] == doctest::Approx(0.5));
    CHECK(lw.values[1] == doctest::Approx(0.5));
    for (std::size_t i = 0; i < 4; ++i) CHECK(lw.values[i] == doctest::Approx(oracle[i]).epsilon(1e-9));
  }
  SUBCASE("random instances match the SVD oracle and sum to the rank") {
    CounterRng rng(8);
    for (int t = 0; t < 30; ++t) {
      const auto inst = random_instance(rng, 2 + rng.below(12), 5 + rng.below(60));
      const auto lw = lewis_weights(inst, 2.0);
      const auto oracle = svd_leverage(augmented(inst, 2.0));
      double total = 0;
      for (std::size_t i = 0; i < oracle.size(); ++i) {
        CHECK(lw.values[i] == doctest::Approx(oracle[i]).epsilon(1e-8).scale(1.0));
        CHECK(lw.values[i] > 0.0);
        CHECK(lw.values[i] <= 1.0);
        total += lw.values[i];
      }
      CHECK(total == doctest::Approx(static_cast<double>(lw.rank)).epsilon(1e-8));
      CHECK(total <= static_cast<double>(inst.num_candidates()) + 1 + 1e-6);
    }
  }
}

TEST_CASE("consistent judgments make the Gram matrix singular and get flagged") {
  // y = u_a - u_b exactly, so the y column lies in the span of the others.
  const Instance inst(3, {{0, 1, 1.0, 1.0}, {1, 2, 2.0, 1.0}, {0, 2, 3.0, 1.0}, {0, 1, 1.0, 1.0}});
  const auto lw = lewis_weights(inst, 2.0);
  CHECK(lw.regularized);
  const auto oracle = svd_leverage(augmented(inst, 2.0));
  for (std::size_t i = 0; i < 4; ++i) CHECK(lw.values[i] == doctest::Approx(oracle[i]).epsilon(1e-5));
}

TEST_CASE("Lewis weights for p in [1, 2) satisfy the fixed-point equation") {
  CounterRng rng(9);
  for (double p : {1.0, 1.5}) {
    for (int t = 0; t < 10; ++t) {
      const auto inst = random_instance(rng, 6, 40);
      const auto lw = lewis_weights(inst, p, 20);
      const Eigen::MatrixXd A = augmented(inst, p);
      Eigen::VectorXd s(A.rows());
      for (Eigen::Index i = 0; i < A.rows(); ++i) s(i) = lw.values[static_cast<std::size_t>(i)];
      const Eigen::MatrixXd gram = A.transpose() * s.array().pow(1.0 - 2.0 / p).matrix().asDiagonal() * A;
      const Eigen::MatrixXd pinv = gram.completeOrthogonalDecomposition().pseudoInverse();
      double sum = 0;
      for (Eigen::Index i = 0; i < A.rows(); ++i) {
        const double lhs = A.row(i) * pinv * A.row(i).transpose();
        CHECK(lhs == doctest::Approx(std::pow(s(i), 2.0 / p)).epsilon(1e-4));
        sum += s(i);
      }
      CHECK(sum <= static_cast<double>(inst.num_candidates()) + 1 + 1e-6);
    }
  }
  CHECK_THROWS_AS((void)lewis_weights(Instance(2, {{0, 1, 1, 1}}), 2.5), InvalidArgument);
  CHECK_THROWS_AS((void)lewis_weights(Instance(2, {}), 2.0), InvalidArgument);
}

TEST_CASE("subsample_count floors alpha * m") {
  CHECK(subsample_count(0.4, 10) == 4);
  CHECK(subsample_count(0.35, 10) == 3);
  CHECK(subsample_count(1.0, 7) == 7);
  CHECK(subsample_count(0.01, 7) == 1);
  CHECK_THROWS_AS((void)subsample_count(0.0, 7), InvalidArgument);
}
