#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "qrja/baselines.hpp"
#include "qrja/errors.hpp"
#include "qrja/random.hpp"

using namespace qrja;

namespace {

ScoreTable one_row(std::vector<double> values) {
  ScoreTable t(1, values.size());
  for (std::size_t j = 0; j < values.size(); ++j) t.set(0, static_cast<std::int32_t>(j), values[j]);
  return t;
}

// Exhaustive Kemeny over all k! orders, keeping the first (lexicographically
// smallest) optimum.
std::pair<std::vector<std::size_t>, double> kemeny_exhaustive(const PairwiseCounts& counts) {
  std::vector<std::size_t> order(counts.k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<std::size_t> best;
  double best_cost = 1e300;
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = i + 1; j < order.size(); ++j) cost += counts.above[order[j] * counts.k + order[i]];
    if (cost < best_cost) best_cost = cost, best = order;
  } while (std::next_permutation(order.begin(), order.end()));
  return {best, best_cost};
}

PairwiseCounts random_profile(CounterRng& rng, std::size_t k, std::size_t voters) {
  PairwiseCounts c(k);
  std::vector<std::size_t> r(k);
  for (std::size_t v = 0; v < voters; ++v) {
    std::iota(r.begin(), r.end(), std::size_t{0});
    for (std::size_t i = k; i > 1; --i) std::swap(r[i - 1], r[rng.below(i)]);
    const std::size_t len = 1 + rng.below(k);  // partial rankings over a prefix
    for (std::size_t i = 0; i < len; ++i)
      for (std::size_t j = i + 1; j < len; ++j) c(r[i], r[j]) += 1.0;
  }
  return c;
}

}  // namespace

TEST_CASE("mean and median fixtures") {
  CHECK(*mean_ratings(one_row({-251, -258, -241}))[0] == -250.0);
  CHECK(*mean_ratings(one_row({5}))[0] == 5.0);
  CHECK(*median_ratings(one_row({1, 2, 100}))[0] == 2.0);
  CHECK(*median_ratings(one_row({3, 5}))[0] == 3.0);
  CHECK(*median_ratings(one_row({5, 3}))[0] == 3.0);
  CHECK(*median_ratings(one_row({7}))[0] == 7.0);

  ScoreTable t(2, 1);
  t.set(1, 0, 4.0);
  CHECK_FALSE(mean_ratings(t)[0].has_value());
  CHECK_FALSE(median_ratings(t)[0].has_value());
  CHECK_THROWS_AS(t.set(1, 0, 5.0), InvalidArgument);
}

TEST_CASE("mean and median are invariant to contest order") {
  CounterRng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(1 + rng.below(9));
    for (double& x : v) x = std::round(rng.normal(0, 10));
    auto w = v;
    std::reverse(w.begin(), w.end());
    std::rotate(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(rng.below(w.size())), w.end());
    CHECK(*mean_ratings(one_row(v))[0] == doctest::Approx(*mean_ratings(one_row(w))[0]));
    CHECK(*median_ratings(one_row(v))[0] == *median_ratings(one_row(w))[0]);
  }
}

TEST_CASE("borda points") {
  CHECK(borda_points(std::vector<double>{30, 20, 10}) == std::vector<double>{1, 0, -1});
  CHECK(borda_points(std::vector<double>{10, 20, 30}) == std::vector<double>{-1, 0, 1});
  CHECK(borda_points(std::vector<double>{1, 2}) == std::vector<double>{-1, 1});
  CHECK(borda_points(std::vector<double>{9}) == std::vector<double>{0});
  // a tie over positions 1 and 2 shares 1.5
  CHECK(borda_points(std::vector<double>{5, 5, 1}) == std::vector<double>{0.5, 0.5, -1});

  CounterRng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(12);
    std::vector<double> s(n);
    std::iota(s.begin(), s.end(), 0.0);
    for (std::size_t i = n; i > 1; --i) std::swap(s[i - 1], s[rng.below(i)]);
    const auto pts = borda_points(s);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double rank = static_cast<double>(n) - s[k];  // 1-based, highest score first
      CHECK(pts[k] == 1.0 - 2.0 * (rank - 1.0) / static_cast<double>(n - 1));
      CHECK(pts[k] >= -1.0);
      CHECK(pts[k] <= 1.0);
      sum += pts[k];
    }
    CHECK(sum == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("borda totals are summed over contests") {
  ContestSeries s({"a", "b", "c"}, {{"1", {{0, 3}, {1, 2}, {2, 1}}}, {"2", {{0, 9}, {1, 5}, {2, 4}}}, {"3", {{2, 7}}}});
  const auto r = borda_ratings(s, 3);
  CHECK(*r[0] == 2.0);
  CHECK(*r[1] == 0.0);
  CHECK(*r[2] == -2.0);
  CHECK_FALSE(borda_ratings(s, 0)[0].has_value());
}

TEST_CASE("kemeny fixtures") {
  const std::vector<std::vector<std::int32_t>> single{{2, 0, 1}};
  auto k = kemeny_ranking(single);
  CHECK(k.order == std::vector<std::int32_t>{2, 0, 1});
  CHECK(k.disagreements == 0.0);
  CHECK_FALSE(k.heuristic);

  // a=0, b=1, c=2: abc, abc, bac
  const std::vector<std::vector<std::int32_t>> three{{0, 1, 2}, {0, 1, 2}, {1, 0, 2}};
  k = kemeny_ranking(three);
  CHECK(k.order == std::vector<std::int32_t>{0, 1, 2});
  CHECK(k.disagreements == 1.0);

  // a>b, b>c, c>a each twice
  const std::vector<std::vector<std::int32_t>> cycle{{0, 1}, {0, 1}, {1, 2}, {1, 2}, {2, 0}, {2, 0}};
  k = kemeny_ranking(cycle);
  CHECK(k.disagreements == 2.0);
  CHECK(k.order == std::vector<std::int32_t>{0, 1, 2});

  const std::vector<std::vector<std::int32_t>> none;
  CHECK_THROWS_AS((void)kemeny_ranking(none), InvalidArgument);
  const std::vector<std::vector<std::int32_t>> repeated{{1, 1}};
  CHECK_THROWS_AS((void)kemeny_ranking(repeated), InvalidArgument);
}

TEST_CASE("kemeny DP matches exhaustive enumeration for k <= 7") {
  CounterRng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + rng.below(7);
    const auto counts = random_profile(rng, k, 1 + rng.below(6));
    const auto dp = kemeny_ranking(counts);
    const auto [order, cost] = kemeny_exhaustive(counts);
    CHECK(dp.disagreements == cost);
    CHECK(dp.order == order);
    CHECK(kemeny_disagreements(counts, dp.order) == cost);
  }
}

TEST_CASE("kemeny local search for k > 16") {
  CounterRng rng(5);
  const auto counts = random_profile(rng, 20, 15);
  const auto res = kemeny_ranking(counts);
  CHECK(res.heuristic);
  CHECK(res.order.size() == 20);
  CHECK(kemeny_disagreements(counts, res.order) == res.disagreements);

  // no single move improves the result
  for (std::size_t i = 0; i < 20; ++i) {
    for (std::size_t j = 0; j < 20; ++j) {
      auto o = res.order;
      const auto e = o[i];
      o.erase(o.begin() + static_cast<std::ptrdiff_t>(i));
      o.insert(o.begin() + static_cast<std::ptrdiff_t>(j), e);
      CHECK(kemeny_disagreements(counts, o) >= res.disagreements);
    }
  }

  // consistent input: local search finds the zero-disagreement order
  PairwiseCounts chain(18);
  for (std::size_t u = 0; u < 18; ++u)
    for (std::size_t v = u + 1; v < 18; ++v) chain(17 - u, 17 - v) = 1.0;
  const auto c = kemeny_ranking(chain);
  CHECK(c.disagreements == 0.0);
  CHECK(c.order.front() == 17);
}

TEST_CASE("kemeny DP beats input orders and the Borda order") {
  CounterRng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 3 + rng.below(8);
    const auto counts = random_profile(rng, k, 5);
    const auto dp = kemeny_ranking(counts);
    std::vector<std::size_t> id(k);
    std::iota(id.begin(), id.end(), std::size_t{0});
    CHECK(dp.disagreements <= kemeny_disagreements(counts, id));
    std::reverse(id.begin(), id.end());
    CHECK(dp.disagreements <= kemeny_disagreements(counts, id));
  }
}

TEST_CASE("mf exact-fit fixtures") {
  ScoreTable a(2, 2);  // u = (1, 2), v = (1, 1)
  a.set(0, 0, 1);
  a.set(0, 1, 1);
  a.set(1, 0, 2);
  a.set(1, 1, 2);
  MfOptions o;
  o.learning_rate = 0.05;
  const auto m = mf_fit(a, o);
  CHECK(m.loss_trace.size() == o.epochs + 1);
  CHECK(m.loss_trace.back() <= 1e-6);
  for (std::size_t e = 1; e < m.loss_trace.size(); ++e) CHECK(m.loss_trace[e] <= m.loss_trace[e - 1] + 1e-15);
  const auto pred = mf_predict_new_contest(m, a);
  CHECK(*pred[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(*pred[1] == doctest::Approx(2.0).epsilon(1e-3));

  ScoreTable add(3, 2);  // A_ij = i + j, rows i = 1..3, columns j = 1..2
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) add.set(i, j, (i + 1) + (j + 1));
  MfOptions ao;
  ao.additive = true;
  const auto am = mf_fit(add, ao);
  CHECK(am.loss_trace.back() <= 1e-9);
  const auto ap = mf_predict_new_contest(am, add);
  for (int i = 0; i < 3; ++i) CHECK(*ap[i] == doctest::Approx(i + 1 + 1.5).epsilon(1e-6));

  ScoreTable one(3, 1);
  one.set(1, 0, 4.0);
  const auto om = mf_fit(one, MfOptions{});
  CHECK(om.loss_trace.back() <= 1e-9);
  const auto op = mf_predict_new_contest(om, one);
  CHECK_FALSE(op[0].has_value());
  CHECK(*op[1] == doctest::Approx(4.0).epsilon(1e-4));
}

TEST_CASE("mf rank 2 fits a rank-2 table and is monitored against rank 1") {
  ScoreTable t(3, 3);
  const double u[3][2] = {{1, 0}, {0, 1}, {1, 1}};
  const double v[3][2] = {{1, 2}, {2, 1}, {1, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t.set(i, j, u[i][0] * v[j][0] + u[i][1] * v[j][1]);
  MfOptions o;
  o.learning_rate = 0.02;
  o.epochs = 5000;
  const auto r1 = mf_fit(t, o);
  o.rank = 2;
  const auto r2 = mf_fit(t, o);
  CHECK(r2.loss_trace.back() <= r1.loss_trace.back());
  CHECK(r2.loss_trace.back() <= 1e-6);
}

TEST_CASE("mf guards") {
  ScoreTable t(1, 1);
  t.set(0, 0, 1e3);
  MfOptions o;
  o.learning_rate = 10.0;
  CHECK_THROWS_AS((void)mf_fit(t, o), DivergenceError);
  CHECK_THROWS_AS((void)mf_fit(ScoreTable(1, 1), MfOptions{}), InvalidArgument);
  o = MfOptions{};
  o.rank = 0;
  CHECK_THROWS_AS(o.validate(), InvalidArgument);
  o = MfOptions{};
  o.epochs = 0;
  CHECK_THROWS_AS(o.validate(), InvalidArgument);
}
