#include <cmath>
#include <sstream>

#include "doctest.h"
#include "qrja/errors.hpp"
#include "qrja/hardness.hpp"

using namespace qrja;

namespace {

std::vector<MaxCutGraph> family() {
  std::vector<MaxCutGraph> gs;
  for (int n = 2; n <= 6; ++n) gs.push_back(complete_graph(n));
  for (int n = 3; n <= 6; ++n) gs.push_back(path_graph(n));
  for (int n = 3; n <= 6; ++n) gs.push_back(cycle_graph(n));
  CounterRng rng(4242);
  for (int i = 0; i < 50; ++i) {
    CounterRng child = rng.split(static_cast<std::uint64_t>(i));
    gs.push_back(random_graph(1 + static_cast<int>(child.below(6)), 0.5, child));
  }
  return gs;
}

}  // namespace

TEST_CASE("reduction parameters and judgment counts") {
  auto r = build_reduction(complete_graph(3), 0.5);
  CHECK(r.w2 == 13.0);
  CHECK(r.w1 == 40.0);
  CHECK(r.instance.num_judgments() == 13);
  CHECK(r.instance.num_candidates() == 5);
  CHECK(r.source == 3);
  CHECK(r.sink == 4);
  CHECK(r.instance[0] == Judgment{4, 3, 1.0, 40.0});

  r = build_reduction(path_graph(2), 0.5);
  CHECK(r.w2 == 9.0);
  CHECK(r.w1 == 19.0);
  CHECK(r.instance.num_judgments() == 7);

  r = build_reduction(MaxCutGraph(1, {}), 0.5);
  CHECK(r.instance.num_judgments() == 3);
  CHECK(r.instance[1] == Judgment{1, 0, 0.0, r.w2});
  CHECK(r.instance[2] == Judgment{2, 0, 0.0, r.w2});

  CHECK_THROWS_AS((void)build_reduction(complete_graph(3), 1.0), UnsupportedExponent);
  CHECK_THROWS_AS((void)build_reduction(complete_graph(3), 1.5), UnsupportedExponent);
  CHECK_THROWS_AS((void)build_reduction(MaxCutGraph(0, {}), 0.5), InvalidArgument);
}

TEST_CASE("graph validation and edge lists") {
  CHECK_THROWS_AS(MaxCutGraph(3, {{0, 0}}), InvalidArgument);
  CHECK_THROWS_AS(MaxCutGraph(3, {{0, 1}, {1, 0}}), InvalidArgument);
  CHECK_THROWS_AS(MaxCutGraph(3, {{0, 3}}), InvalidArgument);

  std::istringstream in("# triangle\n3\n0 1\n1 2\n\n0 2\n");
  const auto g = read_edge_list(in);
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 3);
  std::ostringstream out;
  write_edge_list(out, g);
  CHECK(out.str() == "3\n0 1\n1 2\n0 2\n");

  std::istringstream bad("3\n0 1 x\n");
  CHECK_THROWS_AS((void)read_edge_list(bad), ParseError);
  std::istringstream dup("3\n0 1\n1 0\n");
  CHECK_THROWS_AS((void)read_edge_list(dup), ParseError);
  std::istringstream empty("");
  CHECK_THROWS_AS((void)read_edge_list(empty), ParseError);
}

TEST_CASE("brute-force max cut") {
  CHECK(bruteforce_maxcut(complete_graph(3)) == 2);
  CHECK(bruteforce_maxcut(complete_graph(4)) == 4);
  CHECK(bruteforce_maxcut(path_graph(3)) == 2);
  CHECK(bruteforce_maxcut(cycle_graph(5)) == 4);
  CHECK(bruteforce_maxcut(MaxCutGraph(1, {})) == 0);
  CHECK_THROWS_AS((void)bruteforce_maxcut(MaxCutGraph(21, {})), SizeError);
}

TEST_CASE("extract_cut and the loss identity") {
  auto r = build_reduction(complete_graph(3), 0.5);
  std::vector<double> x{0, 0, 1, 0, 1};
  auto cut = extract_cut(x, r);
  CHECK(cut.size == 2);
  CHECK(cut.zero_side == std::vector<int>{0, 1});
  CHECK(cut.one_side == std::vector<int>{2});
  CHECK(qrja_loss(r.instance, x, LossSpec(0.5)) == doctest::Approx(41.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(cut_loss(r, 2) == doctest::Approx(41.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-12));

  r = build_reduction(path_graph(2), 0.5);
  x = {0, 1, 0, 1};
  CHECK(extract_cut(x, r).size == 1);
  CHECK(std::abs(qrja_loss(r.instance, x, LossSpec(0.5)) - (18.0 + std::sqrt(2.0))) <= 1e-9);

  r = build_reduction(MaxCutGraph(2, {}), 0.5);
  x = {1, 0, 0, 1};
  CHECK(extract_cut(x, r).size == 0);
  CHECK(std::abs(qrja_loss(r.instance, x, LossSpec(0.5)) - 2 * r.w2) <= 1e-9);

  x = {0.5, 0, 0, 1};
  CHECK_THROWS_AS((void)extract_cut(x, r), InvalidArgument);
  x = {0, 0, 0.1, 1};
  CHECK_THROWS_AS((void)extract_cut(x, r), InvalidArgument);

  // every integral assignment satisfies the identity
  for (const auto& g : family()) {
    const auto red = build_reduction(g, 0.3);
    const int n = g.num_vertices();
    std::vector<double> y(static_cast<std::size_t>(n) + 2, 0.0);
    y[red.sink] = 1.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      for (int u = 0; u < n; ++u) y[u] = (mask >> u) & 1u;
      const auto c = extract_cut(y, red);
      CHECK(std::abs(qrja_loss(red.instance, y, LossSpec(0.3)) - cut_loss(red, c.size)) <= 1e-9);
    }
  }
}

TEST_CASE("round_solution") {
  const auto r = build_reduction(complete_graph(3), 0.5);
  const LossSpec spec(0.5);
  std::vector<double> x{0, 1, 0, 0, 1};
  CHECK(round_solution(x, r) == x);

  x = {0.3, 1, 0, 0, 1};
  auto y = round_solution(x, r);
  CHECK(y[0] == 0.0);
  CHECK(qrja_loss(r.instance, y, spec) < qrja_loss(r.instance, x, spec));

  x = {-0.2, 1, 0, 0, 1};
  y = round_solution(x, r);
  CHECK(y[0] == 0.0);
  CHECK(qrja_loss(r.instance, y, spec) < qrja_loss(r.instance, x, spec));

  // shifted input: x_s = 5 is moved to 0
  x = {5.0, 6.0, 5.0, 5.0, 6.0};
  CHECK(round_solution(x, r) == std::vector<double>{0, 1, 0, 0, 1});
  CHECK(round_solution(std::vector<double>{0.5, 0.5, 0.5, 0, 1}, r) == std::vector<double>{0, 0, 0, 0, 1});
  CHECK_THROWS_AS((void)round_solution(std::vector<double>{0, 1}, r), DimensionError);
}

TEST_CASE("rounding never increases the loss") {
  CounterRng rng(91);
  const auto gs = family();
  for (double p : {0.3, 0.5, 0.9}) {
    const LossSpec spec(p);
    for (std::size_t gi = 0; gi < gs.size(); gi += 7) {
      const auto r = build_reduction(gs[gi], p);
      std::vector<double> x(r.instance.num_candidates());
      for (int t = 0; t < 200; ++t) {
        const double shift = rng.uniform(-3, 3);
        for (double& v : x) v = shift + rng.uniform(-0.5, 1.5);
        x[r.source] = shift;
        x[r.sink] = shift + 1.0;
        const auto y = round_solution(x, r);
        CHECK(qrja_loss(r.instance, y, spec) <= qrja_loss(r.instance, x, spec) + 1e-12);
      }
    }
  }
}

TEST_CASE("equivalence with max cut on the test family") {
  for (double p : {0.3, 0.5, 0.9}) {
    for (const auto& g : family()) {
      const auto c = verify_equivalence(g, p);
      CHECK(c.holds);
      CHECK(std::abs(c.min_loss - c.predicted_loss) <= 1e-9);
    }
  }
}

TEST_CASE("relaxation lemma") {
  CHECK(check_relaxation_lemma(0.5, 0.5));
  CHECK(check_relaxation_lemma(0.9, 0.5));
  CHECK(check_relaxation_lemma(0.5, 1e-12));
  CHECK(1.0 - std::pow(0.5, 0.5) == doctest::Approx(0.2929).epsilon(1e-3));
  CHECK(0.9 * std::pow(0.5, 0.9) == doctest::Approx(0.4823).epsilon(1e-3));
  for (int i = 1; i <= 40; ++i)
    for (int j = 1; j <= 25; ++j) CHECK(check_relaxation_lemma(i / 41.0, 0.5 * j / 25.0));
  CHECK_THROWS_AS((void)check_relaxation_lemma(1.0, 0.3), InvalidArgument);
  CHECK_THROWS_AS((void)check_relaxation_lemma(0.5, 0.6), InvalidArgument);
  CHECK_THROWS_AS((void)check_relaxation_lemma(0.5, 0.0), InvalidArgument);
}
