#pragma once

// Chronological evaluation: contest i is predicted from contests 1..i-1 and
// scored on the pairs of its contestants who both appeared before.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrja/baselines.hpp"
#include "qrja/core.hpp"
#include "qrja/data.hpp"
#include "qrja/subsample.hpp"

namespace qrja {

/// Reads `contest,contestant,score` CSV. Contests are sorted by key
/// (numerically when every key is a number, otherwise as strings), rows keep
/// file order within a contest, and contestant ids follow first appearance
/// in that order. Duplicate (contest, contestant) rows are a ParseError that
/// names both line numbers.
[[nodiscard]] ContestSeries ingest_csv(std::istream& in);
[[nodiscard]] ContestSeries ingest_csv(const std::string& path);
void write_series_csv(std::ostream& out, const ContestSeries& series);

/// One judgment (a, b, score_a - score_b, 1) per unordered pair within each of
/// the first `num_contests` contests, with a the smaller contestant id. The
/// candidate space is every contestant of the series.
[[nodiscard]] Instance contests_to_judgments(const ContestSeries& series, std::size_t num_contests);

/// Share of pairs whose predicted difference has the sign of the actual one;
/// a predicted difference of exactly 0 earns 1/2. Pairs with actual
/// difference 0 are skipped; nullopt when none remain.
[[nodiscard]] std::optional<double> ordinal_accuracy(std::span<const double> predicted,
                                                     std::span<const double> actual);

/// mean |predicted - actual|^exponent divided by mean |actual|^exponent;
/// nullopt when there are no pairs or every actual difference is 0.
[[nodiscard]] std::optional<double> quantitative_loss(std::span<const double> predicted,
                                                      std::span<const double> actual, int exponent);

enum class AggregateWeighting { kPair, kContest };

struct EvalOptions {
  double tolerance = 1e-10;        // QRJA solver tolerance
  std::optional<double> alpha;     // subsample QRJA judgments to floor(alpha * m) when set
  SampleMode sample_mode = SampleMode::kUniform;
  std::uint64_t seed = 0;
  AggregateWeighting weighting = AggregateWeighting::kPair;
  MfOptions mf;                    // rank/additive set per method
};

struct ContestRecord {
  std::string contest;
  std::size_t index = 0;                       // position in the series
  std::optional<double> ordinal_accuracy;
  std::optional<double> quantitative_loss_l1;  // absent for order-only methods
  std::optional<double> quantitative_loss_l2;
  std::size_t pair_count = 0;                  // pairs of previously seen contestants
  std::size_t ordinal_pair_count = 0;          // of those, pairs with different scores
  bool eligible_connected = false;             // eligible contestants share one training component
};

struct EvalReport {
  std::string method;
  std::vector<ContestRecord> contests;
  std::optional<double> ordinal_accuracy;
  std::optional<double> quantitative_loss_l1;
  std::optional<double> quantitative_loss_l2;
  std::optional<double> entrywise_l1;  // mean, median, and MF: per-entry score error
  std::optional<double> entrywise_l2;
};

/// `mean`, `median`, `borda`, `kemeny`, `mf-r1`, `mf-r2`, `mf-r5`,
/// `mf-additive`, `qrja-l1`, `qrja-l2`, `qrja-lp:<p>`.
[[nodiscard]] const std::vector<std::string>& method_registry();

/// Throws UnknownMethod for unregistered names and UnsupportedExponent for
/// qrja-lp with p < 1.
void validate_method(const std::string& name);

/// One report per method, in the order given. Needs at least two contests.
[[nodiscard]] std::vector<EvalReport> run_evaluation(const ContestSeries& series,
                                                     std::span<const std::string> methods,
                                                     const EvalOptions& opts = {});

/// Fills the aggregate fields of `report` from its contest records.
void aggregate(EvalReport& report, AggregateWeighting weighting);

struct SynthOptions {
  std::size_t contestants = 20;
  std::size_t contests = 30;
  double participation = 0.5;
  double ability_sd = 1.0;
  double difficulty_sd = 1.0;
  double noise_sd = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// score(i, j) = u_i + d_j + noise with u_i ~ N(0, ability_sd^2),
/// d_j ~ N(0, difficulty_sd^2), noise ~ N(0, noise_sd^2). Each contest takes
/// every contestant with probability `participation`, redrawn until at
/// least two enter. Contest keys are 1..N, contestant names c000, c001, ...
[[nodiscard]] ContestSeries synth_series(const SynthOptions& opts);

/// Long format `method,contest,metric,value`; absent metrics are omitted and
/// aggregates use contest `all`.
void write_long_csv(std::ostream& out, std::span<const EvalReport> reports);

}  // namespace qrja
