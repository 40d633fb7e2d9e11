#include <algorithm>
#include <charconv>
#include <cmath>

#include "qrja/errors.hpp"
#include "qrja/harness.hpp"
#include "qrja/solvers.hpp"

namespace qrja {

namespace {

enum class Kind { kMean, kMedian, kBorda, kKemeny, kMf, kQrja };

struct Method {
  std::string name;
  Kind kind = Kind::kMean;
  int rank = 1;
  bool additive = false;
  double p = 1.0;
};

bool is_entrywise(Kind k) { return k == Kind::kMean || k == Kind::kMedian || k == Kind::kMf; }

Method parse_method(const std::string& name) {
  if (name == "mean") return {name, Kind::kMean};
  if (name == "median") return {name, Kind::kMedian};
  if (name == "borda") return {name, Kind::kBorda};
  if (name == "kemeny") return {name, Kind::kKemeny};
  if (name == "mf-r1") return {name, Kind::kMf, 1};
  if (name == "mf-r2") return {name, Kind::kMf, 2};
  if (name == "mf-r5") return {name, Kind::kMf, 5};
  if (name == "mf-additive") return {name, Kind::kMf, 1, true};
  if (name == "qrja-l1") return {name, Kind::kQrja, 1, false, 1.0};
  if (name == "qrja-l2") return {name, Kind::kQrja, 1, false, 2.0};
  const std::string prefix = "qrja-lp:";
  if (name.rfind(prefix, 0) == 0) {
    const std::string_view text = std::string_view(name).substr(prefix.size());
    double p = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
    if (!text.empty() && ec == std::errc{} && ptr == text.data() + text.size() && std::isfinite(p)) {
      if (p < 1.0) throw UnsupportedExponent(name + ": p < 1 is NP-hard; no solver is provided");
      return {name, Kind::kQrja, 1, false, p};
    }
  }
  std::string list;
  for (const auto& m : method_registry()) list += (list.empty() ? "" : ", ") + m;
  throw UnknownMethod("unknown method '" + name + "'; known methods: " + list);
}

// One method's view of a contest: a value per contestant whose difference
// predicts the score difference, and for QRJA the training components.
struct Prediction {
  PartialRatings values;
  std::optional<Components> components;  // cross-component pairs predict 0
  bool quantitative = true;
  bool entrywise = false;                // values are predicted scores
};

Prediction predict_mf(const Method& m, const ContestSeries& series, std::size_t upto, const MfOptions& base) {
  const ScoreTable raw = ScoreTable::from_series(series, upto);
  double mean = 0.0;
  for (const auto& c : raw.cells()) mean += c.value;
  mean /= static_cast<double>(raw.size());
  double var = 0.0;
  for (const auto& c : raw.cells()) var += (c.value - mean) * (c.value - mean);
  double sd = std::sqrt(var / static_cast<double>(raw.size()));
  if (!(sd > 0.0)) sd = 1.0;

  ScoreTable table(raw.rows(), raw.cols());
  std::vector<std::size_t> per_col(raw.cols(), 0);
  std::size_t busiest = 1;
  for (const auto& c : raw.cells()) {
    table.set(c.row, c.col, (c.value - mean) / sd);
    busiest = std::max({busiest, raw.row(c.row).size(), ++per_col[c.col]});
  }

  MfOptions opts = base;
  opts.rank = m.rank;
  opts.additive = m.additive;
  opts.learning_rate = base.learning_rate / static_cast<double>(busiest);
  const MfModel model = mf_fit(table, opts);
  Prediction out;
  out.entrywise = true;
  out.values = mf_predict_new_contest(model, table);
  for (auto& v : out.values)
    if (v) *v = mean + sd * *v;
  return out;
}

Prediction predict_kemeny(const ContestSeries& series, std::size_t upto, std::span<const ContestEntry> eligible) {
  Prediction out;
  out.quantitative = false;
  out.values.resize(series.num_contestants());
  const std::size_t k = eligible.size();
  if (k == 0) return out;
  std::vector<int> slot(series.num_contestants(), -1);
  for (std::size_t i = 0; i < k; ++i) slot[eligible[i].contestant] = static_cast<int>(i);

  // each earlier contest, restricted to this contest's field, is one partial ranking
  PairwiseCounts counts(k);
  for (std::size_t c = 0; c < upto; ++c) {
    const auto& entries = series[c].entries;
    for (const ContestEntry& x : entries) {
      if (slot[x.contestant] < 0) continue;
      for (const ContestEntry& y : entries) {
        if (slot[y.contestant] >= 0 && x.score > y.score) counts(slot[x.contestant], slot[y.contestant]) += 1.0;
      }
    }
  }
  const KemenyResult res = kemeny_ranking(counts);
  for (std::size_t pos = 0; pos < k; ++pos) {
    out.values[eligible[res.order[pos]].contestant] = static_cast<double>(k - pos);
  }
  return out;
}

Prediction predict_qrja(const Method& m, const ContestSeries& series, std::size_t upto, const EvalOptions& opts) {
  Instance inst = contests_to_judgments(series, upto);
  if (opts.alpha && !inst.empty()) {
    std::vector<double> s;
    if (opts.sample_mode == SampleMode::kLewis) {
      s = lewis_weights(inst, std::clamp(m.p, 1.0, 2.0)).values;
    } else {
      s.assign(inst.num_judgments(), 1.0);
    }
    CounterRng rng = CounterRng(opts.seed).split(upto);
    inst = subsample(inst, s, subsample_count(*opts.alpha, inst.num_judgments()), rng);
  }
  SolveOptions so;
  so.tolerance = opts.tolerance;
  so.seed = opts.seed;
  SolveResult r = solve(inst, LossSpec(m.p), so);
  Prediction out;
  out.values.assign(r.x.x.begin(), r.x.x.end());
  out.components = std::move(r.x.components);
  return out;
}

}  // namespace

const std::vector<std::string>& method_registry() {
  static const std::vector<std::string> names{"mean",   "median",      "borda",   "kemeny",  "mf-r1",       "mf-r2",
                                              "mf-r5", "mf-additive", "qrja-l1", "qrja-l2", "qrja-lp:<p>"};
  return names;
}

void validate_method(const std::string& name) { (void)parse_method(name); }

std::vector<EvalReport> run_evaluation(const ContestSeries& series, std::span<const std::string> methods,
                                       const EvalOptions& opts) {
  if (series.num_contests() < 2) throw InvalidArgument("evaluation needs at least two contests");
  if (opts.alpha && !(*opts.alpha > 0.0)) throw InvalidArgument("subsample rate alpha must be > 0");
  std::vector<Method> parsed;
  for (const auto& name : methods) parsed.push_back(parse_method(name));

  std::vector<EvalReport> reports(parsed.size());
  std::vector<double> entry_l1(parsed.size(), 0.0), entry_l2(parsed.size(), 0.0);
  std::size_t entry_count = 0;
  for (std::size_t k = 0; k < parsed.size(); ++k) reports[k].method = parsed[k].name;

  std::vector<char> seen(series.num_contestants(), 0);
  for (const ContestEntry& e : series[0].entries) seen[e.contestant] = 1;

  for (std::size_t i = 1; i < series.num_contests(); ++i) {
    const Contest& contest = series[i];
    std::vector<ContestEntry> eligible;
    for (const ContestEntry& e : contest.entries)
      if (seen[e.contestant]) eligible.push_back(e);

    std::vector<std::pair<ContestantId, ContestantId>> pairs;
    std::vector<double> actual;
    for (std::size_t a = 0; a < eligible.size(); ++a) {
      for (std::size_t b = a + 1; b < eligible.size(); ++b) {
        pairs.emplace_back(eligible[a].contestant, eligible[b].contestant);
        actual.push_back(eligible[a].score - eligible[b].score);
      }
    }

    ContestRecord base;
    base.contest = contest.key;
    base.index = i;
    base.pair_count = pairs.size();
    base.ordinal_pair_count = static_cast<std::size_t>(std::count_if(actual.begin(), actual.end(), [](double d) { return d != 0.0; }));
    {
      const Components comps = connected_components(contests_to_judgments(series, i));
      base.eligible_connected = std::all_of(pairs.begin(), pairs.end(), [&](const auto& pr) { return comps.same(pr.first, pr.second); });
    }
    entry_count += eligible.size();

    for (std::size_t k = 0; k < parsed.size(); ++k) {
      const Method& m = parsed[k];
      ContestRecord rec = base;
      // entrywise methods still score a lone eligible entrant
      if (!pairs.empty() || (is_entrywise(m.kind) && !eligible.empty())) {
        Prediction pred;
        switch (m.kind) {
          case Kind::kMean:
            pred.values = mean_ratings(ScoreTable::from_series(series, i));
            pred.entrywise = true;
            break;
          case Kind::kMedian:
            pred.values = median_ratings(ScoreTable::from_series(series, i));
            pred.entrywise = true;
            break;
          case Kind::kBorda:
            pred.values = borda_ratings(series, i);
            pred.quantitative = false;
            break;
          case Kind::kKemeny:
            pred = predict_kemeny(series, i, eligible);
            break;
          case Kind::kMf:
            pred = predict_mf(m, series, i, opts.mf);
            break;
          case Kind::kQrja:
            pred = predict_qrja(m, series, i, opts);
            break;
        }

        std::vector<double> diff(pairs.size());
        for (std::size_t q = 0; q < pairs.size(); ++q) {
          const auto [u, v] = pairs[q];
          const bool linked = !pred.components || pred.components->same(u, v);
          diff[q] = linked ? pred.values[u].value() - pred.values[v].value() : 0.0;
        }
        rec.ordinal_accuracy = ordinal_accuracy(diff, actual);
        if (pred.quantitative) {
          rec.quantitative_loss_l1 = quantitative_loss(diff, actual, 1);
          rec.quantitative_loss_l2 = quantitative_loss(diff, actual, 2);
        }
        if (pred.entrywise) {
          for (const ContestEntry& e : eligible) {
            const double err = std::abs(pred.values[e.contestant].value() - e.score);
            entry_l1[k] += err;
            entry_l2[k] += err * err;
          }
        }
      }
      reports[k].contests.push_back(std::move(rec));
    }

    for (const ContestEntry& e : contest.entries) seen[e.contestant] = 1;
  }

  for (std::size_t k = 0; k < parsed.size(); ++k) {
    aggregate(reports[k], opts.weighting);
    if (entry_count > 0 && is_entrywise(parsed[k].kind)) {
      reports[k].entrywise_l1 = entry_l1[k] / static_cast<double>(entry_count);
      reports[k].entrywise_l2 = entry_l2[k] / static_cast<double>(entry_count);
    }
  }
  return reports;
}

}  // namespace qrja
