#include "qrja/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <unordered_map>

#include "qrja/csv.hpp"
#include "qrja/errors.hpp"
#include "qrja/random.hpp"

namespace qrja {

namespace {

std::optional<double> as_number(std::string_view key) {
  double v = 0.0;
  const auto* end = key.data() + key.size();
  auto [ptr, ec] = std::from_chars(key.data(), end, v);
  if (key.empty() || ec != std::errc{} || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

ContestSeries ingest_csv(std::istream& in) {
  struct Row {
    std::string contest;
    std::string contestant;
    double score;
    std::size_t line;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (csv::trim(line).empty()) continue;
    const auto fields = csv::split_line(line);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() != 3 || csv::trim(fields[0]) != "contest" || csv::trim(fields[1]) != "contestant" ||
          csv::trim(fields[2]) != "score") {
        throw ParseError("row " + std::to_string(line_no) + ": expected header contest,contestant,score");
      }
      continue;
    }
    if (fields.size() != 3) {
      throw ParseError("row " + std::to_string(line_no) + ": expected 3 fields, got " + std::to_string(fields.size()));
    }
    Row r{std::string(csv::trim(fields[0])), std::string(csv::trim(fields[1])),
          csv::parse_double(fields[2], "score", line_no), line_no};
    if (r.contest.empty() || r.contestant.empty()) {
      throw ParseError("row " + std::to_string(line_no) + ": empty contest or contestant");
    }
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw ParseError("empty contest file (missing header contest,contestant,score)");

  // group by key in order of first appearance, then sort the groups
  std::vector<std::string> keys;
  std::unordered_map<std::string, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto [it, fresh] = members.try_emplace(rows[i].contest);
    if (fresh) keys.push_back(rows[i].contest);
    it->second.push_back(i);
  }
  const bool numeric = std::all_of(keys.begin(), keys.end(), [](const std::string& k) { return as_number(k).has_value(); });
  std::stable_sort(keys.begin(), keys.end(), [&](const std::string& a, const std::string& b) {
    if (numeric) {
      const double x = *as_number(a), y = *as_number(b);
      if (x != y) return x < y;
    }
    return a < b;
  });

  std::vector<std::string> names;
  std::unordered_map<std::string, ContestantId> ids;
  std::vector<Contest> contests;
  for (const std::string& key : keys) {
    Contest c{key, {}};
    std::unordered_map<ContestantId, std::size_t> line_of;
    for (std::size_t i : members[key]) {
      const Row& r = rows[i];
      auto [it, fresh] = ids.try_emplace(r.contestant, static_cast<ContestantId>(names.size()));
      if (fresh) names.push_back(r.contestant);
      auto [seen, first] = line_of.try_emplace(it->second, r.line);
      if (!first) {
        throw ParseError("rows " + std::to_string(seen->second) + " and " + std::to_string(r.line) +
                         ": duplicate entry for contestant '" + r.contestant + "' in contest '" + key + "'");
      }
      c.entries.push_back({it->second, r.score});
    }
    contests.push_back(std::move(c));
  }
  return ContestSeries(std::move(names), std::move(contests));
}

ContestSeries ingest_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return ingest_csv(in);
}

void write_series_csv(std::ostream& out, const ContestSeries& series) {
  out << "contest,contestant,score\n";
  for (const Contest& c : series.contests()) {
    for (const ContestEntry& e : c.entries) {
      out << csv::escape(c.key) << ',' << csv::escape(series.names()[e.contestant]) << ',' << format_double(e.score)
          << '\n';
    }
  }
}

Instance contests_to_judgments(const ContestSeries& series, std::size_t num_contests) {
  if (num_contests > series.num_contests()) throw InvalidArgument("contests_to_judgments: not that many contests");
  std::vector<Judgment> js;
  std::vector<ContestEntry> entries;
  for (std::size_t c = 0; c < num_contests; ++c) {
    entries = series[c].entries;
    std::sort(entries.begin(), entries.end(),
              [](const ContestEntry& x, const ContestEntry& y) { return x.contestant < y.contestant; });
    for (std::size_t i = 0; i < entries.size(); ++i)
      for (std::size_t j = i + 1; j < entries.size(); ++j)
        js.push_back({entries[i].contestant, entries[j].contestant, entries[i].score - entries[j].score, 1.0});
  }
  return Instance(series.num_contestants(), std::move(js));
}

std::optional<double> ordinal_accuracy(std::span<const double> predicted, std::span<const double> actual) {
  if (predicted.size() != actual.size()) throw DimensionError("ordinal_accuracy: length mismatch");
  double credit = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    if (actual[i] == 0.0) continue;
    ++count;
    if (predicted[i] == 0.0) {
      credit += 0.5;
    } else if ((predicted[i] > 0.0) == (actual[i] > 0.0)) {
      credit += 1.0;
    }
  }
  if (count == 0) return std::nullopt;
  return credit / static_cast<double>(count);
}

std::optional<double> quantitative_loss(std::span<const double> predicted, std::span<const double> actual,
                                        int exponent) {
  if (predicted.size() != actual.size()) throw DimensionError("quantitative_loss: length mismatch");
  if (exponent != 1 && exponent != 2) throw InvalidArgument("quantitative_loss: exponent must be 1 or 2");
  double err = 0.0, base = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double e = std::abs(predicted[i] - actual[i]);
    const double a = std::abs(actual[i]);
    err += exponent == 1 ? e : e * e;
    base += exponent == 1 ? a : a * a;
  }
  if (actual.empty() || base == 0.0) return std::nullopt;
  return err / base;  // the common 1/count cancels
}

void aggregate(EvalReport& report, AggregateWeighting weighting) {
  auto combine = [&](auto value_of, auto weight_of) -> std::optional<double> {
    double num = 0.0, den = 0.0;
    for (const ContestRecord& r : report.contests) {
      const std::optional<double> v = value_of(r);
      if (!v) continue;
      const double w = weighting == AggregateWeighting::kPair ? static_cast<double>(weight_of(r)) : 1.0;
      num += w * *v;
      den += w;
    }
    if (den == 0.0) return std::nullopt;
    return num / den;
  };
  report.ordinal_accuracy = combine([](const ContestRecord& r) { return r.ordinal_accuracy; },
                                    [](const ContestRecord& r) { return r.ordinal_pair_count; });
  report.quantitative_loss_l1 = combine([](const ContestRecord& r) { return r.quantitative_loss_l1; },
                                        [](const ContestRecord& r) { return r.pair_count; });
  report.quantitative_loss_l2 = combine([](const ContestRecord& r) { return r.quantitative_loss_l2; },
                                        [](const ContestRecord& r) { return r.pair_count; });
}

void SynthOptions::validate() const {
  if (contestants < 2) throw InvalidArgument("synth: need at least 2 contestants");
  if (contests < 1) throw InvalidArgument("synth: need at least 1 contest");
  if (!(participation > 0.0 && participation <= 1.0)) throw InvalidArgument("synth: participation must lie in (0, 1]");
  for (double sd : {ability_sd, difficulty_sd, noise_sd}) {
    if (!(sd >= 0.0) || !std::isfinite(sd)) throw InvalidArgument("synth: standard deviations must be finite and >= 0");
  }
}

ContestSeries synth_series(const SynthOptions& opts) {
  opts.validate();
  const CounterRng root(opts.seed);
  CounterRng ability_rng = root.split(0);
  std::vector<double> ability(opts.contestants);
  for (double& u : ability) u = ability_rng.normal(0.0, opts.ability_sd);

  std::vector<std::string> names(opts.contestants);
  const std::size_t width = std::max<std::size_t>(3, std::to_string(opts.contestants - 1).size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    const std::string digits = std::to_string(i);
    names[i] = "c" + std::string(width - digits.size(), '0') + digits;
  }

  std::vector<Contest> contests;
  for (std::size_t j = 0; j < opts.contests; ++j) {
    CounterRng rng = root.split(1 + j);
    const double difficulty = rng.normal(0.0, opts.difficulty_sd);
    std::vector<ContestantId> who;
    do {
      who.clear();
      for (std::size_t i = 0; i < opts.contestants; ++i)
        if (rng.bernoulli(opts.participation)) who.push_back(static_cast<ContestantId>(i));
    } while (who.size() < 2);
    Contest c{std::to_string(j + 1), {}};
    for (ContestantId i : who) {
      const double noise = opts.noise_sd > 0.0 ? rng.normal(0.0, opts.noise_sd) : 0.0;
      c.entries.push_back({i, ability[i] + difficulty + noise});
    }
    contests.push_back(std::move(c));
  }
  return ContestSeries(std::move(names), std::move(contests));
}

void write_long_csv(std::ostream& out, std::span<const EvalReport> reports) {
  out << "method,contest,metric,value\n";
  auto row = [&](const std::string& method, const std::string& contest, const char* metric, double value) {
    out << csv::escape(method) << ',' << csv::escape(contest) << ',' << metric << ',' << format_double(value) << '\n';
  };
  for (const EvalReport& r : reports) {
    for (const ContestRecord& c : r.contests) {
      if (c.ordinal_accuracy) row(r.method, c.contest, "ordinal_accuracy", *c.ordinal_accuracy);
      if (c.quantitative_loss_l1) row(r.method, c.contest, "quantitative_loss_l1", *c.quantitative_loss_l1);
      if (c.quantitative_loss_l2) row(r.method, c.contest, "quantitative_loss_l2", *c.quantitative_loss_l2);
      row(r.method, c.contest, "pair_count", static_cast<double>(c.pair_count));
    }
    if (r.ordinal_accuracy) row(r.method, "all", "ordinal_accuracy", *r.ordinal_accuracy);
    if (r.quantitative_loss_l1) row(r.method, "all", "quantitative_loss_l1", *r.quantitative_loss_l1);
    if (r.quantitative_loss_l2) row(r.method, "all", "quantitative_loss_l2", *r.quantitative_loss_l2);
    if (r.entrywise_l1) row(r.method, "all", "entrywise_l1", *r.entrywise_l1);
    if (r.entrywise_l2) row(r.method, "all", "entrywise_l2", *r.entrywise_l2);
  }
}

}  // namespace qrja
