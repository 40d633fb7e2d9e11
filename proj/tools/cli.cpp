#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "qrja/baselines.hpp"
#include "qrja/errors.hpp"
#include "qrja/hardness.hpp"
#include "qrja/harness.hpp"
#include "qrja/solvers.hpp"
#include "qrja/subsample.hpp"

#ifndef QRJA_VERSION
#define QRJA_VERSION "unknown"
#endif

namespace qrja::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr const char* kExitCodes =
    "Exit codes: 0 ok, 1 I/O or input error, 2 solver did not converge, "
    "3 unsupported exponent (p < 1 is NP-hard), 4 unknown method.";

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<std::string> methods;
  double p = 1.0;
  double tolerance = 1e-8;
  std::size_t max_iterations = SolveOptions{}.max_iterations;
  std::optional<double> alpha;
  std::string sample_mode = "uniform";
  std::uint64_t seed = 0;
  std::string out = "qrja-out";
  std::string aggregate_weighting = "pair";
  // synth only
  SynthOptions synth;
};

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["inputs"] = c.inputs;
  j["methods"] = c.methods;
  j["p"] = c.p;
  j["tolerance"] = c.tolerance;
  j["max_iterations"] = c.max_iterations;
  j["alpha"] = optional_json(c.alpha);
  j["sample_mode"] = c.sample_mode;
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["aggregate_weighting"] = c.aggregate_weighting;
  if (c.command == "synth") {
    j["synth"] = {{"contestants", c.synth.contestants},   {"contests", c.synth.contests},
                  {"participation", c.synth.participation}, {"ability_sd", c.synth.ability_sd},
                  {"difficulty_sd", c.synth.difficulty_sd}, {"noise_sd", c.synth.noise_sd}};
  }
  return j;
}

Json envelope(const RunConfig& c) {
  Json j;
  j["tool"] = "qrja";
  j["version"] = QRJA_VERSION;
  j["config"] = config_json(c);
  return j;
}

Json solve_json(const SolveResult& r) {
  Json j;
  j["x"] = r.x.x;
  j["loss"] = r.loss;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["dual_objective"] = optional_json(r.dual_objective);
  j["components"] = r.x.components.count();
  if (!r.objective_trace.empty()) j["objective_trace"] = r.objective_trace;
  return j;
}

Json report_json(const EvalReport& r) {
  Json j;
  j["method"] = r.method;
  j["ordinal_accuracy"] = optional_json(r.ordinal_accuracy);
  j["quantitative_loss_l1"] = optional_json(r.quantitative_loss_l1);
  j["quantitative_loss_l2"] = optional_json(r.quantitative_loss_l2);
  j["entrywise_l1"] = optional_json(r.entrywise_l1);
  j["entrywise_l2"] = optional_json(r.entrywise_l2);
  Json contests = Json::array();
  for (const ContestRecord& c : r.contests) {
    contests.push_back({{"contest", c.contest},
                        {"index", c.index},
                        {"ordinal_accuracy", optional_json(c.ordinal_accuracy)},
                        {"quantitative_loss_l1", optional_json(c.quantitative_loss_l1)},
                        {"quantitative_loss_l2", optional_json(c.quantitative_loss_l2)},
                        {"pair_count", c.pair_count},
                        {"ordinal_pair_count", c.ordinal_pair_count},
                        {"eligible_connected", c.eligible_connected}});
  }
  j["contests"] = std::move(contests);
  return j;
}

fs::path prepare_out(const RunConfig& c) {
  const fs::path dir(c.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ParseError("cannot create output directory " + c.out + ": " + ec.message());
  return dir;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write " + path.string());
  return f;
}

void write_json(const fs::path& path, const Json& j) {
  auto f = open_out(path);
  f << j.dump(2) << '\n';
}

SampleMode sample_mode(const std::string& s) { return s == "lewis" ? SampleMode::kLewis : SampleMode::kUniform; }

int cmd_aggregate(const RunConfig& c, std::ostream& out) {
  if (c.p < 1.0) {
    throw UnsupportedExponent("p = " + format_double(c.p) +
                              " < 1: l_p aggregation is NP-hard below p = 1 (reduction from Max-Cut); no solver is provided");
  }
  Instance inst = read_judgments_csv(c.inputs.at(0));
  const std::size_t original_m = inst.num_judgments();
  if (c.alpha && !inst.empty()) {
    SubsampleOptions so;
    so.count = subsample_count(*c.alpha, inst.num_judgments());
    so.mode = sample_mode(c.sample_mode);
    so.lewis_p = std::clamp(c.p, 1.0, 2.0);
    so.seed = c.seed;
    inst = subsample(inst, so);
  }
  SolveOptions opts;
  opts.tolerance = c.tolerance;
  opts.max_iterations = c.max_iterations;
  opts.seed = c.seed;
  const SolveResult r = solve(inst, LossSpec(c.p), opts);

  const fs::path dir = prepare_out(c);
  {
    auto f = open_out(dir / "ratings.csv");
    write_ratings_csv(f, r.x.x);
  }
  Json j = envelope(c);
  j["judgments"] = original_m;
  j["solved_judgments"] = inst.num_judgments();
  j["result"] = solve_json(r);
  write_json(dir / "result.json", j);
  out << "loss " << format_double(r.loss) << (r.converged ? "" : " (not converged)") << '\n';
  return r.converged ? kOk : kNotConverged;
}

int cmd_evaluate(const RunConfig& c, std::ostream& out) {
  const ContestSeries series = ingest_csv(c.inputs.at(0));
  EvalOptions opts;
  opts.tolerance = c.tolerance;
  opts.alpha = c.alpha;
  opts.sample_mode = sample_mode(c.sample_mode);
  opts.seed = c.seed;
  opts.weighting = c.aggregate_weighting == "contest" ? AggregateWeighting::kContest : AggregateWeighting::kPair;
  const auto reports = run_evaluation(series, c.methods, opts);

  const fs::path dir = prepare_out(c);
  Json j = envelope(c);
  j["contests"] = series.num_contests();
  j["contestants"] = series.num_contestants();
  Json list = Json::array();
  for (const auto& r : reports) list.push_back(report_json(r));
  j["reports"] = std::move(list);
  write_json(dir / "result.json", j);
  {
    auto f = open_out(dir / "metrics.csv");
    write_long_csv(f, reports);
  }
  for (const auto& r : reports) {
    out << r.method << ": accuracy "
        << (r.ordinal_accuracy ? format_double(*r.ordinal_accuracy) : std::string("n/a"));
    if (r.quantitative_loss_l1) out << ", l1 loss " << format_double(*r.quantitative_loss_l1);
    out << '\n';
  }
  return kOk;
}

int cmd_subsample(const RunConfig& c, std::ostream& out) {
  const Instance inst = read_judgments_csv(c.inputs.at(0));
  if (inst.empty()) throw InvalidArgument("subsample: the judgment file is empty");
  SubsampleOptions so;
  so.count = subsample_count(c.alpha.value_or(1.0), inst.num_judgments());
  so.mode = sample_mode(c.sample_mode);
  so.lewis_p = std::clamp(c.p, 1.0, 2.0);
  so.seed = c.seed;
  const Instance sample = subsample(inst, so);

  const fs::path dir = prepare_out(c);
  {
    auto f = open_out(dir / "judgments.csv");
    write_judgments_csv(f, sample);
  }
  Json j = envelope(c);
  j["judgments"] = inst.num_judgments();
  j["drawn"] = sample.num_judgments();
  write_json(dir / "result.json", j);
  out << "drew " << sample.num_judgments() << " of " << inst.num_judgments() << " judgments\n";
  return kOk;
}

int cmd_reduce(const RunConfig& c, std::ostream& out) {
  if (!(c.p > 0.0 && c.p < 1.0)) {
    throw UnsupportedExponent("reduce-maxcut needs 0 < p < 1 (the reduction shows hardness below p = 1)");
  }
  std::ifstream in(c.inputs.at(0));
  if (!in) throw ParseError("cannot open " + c.inputs.at(0));
  const MaxCutGraph g = read_edge_list(in);
  const ReductionInstance r = build_reduction(g, c.p);

  const fs::path dir = prepare_out(c);
  {
    auto f = open_out(dir / "judgments.csv");
    write_judgments_csv(f, r.instance);
  }
  Json j = envelope(c);
  j["vertices"] = g.num_vertices();
  j["edges"] = g.num_edges();
  j["w1"] = r.w1;
  j["w2"] = r.w2;
  j["source"] = r.source;
  j["sink"] = r.sink;
  j["judgments"] = r.instance.num_judgments();
  out << r.instance.num_judgments() << " judgments over " << r.instance.num_candidates() << " candidates\n";
  if (g.num_vertices() <= 6) {
    const EquivalenceCheck check = verify_equivalence(g, c.p);
    j["verification"] = {{"max_cut", check.max_cut},
                         {"min_integral_loss", check.min_loss},
                         {"predicted_loss", check.predicted_loss},
                         {"loss_identity", check.holds}};
    out << "k* = " << check.max_cut << ", loss identity " << (check.holds ? "PASS" : "FAIL") << '\n';
  } else {
    j["verification"] = nullptr;
    out << "verification skipped: n = " << g.num_vertices() << " > 6\n";
  }
  write_json(dir / "result.json", j);
  return kOk;
}

int cmd_synth(const RunConfig& c, std::ostream& out) {
  SynthOptions s = c.synth;
  s.seed = c.seed;
  const ContestSeries series = synth_series(s);
  const fs::path dir = prepare_out(c);
  {
    auto f = open_out(dir / "contests.csv");
    write_series_csv(f, series);
  }
  Json j = envelope(c);
  j["contests"] = series.num_contests();
  j["contestants"] = series.num_contestants();
  write_json(dir / "result.json", j);
  out << "wrote " << series.num_contests() << " contests\n";
  return kOk;
}

int cmd_self_test(std::ostream& out) {
  int failures = 0;
  auto check = [&](const char* name, bool ok) {
    out << (ok ? "PASS " : "FAIL ") << name << '\n';
    failures += ok ? 0 : 1;
  };
  const Instance triangle(3, {{0, 1, 1.0, 1.0}, {1, 2, 1.0, 1.0}, {0, 2, 3.0, 1.0}});
  check("triangle l1 loss = 1", std::abs(solve_l1(triangle).loss - 1.0) <= 1e-9);
  check("triangle l2 loss = 1/3", std::abs(solve_l2(triangle).loss - 1.0 / 3.0) <= 1e-9);
  const auto irls = solve_irls(triangle, LossSpec(1.5));
  check("irls p = 1.5 converges", irls.converged);
  const auto k3 = build_reduction(complete_graph(3), 0.5);
  check("K3 reduction has 13 judgments", k3.instance.num_judgments() == 13);
  check("K3 max cut identity", verify_equivalence(complete_graph(3), 0.5).holds);
  const std::vector<std::vector<std::int32_t>> cycle{{0, 1}, {0, 1}, {1, 2}, {1, 2}, {2, 0}, {2, 0}};
  check("kemeny cycle has 2 disagreements", kemeny_ranking(cycle).disagreements == 2.0);
  check("borda n = 3 gives 1, 0, -1", borda_points(std::vector<double>{3, 2, 1}) == std::vector<double>{1, 0, -1});
  out << (failures == 0 ? "self-test passed\n" : "self-test FAILED\n");
  return failures == 0 ? kOk : kIoError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantitative relative judgment aggregation", "qrja"};
  app.footer(kExitCodes);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(QRJA_VERSION));

  RunConfig c;
  std::string input;
  std::string methods = "qrja-l1,qrja-l2,mean,median";
  std::optional<double> eval_tolerance;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", c.seed, "Seed for every random draw")->capture_default_str();
    sub->add_option("--out", c.out, "Output directory")->capture_default_str();
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--alpha", c.alpha, "Subsample floor(alpha * m) judgments")->check(CLI::PositiveNumber);
    sub->add_option("--sample-mode", c.sample_mode, "Sampling weights")
        ->check(CLI::IsMember({"uniform", "lewis"}))
        ->capture_default_str();
  };

  auto* agg = app.add_subcommand("aggregate", "Solve an aggregation instance from a judgment CSV (a,b,y[,w])");
  agg->add_option("judgments", input, "Judgment CSV")->required();
  agg->add_option("--p", c.p, "Loss exponent (>= 1)")->capture_default_str();
  agg->add_option("--tolerance", c.tolerance, "Solver tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  agg->add_option("--max-iterations", c.max_iterations, "Iteration cap for CG and IRLS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_sampling(agg);
  add_common(agg);

  auto* eval = app.add_subcommand("evaluate", "Predict each contest from the earlier ones and score the methods");
  eval->add_option("contests", input, "Contest CSV (contest,contestant,score)")->required();
  eval->add_option("--methods", methods, "Comma-separated methods")->capture_default_str();
  eval->add_option("--tolerance", eval_tolerance, "QRJA solver tolerance (default 1e-10)")->check(CLI::PositiveNumber);
  eval->add_option("--aggregate-weighting", c.aggregate_weighting, "Aggregate across contests by pair or by contest")
      ->check(CLI::IsMember({"pair", "contest"}))
      ->capture_default_str();
  add_sampling(eval);
  add_common(eval);

  auto* sub = app.add_subcommand("subsample", "Draw a reweighted judgment sample (Algorithm 1)");
  sub->add_option("judgments", input, "Judgment CSV")->required();
  sub->add_option("--p", c.p, "Exponent for Lewis weights, clamped to [1, 2]")->capture_default_str();
  add_sampling(sub);
  add_common(sub);

  auto* red = app.add_subcommand("reduce-maxcut", "Build the Max-Cut reduction instance for 0 < p < 1");
  red->add_option("graph", input, "Edge list: n on the first line, then `u v` per edge")->required();
  red->add_option("--p", c.p, "Loss exponent in (0, 1)")->required();
  add_common(red);

  auto* syn = app.add_subcommand("synth", "Generate a synthetic contest series");
  syn->add_option("--contestants", c.synth.contestants)->capture_default_str();
  syn->add_option("--contests", c.synth.contests)->capture_default_str();
  syn->add_option("--participation", c.synth.participation)->capture_default_str();
  syn->add_option("--ability-sd", c.synth.ability_sd)->capture_default_str();
  syn->add_option("--difficulty-sd", c.synth.difficulty_sd)->capture_default_str();
  syn->add_option("--noise-sd", c.synth.noise_sd)->capture_default_str();
  add_common(syn);

  auto* self = app.add_subcommand("self-test", "Run built-in fixture checks");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kIoError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  c.command = chosen->get_name();
  if (!input.empty()) c.inputs.push_back(input);
  if (c.command == "evaluate") {
    std::stringstream ss(methods);
    for (std::string m; std::getline(ss, m, ',');)
      if (!m.empty()) c.methods.push_back(m);
  }
  if (c.command == "evaluate") c.tolerance = eval_tolerance.value_or(EvalOptions{}.tolerance);

  try {
    if (c.command == "evaluate") {
      for (const auto& m : c.methods) validate_method(m);
      if (c.methods.empty()) validate_method("");
    }
    if (chosen == agg) return cmd_aggregate(c, out);
    if (chosen == eval) return cmd_evaluate(c, out);
    if (chosen == sub) return cmd_subsample(c, out);
    if (chosen == red) return cmd_reduce(c, out);
    if (chosen == syn) return cmd_synth(c, out);
    if (chosen == self) return cmd_self_test(out);
  } catch (const UnsupportedExponent& e) {
    err << "error: " << e.what() << '\n';
    return kUnsupportedExponent;
  } catch (const UnknownMethod& e) {
    err << "error: " << e.what() << '\n';
    return kUnknownMethod;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
  return kIoError;
}

}  // namespace qrja::cli
