#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "qrja/errors.hpp"
#include "qrja/hardness.hpp"
#include "qrja/harness.hpp"
#include "qrja/solvers.hpp"
#include "qrja/subsample.hpp"

namespace py = pybind11;
using namespace qrja;

namespace {

SolveOptions options(double tolerance, std::size_t max_iterations) {
  SolveOptions o;
  o.tolerance = tolerance;
  if (max_iterations > 0) o.max_iterations = max_iterations;
  return o;
}

SampleMode parse_mode(const std::string& mode) {
  if (mode == "uniform") return SampleMode::kUniform;
  if (mode == "lewis") return SampleMode::kLewis;
  throw InvalidArgument("sample mode must be 'uniform' or 'lewis', got '" + mode + "'");
}

py::object opt(const std::optional<double>& v) { return v ? py::cast(*v) : py::none(); }

py::dict record_dict(const ContestRecord& c) {
  py::dict d;
  d["contest"] = c.contest;
  d["index"] = c.index;
  d["ordinal_accuracy"] = opt(c.ordinal_accuracy);
  d["quantitative_loss_l1"] = opt(c.quantitative_loss_l1);
  d["quantitative_loss_l2"] = opt(c.quantitative_loss_l2);
  d["pair_count"] = c.pair_count;
  d["ordinal_pair_count"] = c.ordinal_pair_count;
  d["eligible_connected"] = c.eligible_connected;
  return d;
}

py::dict report_dict(const EvalReport& r) {
  py::dict d;
  d["method"] = r.method;
  py::list contests;
  for (const auto& c : r.contests) contests.append(record_dict(c));
  d["contests"] = contests;
  d["ordinal_accuracy"] = opt(r.ordinal_accuracy);
  d["quantitative_loss_l1"] = opt(r.quantitative_loss_l1);
  d["quantitative_loss_l2"] = opt(r.quantitative_loss_l2);
  d["entrywise_l1"] = opt(r.entrywise_l1);
  d["entrywise_l2"] = opt(r.entrywise_l2);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantitative relative judgment aggregation";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", error.ptr());
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<UnsupportedExponent>(m, "UnsupportedExponent", error.ptr());
  py::register_exception<SizeError>(m, "SizeError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", error.ptr());
  py::register_exception<UnknownMethod>(m, "UnknownMethod", error.ptr());

  py::class_<Judgment>(m, "Judgment")
      .def(py::init([](CandidateId a, CandidateId b, double y, double w) { return Judgment{a, b, y, w}; }),
           py::arg("a"), py::arg("b"), py::arg("y"), py::arg("w") = 1.0)
      .def_readwrite("a", &Judgment::a)
      .def_readwrite("b", &Judgment::b)
      .def_readwrite("y", &Judgment::y)
      .def_readwrite("w", &Judgment::w)
      .def("__eq__", [](const Judgment& l, const Judgment& r) { return l == r; })
      .def("__repr__", [](const Judgment& j) {
        return "Judgment(" + std::to_string(j.a) + ", " + std::to_string(j.b) + ", " + format_double(j.y) + ", " +
               format_double(j.w) + ")";
      });

  py::class_<Instance>(m, "Instance")
      .def(py::init<std::size_t, std::vector<Judgment>>(), py::arg("num_candidates"), py::arg("judgments"))
      .def_static(
          "from_tuples",
          [](std::size_t n, const std::vector<std::tuple<CandidateId, CandidateId, double, double>>& rows) {
            std::vector<Judgment> js;
            js.reserve(rows.size());
            for (const auto& [a, b, y, w] : rows) js.push_back({a, b, y, w});
            return Instance(n, std::move(js));
          },
          py::arg("num_candidates"), py::arg("rows"))
      .def_static("read_csv", py::overload_cast<const std::string&, std::size_t>(&read_judgments_csv),
                  py::arg("path"), py::arg("min_candidates") = 0)
      .def_property_readonly("num_candidates", &Instance::num_candidates)
      .def_property_readonly("num_judgments", &Instance::num_judgments)
      .def_property_readonly("judgments",
                             [](const Instance& i) { return std::vector<Judgment>(i.judgments().begin(), i.judgments().end()); })
      .def("__len__", &Instance::num_judgments)
      .def("__eq__", [](const Instance& l, const Instance& r) { return l == r; });

  py::class_<SolveResult>(m, "SolveResult")
      .def_property_readonly("x", [](const SolveResult& r) { return r.x.x; })
      .def_property_readonly("components", [](const SolveResult& r) { return r.x.components.groups; })
      .def_readonly("loss", &SolveResult::loss)
      .def_readonly("iterations", &SolveResult::iterations)
      .def_readonly("converged", &SolveResult::converged)
      .def_readonly("dual_objective", &SolveResult::dual_objective)
      .def_readonly("objective_trace", &SolveResult::objective_trace);

  m.def(
      "loss", [](const Instance& inst, const std::vector<double>& x, double p) { return qrja_loss(inst, x, LossSpec(p)); },
      py::arg("instance"), py::arg("x"), py::arg("p"));
  m.def(
      "connected_components", [](const Instance& inst) { return connected_components(inst).groups; },
      py::arg("instance"));
  m.def(
      "solve",
      [](const Instance& inst, double p, double tolerance, std::size_t max_iterations) {
        return solve(inst, LossSpec(p), options(tolerance, max_iterations));
      },
      py::arg("instance"), py::arg("p"), py::arg("tolerance") = 1e-8, py::arg("max_iterations") = 0);
  m.def(
      "solve_l1", [](const Instance& inst) { return solve_l1(inst); }, py::arg("instance"));
  m.def(
      "solve_l2",
      [](const Instance& inst, double tolerance, std::size_t max_iterations) {
        return solve_l2(inst, options(tolerance, max_iterations));
      },
      py::arg("instance"), py::arg("tolerance") = 1e-8, py::arg("max_iterations") = 0);
  m.def(
      "solve_irls",
      [](const Instance& inst, double p, double tolerance, std::size_t max_iterations) {
        return solve_irls(inst, LossSpec(p), options(tolerance, max_iterations));
      },
      py::arg("instance"), py::arg("p"), py::arg("tolerance") = 1e-8, py::arg("max_iterations") = 0);

  m.def(
      "lewis_weights", [](const Instance& inst, double p) { return lewis_weights(inst, p).values; },
      py::arg("instance"), py::arg("p"));
  m.def(
      "subsample",
      [](const Instance& inst, double alpha, const std::string& mode, double lewis_p, std::uint64_t seed) {
        SubsampleOptions o;
        o.count = subsample_count(alpha, inst.num_judgments());
        o.mode = parse_mode(mode);
        o.lewis_p = lewis_p;
        o.seed = seed;
        return subsample(inst, o);
      },
      py::arg("instance"), py::arg("alpha"), py::arg("mode") = "uniform", py::arg("lewis_p") = 2.0,
      py::arg("seed") = 0);

  py::class_<MaxCutGraph>(m, "MaxCutGraph")
      .def(py::init<int, std::vector<std::pair<int, int>>>(), py::arg("num_vertices"), py::arg("edges"))
      .def_static("complete", &complete_graph, py::arg("n"))
      .def_static("path", &path_graph, py::arg("n"))
      .def_static("cycle", &cycle_graph, py::arg("n"))
      .def_property_readonly("num_vertices", &MaxCutGraph::num_vertices)
      .def_property_readonly("edges", &MaxCutGraph::edges)
      .def("max_cut", [](const MaxCutGraph& g) { return bruteforce_maxcut(g); });

  py::class_<ReductionInstance>(m, "ReductionInstance")
      .def_readonly("instance", &ReductionInstance::instance)
      .def_readonly("p", &ReductionInstance::p)
      .def_readonly("w1", &ReductionInstance::w1)
      .def_readonly("w2", &ReductionInstance::w2)
      .def_readonly("source", &ReductionInstance::source)
      .def_readonly("sink", &ReductionInstance::sink)
      .def("cut_loss", [](const ReductionInstance& r, std::size_t k) { return cut_loss(r, k); }, py::arg("cut"));

  py::class_<EquivalenceCheck>(m, "EquivalenceCheck")
      .def_readonly("max_cut", &EquivalenceCheck::max_cut)
      .def_readonly("min_loss", &EquivalenceCheck::min_loss)
      .def_readonly("predicted_loss", &EquivalenceCheck::predicted_loss)
      .def_readonly("holds", &EquivalenceCheck::holds);

  m.def("build_reduction", &build_reduction, py::arg("graph"), py::arg("p"));
  m.def(
      "round_solution",
      [](const std::vector<double>& x, const ReductionInstance& r) { return round_solution(x, r); }, py::arg("x"),
      py::arg("reduction"));
  m.def("verify_equivalence", &verify_equivalence, py::arg("graph"), py::arg("p"), py::arg("tolerance") = 1e-9);
  m.def("check_relaxation_lemma", &check_relaxation_lemma, py::arg("p"), py::arg("d"));

  py::class_<ContestSeries>(m, "ContestSeries")
      .def_property_readonly("names", &ContestSeries::names)
      .def_property_readonly("num_contests", &ContestSeries::num_contests)
      .def_property_readonly("contests", [](const ContestSeries& s) {
        py::list out;
        for (const Contest& c : s.contests()) {
          py::list entries;
          for (const ContestEntry& e : c.entries) entries.append(py::make_tuple(s.names()[e.contestant], e.score));
          out.append(py::make_tuple(c.key, entries));
        }
        return out;
      });

  m.def("ingest_csv", py::overload_cast<const std::string&>(&ingest_csv), py::arg("path"));
  m.def(
      "synth_series",
      [](std::size_t contestants, std::size_t contests, double participation, double ability_sd, double difficulty_sd,
         double noise_sd, std::uint64_t seed) {
        return synth_series({contestants, contests, participation, ability_sd, difficulty_sd, noise_sd, seed});
      },
      py::arg("contestants") = 20, py::arg("contests") = 30, py::arg("participation") = 0.5,
      py::arg("ability_sd") = 1.0, py::arg("difficulty_sd") = 1.0, py::arg("noise_sd") = 0.0, py::arg("seed") = 0);
  m.def("method_registry", &method_registry);
  m.def(
      "evaluate",
      [](const ContestSeries& series, const std::vector<std::string>& methods, double tolerance,
         std::optional<double> alpha, const std::string& sample_mode, std::uint64_t seed,
         const std::string& weighting) {
        EvalOptions o;
        o.tolerance = tolerance;
        o.alpha = alpha;
        o.sample_mode = parse_mode(sample_mode);
        o.seed = seed;
        if (weighting == "pair") {
          o.weighting = AggregateWeighting::kPair;
        } else if (weighting == "contest") {
          o.weighting = AggregateWeighting::kContest;
        } else {
          throw InvalidArgument("weighting must be 'pair' or 'contest', got '" + weighting + "'");
        }
        py::list out;
        for (const EvalReport& r : run_evaluation(series, methods, o)) out.append(report_dict(r));
        return out;
      },
      py::arg("series"), py::arg("methods"), py::arg("tolerance") = 1e-10, py::arg("alpha") = py::none(),
      py::arg("sample_mode") = "uniform", py::arg("seed") = 0, py::arg("weighting") = "pair");
}
