#include "qrja/core.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "qrja/csv.hpp"
#include "qrja/errors.hpp"

namespace qrja {

Instance::Instance(std::size_t num_candidates, std::vector<Judgment> judgments)
    : n_(num_candidates), judgments_(std::move(judgments)) {
  for (std::size_t i = 0; i < judgments_.size(); ++i) {
    const Judgment& j = judgments_[i];
    const auto where = [&] { return "judgment " + std::to_string(i) + ": "; };
    if (j.a < 0 || j.b < 0 || static_cast<std::size_t>(j.a) >= n_ ||
        static_cast<std::size_t>(j.b) >= n_) {
      throw InvalidArgument(where() + "candidate id out of range [0, " + std::to_string(n_) + ")");
    }
    if (j.a == j.b) throw InvalidArgument(where() + "a == b (self-judgment)");
    if (!std::isfinite(j.y)) throw InvalidArgument(where() + "y is not finite");
    if (!std::isfinite(j.w) || !(j.w > 0.0)) throw InvalidArgument(where() + "weight must be finite and > 0");
  }
}

Instance Instance::with_weights(std::span<const double> weights) const {
  if (weights.size() != judgments_.size()) {
    throw DimensionError("with_weights: expected " + std::to_string(judgments_.size()) +
                         " weights, got " + std::to_string(weights.size()));
  }
  std::vector<Judgment> out(judgments_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i].w = weights[i];
  return Instance(n_, std::move(out));
}

LossSpec::LossSpec(double p) : p_(p) {
  if (!std::isfinite(p) || !(p > 0.0)) throw InvalidArgument("loss exponent p must be finite and > 0");
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  // Smaller root wins so every root is its component's minimum.
  void unite(std::size_t u, std::size_t v) {
    u = find(u);
    v = find(v);
    if (u == v) return;
    if (v < u) std::swap(u, v);
    parent_[v] = u;
  }

 private:
  std::vector<std::size_t> parent_;
};

double abs_pow(double t, double p) {
  t = std::abs(t);
  if (p == 1.0) return t;
  if (p == 2.0) return t * t;
  return std::pow(t, p);
}

}  // namespace

Components connected_components(const Instance& instance) {
  const std::size_t n = instance.num_candidates();
  DisjointSets sets(n);
  for (const Judgment& j : instance.judgments()) sets.unite(j.a, j.b);

  Components c;
  c.label.resize(n);
  c.group_of.resize(n);
  std::vector<std::size_t> group_index(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t root = sets.find(v);
    c.label[v] = static_cast<CandidateId>(root);
    // Roots are component minima, so scanning v upward creates groups in label order.
    if (group_index[root] == n) {
      group_index[root] = c.groups.size();
      c.groups.emplace_back();
    }
    c.group_of[v] = group_index[root];
    c.groups[group_index[root]].push_back(static_cast<CandidateId>(v));
  }
  return c;
}

std::vector<double> residuals(const Instance& instance, std::span<const double> x) {
  if (x.size() != instance.num_candidates()) {
    throw DimensionError("rating vector has length " + std::to_string(x.size()) + ", instance has " +
                         std::to_string(instance.num_candidates()) + " candidates");
  }
  std::vector<double> r;
  r.reserve(instance.num_judgments());
  for (const Judgment& j : instance.judgments()) r.push_back(x[j.a] - x[j.b] - j.y);
  return r;
}

double qrja_loss(const Instance& instance, std::span<const double> x, LossSpec spec) {
  if (x.size() != instance.num_candidates()) {
    throw DimensionError("rating vector has length " + std::to_string(x.size()) + ", instance has " +
                         std::to_string(instance.num_candidates()) + " candidates");
  }
  double total = 0.0;
  for (const Judgment& j : instance.judgments()) total += j.w * abs_pow(x[j.a] - x[j.b] - j.y, spec.p());
  return total;
}

double qrja_loss(const Instance& instance, const RatingVector& x, LossSpec spec) {
  return qrja_loss(instance, std::span<const double>(x.x), spec);
}

RatingVector normalize_gauge(std::span<const double> x, const Instance& instance) {
  return normalize_gauge(x, instance, connected_components(instance));
}

RatingVector normalize_gauge(std::span<const double> x, const Instance& instance, Components components) {
  if (x.size() != instance.num_candidates()) {
    throw DimensionError("rating vector has length " + std::to_string(x.size()) + ", instance has " +
                         std::to_string(instance.num_candidates()) + " candidates");
  }
  RatingVector out{std::vector<double>(x.size(), 0.0), std::move(components)};
  for (const auto& group : out.components.groups) {
    if (group.size() < 2) continue;
    double mean = 0.0;
    for (CandidateId v : group) mean += x[v];
    mean /= static_cast<double>(group.size());
    for (CandidateId v : group) out.x[v] = x[v] - mean;
  }
  return out;
}

std::string format_double(double value) {
  if (value == 0.0) return "0";  // folds -0
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

Instance read_judgments_csv(std::istream& in, std::size_t min_candidates) {
  std::string line;
  std::size_t row = 0;
  bool header_seen = false;
  std::vector<Judgment> judgments;
  std::size_t n = min_candidates;
  while (std::getline(in, line)) {
    ++row;
    if (csv::trim(line).empty()) continue;
    auto fields = csv::split_line(line);
    if (!header_seen) {
      header_seen = true;
      if (fields.size() < 3 || csv::trim(fields[0]) != "a" || csv::trim(fields[1]) != "b" ||
          csv::trim(fields[2]) != "y" || (fields.size() == 4 && csv::trim(fields[3]) != "w") ||
          fields.size() > 4) {
        throw ParseError("row 1: expected header a,b,y,w");
      }
      continue;
    }
    if (fields.size() != 3 && fields.size() != 4) {
      throw ParseError("row " + std::to_string(row) + ": expected 4 fields, got " + std::to_string(fields.size()));
    }
    Judgment j;
    const long long a = csv::parse_int(fields[0], "a", row);
    const long long b = csv::parse_int(fields[1], "b", row);
    if (a < 0 || b < 0) throw ParseError("row " + std::to_string(row) + ": negative candidate id");
    j.a = static_cast<CandidateId>(a);
    j.b = static_cast<CandidateId>(b);
    j.y = csv::parse_double(fields[2], "y", row);
    j.w = fields.size() == 4 ? csv::parse_double(fields[3], "w", row) : 1.0;
    if (!(j.w > 0.0)) throw ParseError("row " + std::to_string(row) + ": weight must be > 0");
    if (j.a == j.b) throw ParseError("row " + std::to_string(row) + ": a == b");
    n = std::max<std::size_t>(n, static_cast<std::size_t>(std::max(a, b)) + 1);
    judgments.push_back(j);
  }
  if (!header_seen) throw ParseError("empty judgment file (missing header a,b,y,w)");
  return Instance(n, std::move(judgments));
}

Instance read_judgments_csv(const std::string& path, std::size_t min_candidates) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_judgments_csv(in, min_candidates);
}

void write_judgments_csv(std::ostream& out, const Instance& instance) {
  out << "a,b,y,w\n";
  for (const Judgment& j : instance.judgments()) {
    out << j.a << ',' << j.b << ',' << format_double(j.y) << ',' << format_double(j.w) << '\n';
  }
}

void write_ratings_csv(std::ostream& out, std::span<const double> x) {
  out << "candidate,x\n";
  for (std::size_t i = 0; i < x.size(); ++i) out << i << ',' << format_double(x[i]) << '\n';
}

}  // namespace qrja
