#pragma once

// Domain types shared by every solver and baseline: judgments, instances,
// rating vectors, and the weighted l_p aggregation loss
//
//     loss(x) = sum_i w_i * |x[a_i] - x[b_i] - y_i|^p .
//
// The loss is invariant under adding a constant to every rating of one
// connected component of the judgment graph, so ratings are reported with the
// mean of each component removed and isolated candidates pinned to zero.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qrja {

using CandidateId = std::int32_t;

/// "Candidate a beats candidate b by y units", held with weight w.
struct Judgment {
  CandidateId a = 0;
  CandidateId b = 0;
  double y = 0.0;
  double w = 1.0;

  friend bool operator==(const Judgment&, const Judgment&) = default;
};

/// Candidate count plus an ordered judgment list. Validated on construction:
/// ids in [0, n), a != b, finite y, finite w > 0. Duplicate pairs are kept.
class Instance {
 public:
  Instance() = default;
  Instance(std::size_t num_candidates, std::vector<Judgment> judgments);

  [[nodiscard]] std::size_t num_candidates() const noexcept { return n_; }
  [[nodiscard]] std::size_t num_judgments() const noexcept { return judgments_.size(); }
  [[nodiscard]] bool empty() const noexcept { return judgments_.empty(); }
  [[nodiscard]] std::span<const Judgment> judgments() const noexcept { return judgments_; }
  [[nodiscard]] const Judgment& operator[](std::size_t i) const { return judgments_[i]; }

  /// Same judgments with every weight replaced; weights.size() must equal m.
  [[nodiscard]] Instance with_weights(std::span<const double> weights) const;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Judgment> judgments_;
};

/// Exponent of the per-judgment loss t^p; finite and strictly positive.
class LossSpec {
 public:
  explicit LossSpec(double p);
  [[nodiscard]] double p() const noexcept { return p_; }

 private:
  double p_;
};

/// Partition of candidates into connected components of the undirected
/// judgment graph. Each component is labelled by its smallest member, and
/// `groups` lists components in increasing label order with sorted members.
struct Components {
  std::vector<CandidateId> label;
  std::vector<std::size_t> group_of;
  std::vector<std::vector<CandidateId>> groups;

  [[nodiscard]] std::size_t count() const noexcept { return groups.size(); }
  [[nodiscard]] bool same(CandidateId u, CandidateId v) const { return label[u] == label[v]; }
  /// Candidates touched by no judgment form singleton components.
  [[nodiscard]] bool isolated(CandidateId v) const { return groups[group_of[v]].size() == 1; }
};

[[nodiscard]] Components connected_components(const Instance& instance);

struct RatingVector {
  std::vector<double> x;
  Components components;

  [[nodiscard]] std::size_t size() const noexcept { return x.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return x[i]; }
};

[[nodiscard]] double qrja_loss(const Instance& instance, std::span<const double> x, LossSpec spec);
[[nodiscard]] double qrja_loss(const Instance& instance, const RatingVector& x, LossSpec spec);

/// Per-judgment residuals x[a] - x[b] - y.
[[nodiscard]] std::vector<double> residuals(const Instance& instance, std::span<const double> x);

/// Removes the mean of every connected component; candidates without any
/// judgment are set to 0.
[[nodiscard]] RatingVector normalize_gauge(std::span<const double> x, const Instance& instance);
[[nodiscard]] RatingVector normalize_gauge(std::span<const double> x, const Instance& instance,
                                           Components components);

// CSV: judgments as `a,b,y,w`, ratings as `candidate,x`. Numbers use the
// shortest round-trip decimal form so repeated runs are byte-identical.
[[nodiscard]] Instance read_judgments_csv(std::istream& in, std::size_t min_candidates = 0);
[[nodiscard]] Instance read_judgments_csv(const std::string& path, std::size_t min_candidates = 0);
void write_judgments_csv(std::ostream& out, const Instance& instance);
void write_ratings_csv(std::ostream& out, std::span<const double> x);

/// Shortest decimal string that parses back to exactly `value`.
[[nodiscard]] std::string format_double(double value);

}  // namespace qrja
