#pragma once

// Importance subsampling of judgments. M judgments are drawn with
// replacement with probability q_i = s_i / sum(s); each drawn copy of
// judgment x gets weight w_x / (M q_x), so the expected total weight of every
// original judgment is preserved. With Lewis weights as s and p in [1, 2],
// M = O~(n) draws keep the optimum within (1 + eps) of the original.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qrja/core.hpp"
#include "qrja/random.hpp"

namespace qrja {

enum class SampleMode { kUniform, kLewis };

struct SubsampleOptions {
  std::size_t count = 1;  // M
  SampleMode mode = SampleMode::kUniform;
  double lewis_p = 2.0;   // only read in Lewis mode; must lie in [1, 2]
  std::size_t lewis_iterations = 20;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Draws `count` judgments proportionally to `s` (all entries > 0).
[[nodiscard]] Instance subsample(const Instance& instance, std::span<const double> s, std::size_t count,
                                 CounterRng& rng);

/// Computes s from `opts.mode` (all-ones or Lewis weights) and draws with a
/// generator seeded from `opts.seed`.
[[nodiscard]] Instance subsample(const Instance& instance, const SubsampleOptions& opts);

/// M = floor(alpha * m), at least 1.
[[nodiscard]] std::size_t subsample_count(double alpha, std::size_t num_judgments);

struct LewisWeights {
  std::vector<double> values;  // one per judgment, in (0, 1]
  std::size_t rank = 0;        // numerical rank of the augmented matrix
  bool regularized = false;    // a ridge of 1e-12 * trace was added to the Gram matrix
};

/// l_p Lewis weights of the augmented matrix whose row i holds w_i^(1/p) at
/// a_i, -w_i^(1/p) at b_i, and -w_i^(1/p) y_i in an extra column. Fixed-point
/// iteration s <- (a_i (A^T S^(1 - 2/p) A)^-1 a_i^T)^(p/2) from s = 1; at
/// p = 2 the first step already gives the leverage scores.
[[nodiscard]] LewisWeights lewis_weights(const Instance& instance, double p, std::size_t iterations = 20);

}  // namespace qrja
