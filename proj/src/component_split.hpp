#pragma once

// Per-component views used by the solvers: judgment indices grouped by the
// component they live in, plus each candidate's local index in its group.

#include <vector>

#include "qrja/core.hpp"

namespace qrja::detail {

struct ComponentSplit {
  Components components;
  std::vector<std::vector<std::size_t>> judgments;  // per group, ascending
  std::vector<int> local;                           // candidate -> index within its group
};

inline ComponentSplit split_components(const Instance& instance) {
  ComponentSplit s{connected_components(instance), {}, {}};
  s.judgments.resize(s.components.count());
  s.local.assign(instance.num_candidates(), 0);
  for (const auto& group : s.components.groups) {
    for (std::size_t i = 0; i < group.size(); ++i) s.local[group[i]] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < instance.num_judgments(); ++i) {
    s.judgments[s.components.group_of[instance[i].a]].push_back(i);
  }
  return s;
}

}  // namespace qrja::detail
