#pragma once

#include <map>
#include <utility>
#include <vector>

#include "fairsor/instance.hpp"

namespace fairsor {

// Complete bipartite graph between two point sets; weights default to the
// instance distances.
struct BipartiteGraph {
  std::vector<int> left;   // point ids
  std::vector<int> right;  // point ids
  std::vector<double> w;   // |left| x |right|, row-major

  double weight(int li, int ri) const {
    return w[static_cast<std::size_t>(li) * right.size() + ri];
  }
  static BipartiteGraph between_groups(const Instance& inst, int left_group, int right_group);
};

// Spanning subgraph of a complete bipartite graph whose vertex degrees all
// lie in [lower, upper].
struct DegreeConstrainedSubgraph {
  std::vector<std::pair<int, int>> edges;  // (left point id, right point id)
  double total_weight = 0.0;
  std::map<int, int> degree;               // point id -> degree
};

// Minimum-weight degree-constrained subgraph via reduction to minimum-cost
// flow with node lower bounds (successive shortest paths with potentials,
// deterministic arc order). After solving, edges whose endpoints would both
// keep degree >= 2 are deleted; in an optimum such an edge always has weight
// zero, so the result is still optimal and every component is a star.
// Throws InfeasibleError when no subgraph satisfies the bounds.
DegreeConstrainedSubgraph min_cost_dcs(const BipartiteGraph& g, int lower, int upper);

// Exhaustive reference solver over all edge subsets; requires
// |left|*|right| <= 20. Ties broken by (weight, edge count, subset mask).
DegreeConstrainedSubgraph min_cost_dcs_bruteforce(const BipartiteGraph& g, int lower, int upper);

struct MatchingResult {
  std::vector<std::pair<int, int>> edges;  // (left point id, right point id)
  double total_weight = 0.0;
};

// Minimum-weight perfect matching by the assignment-problem primal-dual
// (potentials) method, O(n^3). Throws InvalidInputError when side sizes
// differ.
MatchingResult min_weight_perfect_matching(const BipartiteGraph& g);

}  // namespace fairsor
