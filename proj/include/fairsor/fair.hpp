#pragma once

#include <string>

#include "fairsor/instance.hpp"
#include "fairsor/sor.hpp"
#include "fairsor/stars.hpp"

namespace fairsor {

struct FairnessSpec {
  int t = 1;
  int k = 1;
  int ell = 2;
  void validate() const;  // t >= 1, k >= 1, ell >= 2
};

// Strict integer parse for the balance parameter t. Fractional values are
// rejected outright: the balance constraint counts points, and a fractional
// t silently collapses to its floor while suggesting otherwise.
int parse_balance_parameter(const std::string& text);

struct FairClusteringResult {
  Clustering clustering;       // over points
  Clustering star_clustering;  // over star vertices, radii lifted (stars.hpp)
  StarForest forest;
  double dcs_weight = 0.0;     // weight of the matching-layer subgraph
  double cost = 0.0;
  bool fairness_ok = false;
  double expansion_ratio = 0.0;  // cost / star-level cost; 1 when both are 0
  Solver solver = Solver::PrimalDual;
  double alpha = kSubroutineAlpha;
};

// Two-color pipeline: minimum-cost degree-constrained subgraph with bounds
// [1, t] on the red/blue bipartite graph, star extraction, star-level
// clustering of the derived metric with the chosen solver, expansion back to
// points. Requires ell == 2 and t-balanced group sizes (|P1| <= t|P2| and
// |P2| <= t|P1|), otherwise throws InfeasibleError.
FairClusteringResult fair_tk_cluster(const Instance& inst, int t, int k, Solver solver,
                                     double epsilon);

// Balanced pipeline for ell >= 2 groups of equal size: one minimum-weight
// perfect matching between group 1 and every other group, stars grouped
// around each group-1 point, then the same star-level clustering and
// expansion. Throws GroupSizesUnequalError when sizes differ.
FairClusteringResult balanced_cluster(const Instance& inst, int k, Solver solver, double epsilon);

// Integer-arithmetic balance check: every cluster X satisfies
// |X cap P1| <= t*|X cap P2| and |X cap P2| <= t*|X cap P1|.
bool verify_fair(const Clustering& c, const Instance& inst, int t);

// Every cluster holds the same number of points from every group.
bool verify_balanced(const Clustering& c, const Instance& inst);

// Sum over clusters of the smallest enclosing radius with centers ranging
// over all points; ignores stored radii.
double clustering_cost(const Clustering& c, const Instance& inst);

}  // namespace fairsor
