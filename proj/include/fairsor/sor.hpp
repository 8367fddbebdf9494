#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fairsor/instance.hpp"

namespace fairsor {

// Dense finite metric over m elements; the common currency of the clustering
// solvers.
struct FiniteMetric {
  int m = 0;
  std::vector<double> d;  // m*m, row-major

  double at(int a, int b) const { return d[static_cast<std::size_t>(a) * m + b]; }
  double max_distance() const;
  static FiniteMetric from_instance(const Instance& inst);
};

struct Cluster {
  std::vector<int> members;  // element ids, ascending
  int center = -1;
  double radius = 0.0;
};

struct Clustering {
  std::vector<Cluster> clusters;
  double cost = 0.0;

  void recompute_cost();  // cost = sum of radii
};

// Smallest enclosing radius of `members`, the center ranging over all
// elements of the metric; ties go to the smallest center id.
std::pair<int, double> min_enclosing(const FiniteMetric& metric, const std::vector<int>& members);

// Exact optimum over all partitions into at most k nonempty parts, by
// restricted-growth-string enumeration with cost pruning (radii only grow as
// parts gain members). Requires m <= 12. Deterministic: the first partition
// in enumeration order achieving the optimal cost is returned.
Clustering sor_exact(const FiniteMetric& metric, int k);

// Lagrangian primal-dual approximation. For a per-ball penalty lambda, grows
// element duals uniformly, opens a candidate ball when its constraint goes
// tight, prunes opened balls to a disjoint set in radius-descending order and
// triples the kept radii (which then provably cover everything). Bisection
// over lambda drives the ball count to the budget; the best feasible
// clustering seen anywhere is kept, with greedy merge-down / split-up repair
// at the budget boundary. epsilon controls bisection termination: the search
// stops once the bracket cost gap drops below epsilon * best/4.
Clustering sor_approx(const FiniteMetric& metric, int k, double epsilon);

// Partition + coverage-by-radius + cluster-count check.
bool verify_clustering(const Clustering& c, const FiniteMetric& metric, int k);

// Configured worst-case factor of the primal-dual subroutine; the exact
// solver counts as factor 1.
inline constexpr double kSubroutineAlpha = 3.504;

enum class Solver { Exact, PrimalDual };
Solver parse_solver(const std::string& name);  // "exact" | "primal-dual"
std::string solver_name(Solver s);
double solver_alpha(Solver s);

}  // namespace fairsor
