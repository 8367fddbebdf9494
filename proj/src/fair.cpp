#include "fairsor/fair.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

#include "fairsor/errors.hpp"

namespace fairsor {

namespace {

FairClusteringResult run_star_pipeline(const Instance& inst, StarForest forest, double layer_weight,
                                       int k, Solver solver, double epsilon) {
  DerivedMetric dm = build_derived_metric(inst, forest);
  FiniteMetric sm = dm.star_metric();
  Clustering star_sol =
      solver == Solver::Exact ? sor_exact(sm, k) : sor_approx(sm, k, epsilon);

  FairClusteringResult res;
  res.forest = std::move(forest);
  res.dcs_weight = layer_weight;
  res.solver = solver;
  res.alpha = solver_alpha(solver);
  res.star_clustering = lift_star_radii(star_sol, res.forest, inst);
  res.clustering = expand_clustering(star_sol, res.forest, inst);
  res.cost = res.clustering.cost;
  double star_cost = res.star_clustering.cost;
  res.expansion_ratio = star_cost > 0.0 ? res.cost / star_cost : 1.0;
  return res;
}

}  // namespace

void FairnessSpec::validate() const {
  if (t < 1) throw InvalidInputError("balance parameter t must be at least 1");
  if (k < 1) throw InvalidInputError("cluster budget k must be at least 1");
  if (ell < 2) throw InvalidInputError("need at least two groups");
}

int parse_balance_parameter(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw InvalidInputError("empty balance parameter");
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    throw InvalidInputError("balance parameter t must be an integer, got " + text);
  }
  if (pos != s.size())
    throw InvalidInputError("balance parameter t must be an integer, got " + text);
  if (v < 1) throw InvalidInputError("balance parameter t must be at least 1");
  return static_cast<int>(v);
}

FairClusteringResult fair_tk_cluster(const Instance& inst, int t, int k, Solver solver,
                                     double epsilon) {
  FairnessSpec{t, k, 2}.validate();
  if (inst.ell != 2) throw InvalidInputError("two-color clustering needs exactly two groups");
  std::vector<int> sizes = inst.group_sizes();
  long n1 = sizes[1], n2 = sizes[2];
  // Summing the per-cluster inequalities shows a fair partition exists only
  // if the whole point set is t-balanced; conversely one big cluster works.
  if (n1 > t * n2 || n2 > t * n1)
    throw InfeasibleError("no partition is " + std::to_string(t) + "-balanced: group sizes " +
                          std::to_string(n1) + " and " + std::to_string(n2));

  BipartiteGraph g = BipartiteGraph::between_groups(inst, 1, 2);
  DegreeConstrainedSubgraph dcs = min_cost_dcs(g, 1, t);
  StarForest forest = extract_stars(dcs, inst);

  FairClusteringResult res =
      run_star_pipeline(inst, std::move(forest), dcs.total_weight, k, solver, epsilon);
  res.fairness_ok = verify_fair(res.clustering, inst, t);
  if (!res.fairness_ok)
    throw std::logic_error("pipeline produced an unbalanced clustering");
  return res;
}

FairClusteringResult balanced_cluster(const Instance& inst, int k, Solver solver, double epsilon) {
  FairnessSpec{1, k, inst.ell}.validate();
  std::vector<int> sizes = inst.group_sizes();
  for (int g = 2; g <= inst.ell; ++g)
    if (sizes[static_cast<std::size_t>(g)] != sizes[1])
      throw GroupSizesUnequalError("groups must have equal sizes, got " + std::to_string(sizes[1]) +
                                   " vs " + std::to_string(sizes[static_cast<std::size_t>(g)]) +
                                   " for group " + std::to_string(g));
  if (sizes[1] == 0) throw InvalidInputError("empty groups");

  // One perfect matching per non-anchor group; the union of matched edges
  // forms a star around every group-1 point.
  std::vector<std::pair<int, int>> edges;
  double weight = 0.0;
  for (int grp = 2; grp <= inst.ell; ++grp) {
    BipartiteGraph g = BipartiteGraph::between_groups(inst, 1, grp);
    MatchingResult m = min_weight_perfect_matching(g);
    edges.insert(edges.end(), m.edges.begin(), m.edges.end());
    weight += m.total_weight;
  }
  StarForest forest = extract_stars(edges, inst);

  FairClusteringResult res = run_star_pipeline(inst, std::move(forest), weight, k, solver, epsilon);
  res.fairness_ok = verify_balanced(res.clustering, inst);
  if (!res.fairness_ok)
    throw std::logic_error("pipeline produced an unbalanced clustering");
  return res;
}

bool verify_fair(const Clustering& c, const Instance& inst, int t) {
  for (const Cluster& cl : c.clusters) {
    long c1 = 0, c2 = 0;
    for (int p : cl.members) {
      if (inst.group[static_cast<std::size_t>(p)] == 1)
        c1++;
      else
        c2++;
    }
    if (c1 > t * c2 || c2 > t * c1) return false;
  }
  return true;
}

bool verify_balanced(const Clustering& c, const Instance& inst) {
  for (const Cluster& cl : c.clusters) {
    std::vector<long> counts(static_cast<std::size_t>(inst.ell), 0);
    for (int p : cl.members) counts[static_cast<std::size_t>(inst.group[static_cast<std::size_t>(p)] - 1)]++;
    for (int i = 1; i < inst.ell; ++i)
      if (counts[static_cast<std::size_t>(i)] != counts[0]) return false;
  }
  return true;
}

double clustering_cost(const Clustering& c, const Instance& inst) {
  FiniteMetric fm = FiniteMetric::from_instance(inst);
  double total = 0.0;
  for (const Cluster& cl : c.clusters) total += min_enclosing(fm, cl.members).second;
  return total;
}

}  // namespace fairsor
