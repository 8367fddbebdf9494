#include "fairsor/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <string>

#include "fairsor/errors.hpp"
#include "fairsor/sor.hpp"

namespace fairsor {

namespace {

constexpr double kInf = std::numeric_limits<double>::max() / 4;

OracleResult search(const Instance& inst, int k,
                    const std::function<bool(const Clustering&)>& accept) {
  if (inst.n > 12) throw InvalidInputError("oracle limited to 12 points");
  if (k < 1) throw InvalidInputError("k must be positive");
  FiniteMetric fm = FiniteMetric::from_instance(inst);
  const int m = inst.n;

  std::vector<std::vector<int>> parts;
  std::vector<double> radii;
  std::vector<int> best_assign;
  double best_cost = kInf;

  auto leaf = [&](double cost) {
    Clustering c;
    c.clusters.resize(parts.size());
    for (std::size_t j = 0; j < parts.size(); ++j) {
      c.clusters[j].members = parts[j];
      c.clusters[j].radius = radii[j];
    }
    c.cost = cost;
    if (!accept(c)) return;
    best_cost = cost;
    best_assign.assign(static_cast<std::size_t>(m), -1);
    for (std::size_t j = 0; j < parts.size(); ++j)
      for (int p : parts[j]) best_assign[static_cast<std::size_t>(p)] = static_cast<int>(j);
  };

  auto rec = [&](auto&& self, int i, double cost) -> void {
    if (cost >= best_cost) return;
    if (i == m) {
      leaf(cost);
      return;
    }
    for (std::size_t j = 0; j < parts.size(); ++j) {
      parts[j].push_back(i);
      double old_r = radii[j];
      radii[j] = min_enclosing(fm, parts[j]).second;
      self(self, i + 1, cost - old_r + radii[j]);
      radii[j] = old_r;
      parts[j].pop_back();
    }
    if (static_cast<int>(parts.size()) < k) {
      parts.push_back({i});
      radii.push_back(0.0);
      self(self, i + 1, cost);
      parts.pop_back();
      radii.pop_back();
    }
  };
  rec(rec, 0, 0.0);

  if (best_assign.empty())
    throw InfeasibleError("no feasible partition into at most " + std::to_string(k) + " clusters");

  OracleResult out;
  int nparts = *std::max_element(best_assign.begin(), best_assign.end()) + 1;
  out.clustering.clusters.resize(static_cast<std::size_t>(nparts));
  for (int p = 0; p < m; ++p)
    out.clustering.clusters[static_cast<std::size_t>(best_assign[static_cast<std::size_t>(p)])]
        .members.push_back(p);
  for (Cluster& cl : out.clustering.clusters) {
    auto [center, radius] = min_enclosing(fm, cl.members);
    cl.center = center;
    cl.radius = radius;
  }
  out.clustering.recompute_cost();
  out.cost = out.clustering.cost;
  return out;
}

}  // namespace

OracleResult opt_fair_bruteforce(const Instance& inst, int t, int k) {
  if (t < 1) throw InvalidInputError("balance parameter t must be at least 1");
  if (inst.ell != 2) throw InvalidInputError("two-color oracle needs exactly two groups");
  std::vector<int> sizes = inst.group_sizes();
  long n1 = sizes[1], n2 = sizes[2];
  if (n1 > t * n2 || n2 > t * n1)
    throw InfeasibleError("no partition is " + std::to_string(t) + "-balanced: group sizes " +
                          std::to_string(n1) + " and " + std::to_string(n2));
  return search(inst, k, [&](const Clustering& c) { return verify_fair(c, inst, t); });
}

OracleResult opt_balanced_bruteforce(const Instance& inst, int k) {
  std::vector<int> sizes = inst.group_sizes();
  for (int g = 2; g <= inst.ell; ++g)
    if (sizes[static_cast<std::size_t>(g)] != sizes[1])
      throw GroupSizesUnequalError("groups must have equal sizes, got " + std::to_string(sizes[1]) +
                                   " vs " + std::to_string(sizes[static_cast<std::size_t>(g)]) +
                                   " for group " + std::to_string(g));
  return search(inst, k, [&](const Clustering& c) { return verify_balanced(c, inst); });
}

}  // namespace fairsor
