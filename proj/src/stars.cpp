#include "fairsor/stars.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "fairsor/errors.hpp"

namespace fairsor {

std::vector<int> Star::points() const {
  std::vector<int> pts;
  pts.reserve(leaves.size() + 1);
  pts.push_back(center);
  pts.insert(pts.end(), leaves.begin(), leaves.end());
  return pts;
}

std::vector<std::pair<int, int>> StarForest::edges() const {
  std::vector<std::pair<int, int>> out;
  for (const Star& s : stars)
    for (int leaf : s.leaves) out.emplace_back(s.center, leaf);
  return out;
}

StarForest extract_stars(const std::vector<std::pair<int, int>>& edges, const Instance& inst) {
  const int n = inst.n;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [u, v] : edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }

  StarForest forest;
  forest.star_of.assign(static_cast<std::size_t>(n), -1);
  for (int p = 0; p < n; ++p) {
    if (forest.star_of[static_cast<std::size_t>(p)] != -1) continue;
    if (adj[static_cast<std::size_t>(p)].empty())
      throw std::logic_error("point " + inst.id_of(p) + " is not covered by any edge");

    // Collect the component (stars have diameter <= 2, but walk generally so
    // malformed inputs are diagnosed rather than mis-split).
    std::vector<int> comp{p};
    forest.star_of[static_cast<std::size_t>(p)] = -2;  // visited marker
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (int q : adj[static_cast<std::size_t>(comp[i])])
        if (forest.star_of[static_cast<std::size_t>(q)] == -1) {
          forest.star_of[static_cast<std::size_t>(q)] = -2;
          comp.push_back(q);
        }

    std::vector<int> hubs;  // vertices of degree >= 2
    for (int q : comp)
      if (adj[static_cast<std::size_t>(q)].size() >= 2) hubs.push_back(q);
    int center;
    if (hubs.size() > 1) {
      throw ComponentNotAStarError("component of point " + inst.id_of(p) +
                                   " contains a three-edge path");
    } else if (hubs.size() == 1) {
      center = hubs[0];
    } else {
      // A single edge; the group-1 endpoint is the center.
      center = inst.group[static_cast<std::size_t>(comp[0])] == 1 ? comp[0] : comp[1];
    }

    Star star;
    star.center = center;
    for (int q : comp)
      if (q != center) star.leaves.push_back(q);
    std::sort(star.leaves.begin(), star.leaves.end());
    int idx = static_cast<int>(forest.stars.size());
    for (int q : comp) forest.star_of[static_cast<std::size_t>(q)] = idx;
    forest.stars.push_back(std::move(star));
  }
  return forest;
}

StarForest extract_stars(const DegreeConstrainedSubgraph& dcs, const Instance& inst) {
  return extract_stars(dcs.edges, inst);
}

FiniteMetric DerivedMetric::star_metric() const {
  FiniteMetric fm;
  fm.m = m;
  fm.d = dprime;
  return fm;
}

DerivedMetric build_derived_metric(const Instance& inst, const StarForest& forest) {
  const int n = inst.n;
  const int m = static_cast<int>(forest.stars.size());
  const int total = n + m;
  constexpr double inf = std::numeric_limits<double>::max() / 4;

  // Vertices 0..n-1 are points, n..n+m-1 are stars.
  std::vector<double> d(static_cast<std::size_t>(total) * total, inf);
  auto at = [&](int a, int b) -> double& { return d[static_cast<std::size_t>(a) * total + b]; };
  for (int a = 0; a < total; ++a) at(a, a) = 0.0;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (p != q) at(p, q) = inst.d(p, q);
  for (int s = 0; s < m; ++s) {
    for (int p = 0; p < n; ++p) {
      double w = 0.0;
      for (int q : forest.stars[static_cast<std::size_t>(s)].points())
        w = std::max(w, inst.d(p, q));
      at(p, n + s) = std::min(at(p, n + s), w);
      at(n + s, p) = at(p, n + s);
    }
  }
  shortest_path_close(d, total);

  DerivedMetric dm;
  dm.m = m;
  dm.n = n;
  dm.dprime.resize(static_cast<std::size_t>(m) * m);
  dm.point_to_star.resize(static_cast<std::size_t>(n) * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      dm.dprime[static_cast<std::size_t>(a) * m + b] = at(n + a, n + b);
  for (int p = 0; p < n; ++p)
    for (int s = 0; s < m; ++s)
      dm.point_to_star[static_cast<std::size_t>(p) * m + s] = at(p, n + s);
  return dm;
}

double star_eccentricity(const Star& star, const Instance& inst) {
  double ecc = 0.0;
  for (int q : star.leaves) ecc = std::max(ecc, inst.d(star.center, q));
  return ecc;
}

Clustering lift_star_radii(const Clustering& star_clusters, const StarForest& forest,
                           const Instance& inst) {
  Clustering lifted = star_clusters;
  for (Cluster& c : lifted.clusters) {
    if (c.center < 0) continue;
    double ecc = star_eccentricity(forest.stars[static_cast<std::size_t>(c.center)], inst);
    c.radius = std::max(c.radius, ecc);
  }
  lifted.recompute_cost();
  return lifted;
}

Clustering expand_clustering(const Clustering& star_clusters, const StarForest& forest,
                             const Instance& inst) {
  FiniteMetric ground = FiniteMetric::from_instance(inst);
  Clustering out;
  for (const Cluster& sc : star_clusters.clusters) {
    Cluster c;
    for (int s : sc.members) {
      const Star& star = forest.stars[static_cast<std::size_t>(s)];
      auto pts = star.points();
      c.members.insert(c.members.end(), pts.begin(), pts.end());
    }
    std::sort(c.members.begin(), c.members.end());
    auto [center, radius] = min_enclosing(ground, c.members);
    c.center = center;
    c.radius = radius;
    out.clusters.push_back(std::move(c));
  }
  out.recompute_cost();

  double lifted_cost = lift_star_radii(star_clusters, forest, inst).cost;
  if (out.cost > 3.0 * lifted_cost + 1e-9 * std::max(1.0, 3.0 * lifted_cost))
    throw std::logic_error("expanded cost exceeds 3x the star-level cost");
  return out;
}

}  // namespace fairsor
