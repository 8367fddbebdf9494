#pragma once

#include <utility>
#include <vector>

#include "fairsor/bipartite.hpp"
#include "fairsor/instance.hpp"
#include "fairsor/sor.hpp"

namespace fairsor {

struct Star {
  int center = -1;
  std::vector<int> leaves;        // ascending point ids
  std::vector<int> points() const;  // center followed by leaves
};

// Partition of all points into stars, plus the reverse index.
struct StarForest {
  std::vector<Star> stars;
  std::vector<int> star_of;  // point id -> star index

  std::vector<std::pair<int, int>> edges() const;  // (center, leaf) pairs
};

// Decomposes an edge set into stars, one per connected component. The center
// is the unique vertex of degree >= 2 when one exists, otherwise the group-1
// endpoint of the single edge. Every instance point must be covered. Throws
// ComponentNotAStarError when a component contains a three-edge path.
StarForest extract_stars(const std::vector<std::pair<int, int>>& edges, const Instance& inst);
StarForest extract_stars(const DegreeConstrainedSubgraph& dcs, const Instance& inst);

// Star-level metric. Auxiliary graph on all points plus one vertex per star:
// point-point edges weighted d(p,q), and for every point p and star S an edge
// weighted max_{q in S} d(p,q) (also when p lies in S). dprime is the
// shortest-path closure restricted to star vertices; point_to_star keeps the
// full point-to-star closure for expansion and diagnostics.
struct DerivedMetric {
  int m = 0;  // star count
  int n = 0;
  std::vector<double> dprime;         // m*m
  std::vector<double> point_to_star;  // n*m

  double dp(int a, int b) const { return dprime[static_cast<std::size_t>(a) * m + b]; }
  double dps(int p, int s) const { return point_to_star[static_cast<std::size_t>(p) * m + s]; }
  FiniteMetric star_metric() const;
};

DerivedMetric build_derived_metric(const Instance& inst, const StarForest& forest);

// Eccentricity of a star seen from its own central vertex: the distance to
// its farthest own point.
double star_eccentricity(const Star& star, const Instance& inst);

// Returns a copy of a star-level clustering whose radii are raised to
// max(radius, eccentricity of the cluster's center star). The lifted radii
// still certify coverage, and 3x the lifted cost provably covers the expanded
// clusters even when a cluster is a lone star of positive extent.
Clustering lift_star_radii(const Clustering& star_clusters, const StarForest& forest,
                           const Instance& inst);

// Expands a star-level clustering to the points: each output cluster is the
// union of its stars' point sets, with center and radius re-optimized over
// the whole point set (never worse than any fixed choice). Asserts that the
// expanded cost is at most 3x the lifted star-level cost.
Clustering expand_clustering(const Clustering& star_clusters, const StarForest& forest,
                             const Instance& inst);

}  // namespace fairsor
