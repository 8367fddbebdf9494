#include "fairsor/analysis.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "fairsor/errors.hpp"

namespace fairsor {

namespace {

constexpr double kInf = std::numeric_limits<double>::max() / 4;
constexpr long long kUnreached = LLONG_MAX / 4;

bool exceeds(double value, double limit) {
  return value > limit + kBoundTol * std::max(1.0, std::fabs(limit));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

std::vector<int> cluster_of_points(const Clustering& opt) {
  int n = 0;
  for (const Cluster& cl : opt.clusters)
    for (int p : cl.members) n = std::max(n, p + 1);
  std::vector<int> cl(static_cast<std::size_t>(n), -1);
  for (std::size_t j = 0; j < opt.clusters.size(); ++j)
    for (int p : opt.clusters[j].members) cl[static_cast<std::size_t>(p)] = static_cast<int>(j);
  return cl;
}

struct Label {
  long long sw = kUnreached;
  double w = kInf;
};

bool label_better(const Label& a, const Label& b) {
  if (a.sw != b.sw) return a.sw < b.sw;
  return a.w < b.w;
}

// Dijkstra over (vertex, channel of last edge) states with lexicographic
// (switches, weight) labels. Both label components only grow along an edge,
// so the usual correctness argument applies unchanged.
MinSwitchPath channel_search(const ClusterGraph& g, int from, int to,
                             const std::vector<int>& chan, int nchan) {
  if (from < 0 || from >= g.num_vertices || to < 0 || to >= g.num_vertices)
    throw std::logic_error("cluster graph vertex out of range");
  MinSwitchPath out;
  if (from == to) return out;
  const int nstates = g.num_vertices * std::max(nchan, 1);
  std::vector<Label> dist(static_cast<std::size_t>(nstates));
  std::vector<int> par_edge(static_cast<std::size_t>(nstates), -1);
  std::vector<int> par_state(static_cast<std::size_t>(nstates), -1);
  using Item = std::tuple<long long, double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  auto relax = [&](int state, Label l, int pe, int ps) {
    if (label_better(l, dist[static_cast<std::size_t>(state)])) {
      dist[static_cast<std::size_t>(state)] = l;
      par_edge[static_cast<std::size_t>(state)] = pe;
      par_state[static_cast<std::size_t>(state)] = ps;
      pq.emplace(l.sw, l.w, state);
    }
  };
  for (int e : g.out[static_cast<std::size_t>(from)]) {
    const ClusterEdge& ed = g.edges[static_cast<std::size_t>(e)];
    relax(ed.to * nchan + chan[static_cast<std::size_t>(e)], {0, ed.weight}, e, -1);
  }
  while (!pq.empty()) {
    auto [sw, w, s] = pq.top();
    pq.pop();
    const Label& cur = dist[static_cast<std::size_t>(s)];
    if (sw != cur.sw || w != cur.w) continue;
    int v = s / nchan;
    int c = s % nchan;
    for (int e : g.out[static_cast<std::size_t>(v)]) {
      const ClusterEdge& ed = g.edges[static_cast<std::size_t>(e)];
      int nc = chan[static_cast<std::size_t>(e)];
      Label next{sw + (nc != c ? 1 : 0), w + ed.weight};
      relax(ed.to * nchan + nc, next, e, s);
    }
  }
  int best_state = -1;
  for (int c = 0; c < nchan; ++c) {
    int s = to * nchan + c;
    if (dist[static_cast<std::size_t>(s)].sw >= kUnreached) continue;
    if (best_state < 0 ||
        label_better(dist[static_cast<std::size_t>(s)], dist[static_cast<std::size_t>(best_state)]))
      best_state = s;
  }
  if (best_state < 0)
    throw UnreachableVertexError("no walk from vertex " + std::to_string(from) + " to vertex " +
                                 std::to_string(to));
  out.switches = static_cast<int>(dist[static_cast<std::size_t>(best_state)].sw);
  out.weight = dist[static_cast<std::size_t>(best_state)].w;
  for (int s = best_state; s >= 0; s = par_state[static_cast<std::size_t>(s)])
    out.edge_ids.push_back(par_edge[static_cast<std::size_t>(s)]);
  std::reverse(out.edge_ids.begin(), out.edge_ids.end());
  return out;
}

std::vector<int> sorted_colors(const ClusterGraph& g) {
  std::set<int> colors;
  for (const ClusterEdge& e : g.edges) colors.insert(e.color);
  return {colors.begin(), colors.end()};
}

ClusterGraph color_subgraph(const ClusterGraph& g, int color) {
  ClusterGraph sub;
  sub.num_vertices = g.num_vertices;
  sub.cluster_ids = g.cluster_ids;
  sub.out.assign(static_cast<std::size_t>(g.num_vertices), {});
  for (const ClusterEdge& e : g.edges)
    if (e.color == color) {
      sub.out[static_cast<std::size_t>(e.from)].push_back(static_cast<int>(sub.edges.size()));
      sub.edges.push_back(e);
    }
  return sub;
}

// Weak components over the given edges; vertices without any edge keep their
// own singleton component.
std::vector<std::vector<int>> weak_components(int n, const std::vector<ClusterEdge>& edges) {
  UnionFind uf(n);
  for (const ClusterEdge& e : edges) uf.unite(e.from, e.to);
  std::map<int, std::vector<int>> buckets;
  for (int v = 0; v < n; ++v) buckets[uf.find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, verts] : buckets) out.push_back(std::move(verts));
  return out;
}

bool parity_reachable(const ClusterGraph& g, int from, int to, int parity) {
  if (from == to) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.num_vertices), 0);
  std::queue<int> q;
  seen[static_cast<std::size_t>(from)] = 1;
  q.push(from);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int e : g.out[static_cast<std::size_t>(v)]) {
      const ClusterEdge& ed = g.edges[static_cast<std::size_t>(e)];
      if (ed.parity != parity || seen[static_cast<std::size_t>(ed.to)]) continue;
      if (ed.to == to) return true;
      seen[static_cast<std::size_t>(ed.to)] = 1;
      q.push(ed.to);
    }
  }
  return false;
}

}  // namespace

std::vector<Supercluster> build_superclusters(const Clustering& opt,
                                              const std::vector<std::pair<int, int>>& edges) {
  const int C = static_cast<int>(opt.clusters.size());
  std::vector<int> cl = cluster_of_points(opt);
  UnionFind uf(C);
  for (const auto& [p, q] : edges) {
    if (p >= static_cast<int>(cl.size()) || q >= static_cast<int>(cl.size()) ||
        cl[static_cast<std::size_t>(p)] < 0 || cl[static_cast<std::size_t>(q)] < 0)
      throw std::logic_error("edge endpoint not covered by the clustering");
    uf.unite(cl[static_cast<std::size_t>(p)], cl[static_cast<std::size_t>(q)]);
  }
  std::map<int, Supercluster> buckets;  // keyed by representative = smallest id
  for (int c = 0; c < C; ++c) buckets[uf.find(c)].clusters.push_back(c);
  std::vector<Supercluster> out;
  for (auto& [root, sc] : buckets) {
    for (int c : sc.clusters)
      sc.points.insert(sc.points.end(), opt.clusters[static_cast<std::size_t>(c)].members.begin(),
                       opt.clusters[static_cast<std::size_t>(c)].members.end());
    std::sort(sc.points.begin(), sc.points.end());
    out.push_back(std::move(sc));
  }
  return out;
}

ClusterGraph build_cluster_graph(const Instance& inst, const Clustering& opt,
                                 const Supercluster& sc,
                                 const std::vector<std::pair<int, int>>& edges) {
  ClusterGraph g;
  g.num_vertices = static_cast<int>(sc.clusters.size());
  g.cluster_ids = sc.clusters;
  g.out.assign(static_cast<std::size_t>(g.num_vertices), {});
  std::map<int, int> local;
  for (int i = 0; i < g.num_vertices; ++i) local[sc.clusters[static_cast<std::size_t>(i)]] = i;
  std::vector<int> cl = cluster_of_points(opt);

  auto add = [&](int from, int to, int parity, int color, double w, std::pair<int, int> src) {
    g.out[static_cast<std::size_t>(from)].push_back(static_cast<int>(g.edges.size()));
    g.edges.push_back({from, to, parity, color, w, src});
  };
  for (auto [p, q] : edges) {
    if (inst.group[static_cast<std::size_t>(q)] == 1) std::swap(p, q);
    auto ip = local.find(cl[static_cast<std::size_t>(p)]);
    auto iq = local.find(cl[static_cast<std::size_t>(q)]);
    if (ip == local.end() || iq == local.end() || ip->second == iq->second) continue;
    double w = inst.d(p, q);
    int color = inst.group[static_cast<std::size_t>(q)];
    add(ip->second, iq->second, 0, color, w, {p, q});
    add(iq->second, ip->second, 1, color, w, {p, q});
  }
  return g;
}

MinSwitchPath min_switch_path(const ClusterGraph& g, int from, int to) {
  std::vector<int> chan(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) chan[e] = g.edges[e].parity;
  return channel_search(g, from, to, chan, 2);
}

MinSwitchPath min_color_switch_path(const ClusterGraph& g, int from, int to) {
  int maxc = 2;
  for (const ClusterEdge& e : g.edges) maxc = std::max(maxc, e.color);
  std::vector<int> chan(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) chan[e] = g.edges[e].color - 2;
  return channel_search(g, from, to, chan, maxc - 1);
}

MergeReport check_merge_bounds(const Instance& inst, const Clustering& opt,
                               const std::vector<std::pair<int, int>>& edges,
                               const StarForest& forest) {
  MergeReport rep;
  rep.opt_cost = opt.cost;
  std::vector<Supercluster> scs = build_superclusters(opt, edges);
  FiniteMetric fm = FiniteMetric::from_instance(inst);
  std::vector<double> sc_radius;
  for (const Supercluster& sc : scs) {
    double r = min_enclosing(fm, sc.points).second;
    sc_radius.push_back(r);
    rep.supercluster_cost += r;
  }

  // Stars regrouped by the supercluster holding their points, costed in the
  // star-level metric. Matching edges never leave a supercluster, so each
  // star sits in exactly one.
  std::vector<int> sc_of_point(static_cast<std::size_t>(inst.n), -1);
  for (std::size_t i = 0; i < scs.size(); ++i)
    for (int p : scs[i].points) sc_of_point[static_cast<std::size_t>(p)] = static_cast<int>(i);
  DerivedMetric dm = build_derived_metric(inst, forest);
  std::vector<std::vector<int>> stars_in(scs.size());
  for (std::size_t s = 0; s < forest.stars.size(); ++s) {
    int home = sc_of_point[static_cast<std::size_t>(forest.stars[s].center)];
    for (int p : forest.stars[s].points())
      if (sc_of_point[static_cast<std::size_t>(p)] != home)
        throw std::logic_error("star spans two superclusters");
    stars_in[static_cast<std::size_t>(home)].push_back(static_cast<int>(s));
  }
  for (const std::vector<int>& group : stars_in) {
    if (group.empty()) continue;
    double best = kInf;
    for (int s : group) {
      double r = 0.0;
      for (int s2 : group) r = std::max(r, dm.dp(s, s2));
      best = std::min(best, r);
    }
    rep.regrouped_star_cost += best;
  }

  rep.lemma6_ratio = rep.opt_cost > 0.0 ? rep.supercluster_cost / rep.opt_cost : 0.0;
  rep.lemma5_ratio =
      rep.supercluster_cost > 0.0 ? rep.regrouped_star_cost / rep.supercluster_cost : 0.0;

  if (rep.opt_cost == 0.0) {
    // Degenerate form of both bounds: everything must collapse to weight zero.
    for (const auto& [p, q] : edges)
      if (inst.d(p, q) > kBoundTol)
        rep.violations.push_back("matching-layer edge (" + std::to_string(p) + "," +
                                 std::to_string(q) + ") has weight " + fmt(inst.d(p, q)) +
                                 " on a zero-cost optimum");
    if (rep.supercluster_cost > kBoundTol)
      rep.violations.push_back("supercluster cost " + fmt(rep.supercluster_cost) +
                               " positive on a zero-cost optimum");
  } else if (exceeds(rep.supercluster_cost, 8.0 * rep.opt_cost)) {
    rep.violations.push_back("supercluster cost " + fmt(rep.supercluster_cost) + " exceeds 8x optimal cost " +
                             fmt(rep.opt_cost));
  }
  if (rep.supercluster_cost == 0.0) {
    if (rep.regrouped_star_cost > kBoundTol)
      rep.violations.push_back("regrouped star cost " + fmt(rep.regrouped_star_cost) +
                               " positive while superclusters cost zero");
  } else if (exceeds(rep.regrouped_star_cost, 2.0 * rep.supercluster_cost)) {
    rep.violations.push_back("regrouped star cost " + fmt(rep.regrouped_star_cost) +
                             " exceeds 2x supercluster cost " + fmt(rep.supercluster_cost));
  }
  return rep;
}

SwitchReport check_switch_bounds(const ClusterGraph& g, const std::vector<double>& radii) {
  if (static_cast<int>(radii.size()) != g.num_vertices)
    throw std::logic_error("radius vector does not match the cluster graph");
  SwitchReport rep;
  for (const std::vector<int>& comp : weak_components(g.num_vertices, g.edges)) {
    if (comp.size() < 2) continue;
    double rsum = 0.0;
    for (int v : comp) rsum += radii[static_cast<std::size_t>(v)];
    for (int a : comp)
      for (int b : comp) {
        if (a == b) continue;
        MinSwitchPath path = min_switch_path(g, a, b);
        rep.pairs_checked++;
        if (rsum <= 0.0) {
          if (path.weight > kBoundTol)
            rep.violations.push_back("witness of weight " + fmt(path.weight) + " between vertices " +
                                     std::to_string(a) + " and " + std::to_string(b) +
                                     " in a zero-radius component");
          continue;
        }
        double ratio = path.weight / rsum;
        rep.max_weight_ratio = std::max(rep.max_weight_ratio, ratio);
        if (exceeds(path.weight, 6.0 * rsum))
          rep.violations.push_back("witness weight " + fmt(path.weight) + " between vertices " +
                                   std::to_string(a) + " and " + std::to_string(b) +
                                   " exceeds 6x radius sum " + fmt(rsum));
        if (path.switches == 0) {
          rep.max_switchless_ratio = std::max(rep.max_switchless_ratio, ratio);
          if (exceeds(path.weight, 4.0 * rsum))
            rep.violations.push_back("switch-free witness weight " + fmt(path.weight) +
                                     " between vertices " + std::to_string(a) + " and " +
                                     std::to_string(b) + " exceeds 4x radius sum " + fmt(rsum));
        }
      }
  }
  return rep;
}

ColorReport check_color_graph(const ClusterGraph& g, const std::vector<double>& radii) {
  if (static_cast<int>(radii.size()) != g.num_vertices)
    throw std::logic_error("radius vector does not match the cluster graph");
  ColorReport rep;
  const std::vector<int> colors = sorted_colors(g);

  // Per-color component ids, -1 for vertices untouched by that color.
  std::map<int, std::vector<int>> comp_of;
  for (int z : colors) {
    UnionFind uf(g.num_vertices);
    std::vector<char> touched(static_cast<std::size_t>(g.num_vertices), 0);
    for (const ClusterEdge& e : g.edges)
      if (e.color == z) {
        uf.unite(e.from, e.to);
        touched[static_cast<std::size_t>(e.from)] = 1;
        touched[static_cast<std::size_t>(e.to)] = 1;
      }
    std::vector<int> ids(static_cast<std::size_t>(g.num_vertices), -1);
    for (int v = 0; v < g.num_vertices; ++v)
      if (touched[static_cast<std::size_t>(v)]) ids[static_cast<std::size_t>(v)] = uf.find(v);
    comp_of[z] = std::move(ids);
  }

  for (int z : colors) {
    ClusterGraph sub = color_subgraph(g, z);
    std::vector<long> in0(static_cast<std::size_t>(g.num_vertices), 0);
    std::vector<long> out0(static_cast<std::size_t>(g.num_vertices), 0);
    for (const ClusterEdge& e : sub.edges)
      if (e.parity == 0) {
        out0[static_cast<std::size_t>(e.from)]++;
        in0[static_cast<std::size_t>(e.to)]++;
      }
    for (int v = 0; v < g.num_vertices; ++v)
      if (in0[static_cast<std::size_t>(v)] != out0[static_cast<std::size_t>(v)]) {
        rep.degree_balance = false;
        rep.violations.push_back("vertex " + std::to_string(v) + " has " +
                                 std::to_string(in0[static_cast<std::size_t>(v)]) + " incoming and " +
                                 std::to_string(out0[static_cast<std::size_t>(v)]) +
                                 " outgoing parity-0 edges of color " + std::to_string(z));
      }
    for (const std::vector<int>& comp : weak_components(g.num_vertices, sub.edges)) {
      if (comp.size() < 2) continue;
      for (int a : comp)
        for (int b : comp) {
          if (a == b) continue;
          if (!parity_reachable(sub, a, b, 0) && !parity_reachable(sub, a, b, 1))
            rep.violations.push_back("no switch-free walk of color " + std::to_string(z) +
                                     " from vertex " + std::to_string(a) + " to vertex " +
                                     std::to_string(b));
        }
    }
  }

  double rsum = 0.0;
  for (double r : radii) rsum += r;
  for (const std::vector<int>& comp : weak_components(g.num_vertices, g.edges)) {
    if (comp.size() < 2) continue;
    for (int a : comp)
      for (int b : comp) {
        if (a == b) continue;
        MinSwitchPath path = min_color_switch_path(g, a, b);
        rep.pairs_checked++;

        // Maximal same-color segments; segments two or more apart must live
        // in vertex-disjoint per-color components, else the walk admits a
        // shortcut with fewer switches.
        struct Segment {
          int color;
          int comp;
        };
        std::vector<Segment> segs;
        for (int e : path.edge_ids) {
          const ClusterEdge& ed = g.edges[static_cast<std::size_t>(e)];
          if (segs.empty() || segs.back().color != ed.color)
            segs.push_back({ed.color, comp_of[ed.color][static_cast<std::size_t>(ed.from)]});
        }
        for (std::size_t i = 0; i + 2 < segs.size(); ++i)
          for (std::size_t j = i + 2; j < segs.size(); ++j) {
            const std::vector<int>& ci = comp_of[segs[i].color];
            const std::vector<int>& cj = comp_of[segs[j].color];
            for (int v = 0; v < g.num_vertices; ++v)
              if (ci[static_cast<std::size_t>(v)] == segs[i].comp &&
                  cj[static_cast<std::size_t>(v)] == segs[j].comp) {
                rep.violations.push_back(
                    "witness from vertex " + std::to_string(a) + " to vertex " + std::to_string(b) +
                    " has segments " + std::to_string(i) + " and " + std::to_string(j) +
                    " sharing vertex " + std::to_string(v));
                break;
              }
          }

        if (rsum <= 0.0) {
          if (path.weight > kBoundTol)
            rep.violations.push_back("color witness of weight " + fmt(path.weight) +
                                     " between vertices " + std::to_string(a) + " and " +
                                     std::to_string(b) + " in a zero-radius graph");
          continue;
        }
        double ratio = path.weight / rsum;
        rep.max_weight_ratio = std::max(rep.max_weight_ratio, ratio);
        if (exceeds(path.weight, 8.0 * rsum))
          rep.violations.push_back("color witness weight " + fmt(path.weight) + " between vertices " +
                                   std::to_string(a) + " and " + std::to_string(b) +
                                   " exceeds 8x radius sum " + fmt(rsum));
      }
  }
  return rep;
}

namespace {

DiagnosticsReport diagnose_common(const Instance& inst, const FairClusteringResult& res,
                                  const OracleResult& opt, bool colored,
                                  const std::string& instance_id) {
  DiagnosticsReport rep;
  rep.instance_id = instance_id;
  rep.alg_cost = res.cost;
  rep.opt_cost = opt.cost;
  rep.expansion_ratio = res.expansion_ratio;

  if (res.cost < opt.cost - kBoundTol * std::max(1.0, opt.cost))
    rep.violations.push_back("algorithm cost " + fmt(res.cost) + " beats the exhaustive optimum " +
                             fmt(opt.cost));
  if (opt.cost == 0.0 && res.cost > kBoundTol)
    rep.violations.push_back("positive algorithm cost " + fmt(res.cost) +
                             " on a zero-cost optimum");
  if (exceeds(res.expansion_ratio, 3.0))
    rep.violations.push_back("expansion ratio " + fmt(res.expansion_ratio) + " exceeds 3");

  std::vector<std::pair<int, int>> edges = res.forest.edges();
  MergeReport merge = check_merge_bounds(inst, opt.clustering, edges, res.forest);
  rep.lemma5_ratio = merge.lemma5_ratio;
  rep.lemma6_ratio = merge.lemma6_ratio;
  rep.violations.insert(rep.violations.end(), merge.violations.begin(), merge.violations.end());

  for (const Supercluster& sc : build_superclusters(opt.clustering, edges)) {
    ClusterGraph g = build_cluster_graph(inst, opt.clustering, sc, edges);
    std::vector<double> radii(static_cast<std::size_t>(g.num_vertices));
    for (int i = 0; i < g.num_vertices; ++i)
      radii[static_cast<std::size_t>(i)] =
          opt.clustering.clusters[static_cast<std::size_t>(g.cluster_ids[static_cast<std::size_t>(i)])]
              .radius;
    if (!colored) {
      SwitchReport sw = check_switch_bounds(g, radii);
      rep.max_switch_weight_ratio = std::max(rep.max_switch_weight_ratio, sw.max_weight_ratio);
      rep.violations.insert(rep.violations.end(), sw.violations.begin(), sw.violations.end());
    } else {
      for (int z : sorted_colors(g)) {
        SwitchReport sw = check_switch_bounds(color_subgraph(g, z), radii);
        rep.max_switch_weight_ratio = std::max(rep.max_switch_weight_ratio, sw.max_weight_ratio);
        rep.violations.insert(rep.violations.end(), sw.violations.begin(), sw.violations.end());
      }
      ColorReport color = check_color_graph(g, radii);
      rep.color_degree_balance = rep.color_degree_balance && color.degree_balance;
      rep.max_switch_weight_ratio = std::max(rep.max_switch_weight_ratio, color.max_weight_ratio);
      rep.violations.insert(rep.violations.end(), color.violations.begin(), color.violations.end());
    }
  }
  return rep;
}

}  // namespace

DiagnosticsReport diagnose_fair(const Instance& inst, int t, int k, Solver solver, double epsilon,
                                const std::string& instance_id) {
  FairClusteringResult res = fair_tk_cluster(inst, t, k, solver, epsilon);
  OracleResult opt = opt_fair_bruteforce(inst, t, k);
  return diagnose_common(inst, res, opt, false, instance_id);
}

DiagnosticsReport diagnose_balanced(const Instance& inst, int k, Solver solver, double epsilon,
                                    const std::string& instance_id) {
  FairClusteringResult res = balanced_cluster(inst, k, solver, epsilon);
  OracleResult opt = opt_balanced_bruteforce(inst, k);
  return diagnose_common(inst, res, opt, true, instance_id);
}

}  // namespace fairsor
