#include "fairsor/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "fairsor/errors.hpp"

namespace fairsor {

namespace {

constexpr double kInf = std::numeric_limits<double>::max() / 4;

// Successive shortest augmenting paths with potentials. All arc costs are
// nonnegative, so zero initial potentials are valid and Dijkstra suffices.
class MinCostFlow {
 public:
  explicit MinCostFlow(int n) : adj_(static_cast<std::size_t>(n)), n_(n) {}

  int add_edge(int u, int v, int cap, double cost) {
    int id = static_cast<int>(edges_.size());
    adj_[static_cast<std::size_t>(u)].push_back(id);
    edges_.push_back({v, cap, cost});
    adj_[static_cast<std::size_t>(v)].push_back(id + 1);
    edges_.push_back({u, 0, -cost});
    return id;
  }

  int flow_on(int id) const { return edges_[static_cast<std::size_t>(id) + 1].cap; }

  // Sends up to max_flow units from s to t; returns the amount sent.
  int run(int s, int t, int max_flow) {
    std::vector<double> pot(static_cast<std::size_t>(n_), 0.0);
    int sent = 0;
    while (sent < max_flow) {
      std::vector<double> dist(static_cast<std::size_t>(n_), kInf);
      std::vector<int> pre(static_cast<std::size_t>(n_), -1);
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
      dist[static_cast<std::size_t>(s)] = 0.0;
      pq.push({0.0, s});
      while (!pq.empty()) {
        auto [du, u] = pq.top();
        pq.pop();
        if (du > dist[static_cast<std::size_t>(u)]) continue;
        for (int id : adj_[static_cast<std::size_t>(u)]) {
          const Edge& e = edges_[static_cast<std::size_t>(id)];
          if (e.cap <= 0) continue;
          // Reduced costs are nonnegative up to rounding noise; clamp.
          double rc = e.cost + pot[static_cast<std::size_t>(u)] - pot[static_cast<std::size_t>(e.to)];
          if (rc < 0.0) rc = 0.0;
          double nd = du + rc;
          if (nd < dist[static_cast<std::size_t>(e.to)]) {
            dist[static_cast<std::size_t>(e.to)] = nd;
            pre[static_cast<std::size_t>(e.to)] = id;
            pq.push({nd, e.to});
          }
        }
      }
      if (dist[static_cast<std::size_t>(t)] >= kInf) break;
      for (int v = 0; v < n_; ++v)
        if (dist[static_cast<std::size_t>(v)] < kInf) pot[static_cast<std::size_t>(v)] += dist[static_cast<std::size_t>(v)];
      int push = max_flow - sent;
      for (int v = t; v != s;) {
        int id = pre[static_cast<std::size_t>(v)];
        push = std::min(push, edges_[static_cast<std::size_t>(id)].cap);
        v = edges_[static_cast<std::size_t>(id) ^ 1].to;
      }
      for (int v = t; v != s;) {
        int id = pre[static_cast<std::size_t>(v)];
        edges_[static_cast<std::size_t>(id)].cap -= push;
        edges_[static_cast<std::size_t>(id) ^ 1].cap += push;
        v = edges_[static_cast<std::size_t>(id) ^ 1].to;
      }
      sent += push;
    }
    return sent;
  }

 private:
  struct Edge {
    int to;
    int cap;  // residual capacity
    double cost;
  };
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  int n_;
};

void check_bounds(const BipartiteGraph& g, int lower, int upper) {
  const int nl = static_cast<int>(g.left.size());
  const int nr = static_cast<int>(g.right.size());
  if (nl == 0 || nr == 0) throw InvalidInputError("bipartite graph has an empty side");
  if (lower < 0 || upper < lower) throw InvalidInputError("degree bounds must satisfy 0 <= lower <= upper");
  // Closed-form feasibility for a complete bipartite graph with uniform
  // bounds: every vertex needs `lower` distinct neighbors, and the two
  // degree sums must be reconcilable.
  if (lower > nr || lower > nl)
    throw InfeasibleError("lower bound exceeds the opposite side size");
  long long ll = lower, uu = upper;
  if (ll * nl > uu * nr || ll * nr > uu * nl)
    throw InfeasibleError("degree bounds unsatisfiable: side sizes too far apart for the bounds");
}

// Repeatedly deletes edges whose endpoints would both keep at least `lower`
// incident edges. In a minimum-weight subgraph such an edge has weight zero
// (otherwise deleting it would beat the optimum), so the weight is unchanged
// and, for lower = 1, no three-edge path survives.
template <class WeightOf>
void sweep_removable_edges(DegreeConstrainedSubgraph& s, int lower, WeightOf weight_of) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < s.edges.size(); ++i) {
      auto [u, v] = s.edges[i];
      if (s.degree[u] > lower && s.degree[v] > lower) {
        double w = weight_of(u, v);
        if (w > 1e-9 * std::max(1.0, s.total_weight))
          throw std::logic_error("removable edge with positive weight in a minimum-cost subgraph");
        s.total_weight -= w;
        s.degree[u]--;
        s.degree[v]--;
        s.edges.erase(s.edges.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
}

}  // namespace

BipartiteGraph BipartiteGraph::between_groups(const Instance& inst, int left_group,
                                              int right_group) {
  BipartiteGraph g;
  g.left = inst.group_members(left_group);
  g.right = inst.group_members(right_group);
  g.w.resize(g.left.size() * g.right.size());
  for (std::size_t i = 0; i < g.left.size(); ++i)
    for (std::size_t j = 0; j < g.right.size(); ++j)
      g.w[i * g.right.size() + j] = inst.d(g.left[i], g.right[j]);
  return g;
}

DegreeConstrainedSubgraph min_cost_dcs(const BipartiteGraph& g, int lower, int upper) {
  check_bounds(g, lower, upper);
  const int nl = static_cast<int>(g.left.size());
  const int nr = static_cast<int>(g.right.size());

  // Circulation with node degree bounds, lower bounds eliminated through a
  // super source/sink pair. Nodes: left, right, S, T, SS, TT.
  const int S = nl + nr, T = S + 1, SS = T + 1, TT = SS + 1;
  MinCostFlow mcf(TT + 1);
  for (int i = 0; i < nl; ++i) {
    mcf.add_edge(S, i, upper - lower, 0.0);
    mcf.add_edge(SS, i, lower, 0.0);
  }
  mcf.add_edge(S, TT, lower * nl, 0.0);
  std::vector<int> pair_arc(static_cast<std::size_t>(nl) * nr);
  for (int i = 0; i < nl; ++i)
    for (int j = 0; j < nr; ++j)
      pair_arc[static_cast<std::size_t>(i) * nr + j] = mcf.add_edge(i, nl + j, 1, g.weight(i, j));
  for (int j = 0; j < nr; ++j) {
    mcf.add_edge(nl + j, T, upper - lower, 0.0);
    mcf.add_edge(nl + j, TT, lower, 0.0);
  }
  mcf.add_edge(SS, T, lower * nr, 0.0);
  mcf.add_edge(T, S, (nl + nr) * upper, 0.0);

  const int required = lower * (nl + nr);
  if (mcf.run(SS, TT, required) < required)
    throw InfeasibleError("no subgraph satisfies the degree bounds");

  DegreeConstrainedSubgraph out;
  for (int i = 0; i < nl; ++i)
    for (int j = 0; j < nr; ++j)
      if (mcf.flow_on(pair_arc[static_cast<std::size_t>(i) * nr + j]) == 1) {
        out.edges.emplace_back(g.left[static_cast<std::size_t>(i)],
                               g.right[static_cast<std::size_t>(j)]);
        out.total_weight += g.weight(i, j);
        out.degree[g.left[static_cast<std::size_t>(i)]]++;
        out.degree[g.right[static_cast<std::size_t>(j)]]++;
      }
  sweep_removable_edges(out, lower, [&](int u, int v) {
    auto li = std::find(g.left.begin(), g.left.end(), u) - g.left.begin();
    auto ri = std::find(g.right.begin(), g.right.end(), v) - g.right.begin();
    return g.weight(static_cast<int>(li), static_cast<int>(ri));
  });
  return out;
}

DegreeConstrainedSubgraph min_cost_dcs_bruteforce(const BipartiteGraph& g, int lower, int upper) {
  check_bounds(g, lower, upper);
  const int nl = static_cast<int>(g.left.size());
  const int nr = static_cast<int>(g.right.size());
  const int ne = nl * nr;
  if (ne > 20) throw InvalidInputError("brute-force subgraph search limited to 20 edges");

  long long best_mask = -1;
  double best_w = kInf;
  int best_cnt = ne + 1;
  std::vector<int> degl(static_cast<std::size_t>(nl)), degr(static_cast<std::size_t>(nr));
  for (long long mask = 0; mask < (1LL << ne); ++mask) {
    std::fill(degl.begin(), degl.end(), 0);
    std::fill(degr.begin(), degr.end(), 0);
    double w = 0.0;
    int cnt = 0;
    for (int e = 0; e < ne; ++e)
      if (mask >> e & 1) {
        degl[static_cast<std::size_t>(e / nr)]++;
        degr[static_cast<std::size_t>(e % nr)]++;
        w += g.w[static_cast<std::size_t>(e)];
        cnt++;
      }
    bool ok = true;
    for (int i = 0; i < nl && ok; ++i) ok = degl[static_cast<std::size_t>(i)] >= lower && degl[static_cast<std::size_t>(i)] <= upper;
    for (int j = 0; j < nr && ok; ++j) ok = degr[static_cast<std::size_t>(j)] >= lower && degr[static_cast<std::size_t>(j)] <= upper;
    if (!ok) continue;
    if (w < best_w || (w == best_w && cnt < best_cnt)) {
      best_w = w;
      best_cnt = cnt;
      best_mask = mask;
    }
  }
  if (best_mask < 0) throw InfeasibleError("no subgraph satisfies the degree bounds");

  DegreeConstrainedSubgraph out;
  for (int e = 0; e < ne; ++e)
    if (best_mask >> e & 1) {
      int i = e / nr, j = e % nr;
      out.edges.emplace_back(g.left[static_cast<std::size_t>(i)],
                             g.right[static_cast<std::size_t>(j)]);
      out.total_weight += g.w[static_cast<std::size_t>(e)];
      out.degree[g.left[static_cast<std::size_t>(i)]]++;
      out.degree[g.right[static_cast<std::size_t>(j)]]++;
    }
  sweep_removable_edges(out, lower, [&](int u, int v) {
    auto li = std::find(g.left.begin(), g.left.end(), u) - g.left.begin();
    auto ri = std::find(g.right.begin(), g.right.end(), v) - g.right.begin();
    return g.weight(static_cast<int>(li), static_cast<int>(ri));
  });
  return out;
}

MatchingResult min_weight_perfect_matching(const BipartiteGraph& g) {
  const int n = static_cast<int>(g.left.size());
  const int m = static_cast<int>(g.right.size());
  if (n != m) throw InvalidInputError("perfect matching requires equal side sizes");
  MatchingResult out;
  if (n == 0) return out;

  // Assignment problem with row/column potentials, 1-based internally.
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0), v(static_cast<std::size_t>(m) + 1, 0.0);
  std::vector<int> p(static_cast<std::size_t>(m) + 1, 0), way(static_cast<std::size_t>(m) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(m) + 1, kInf);
    std::vector<char> used(static_cast<std::size_t>(m) + 1, 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      int i0 = p[static_cast<std::size_t>(j0)], j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= m; ++j)
        if (!used[static_cast<std::size_t>(j)]) {
          double cur = g.weight(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
          if (cur < minv[static_cast<std::size_t>(j)]) {
            minv[static_cast<std::size_t>(j)] = cur;
            way[static_cast<std::size_t>(j)] = j0;
          }
          if (minv[static_cast<std::size_t>(j)] < delta) {
            delta = minv[static_cast<std::size_t>(j)];
            j1 = j;
          }
        }
      for (int j = 0; j <= m; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (p[static_cast<std::size_t>(j0)] != 0);
    do {
      int j1 = way[static_cast<std::size_t>(j0)];
      p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0);
  }

  std::vector<std::pair<int, int>> edges;
  double total = 0.0;
  for (int j = 1; j <= m; ++j) {
    int i = p[static_cast<std::size_t>(j)];
    edges.emplace_back(g.left[static_cast<std::size_t>(i - 1)], g.right[static_cast<std::size_t>(j - 1)]);
    total += g.weight(i - 1, j - 1);
  }
  std::sort(edges.begin(), edges.end());
  out.edges = std::move(edges);
  out.total_weight = total;
  return out;
}

}  // namespace fairsor
