#include "fairsor/sor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fairsor/errors.hpp"

namespace fairsor {

namespace {

constexpr double kInf = std::numeric_limits<double>::max() / 4;

double ulp_guard(double x) {
  return 32.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(x));
}

Clustering singletons(const FiniteMetric& metric) {
  Clustering c;
  for (int i = 0; i < metric.m; ++i) c.clusters.push_back({{i}, i, 0.0});
  c.cost = 0.0;
  return c;
}

void finalize(Clustering& c, const FiniteMetric& metric) {
  for (Cluster& cl : c.clusters) {
    std::sort(cl.members.begin(), cl.members.end());
    auto [center, radius] = min_enclosing(metric, cl.members);
    cl.center = center;
    cl.radius = radius;
  }
  c.recompute_cost();
}

// One run of the dual-growth cover for a fixed per-ball penalty. Candidate
// balls are (center, r) for every distance r out of the center. Element duals
// grow uniformly; a ball opens when its constraint is paid for; opened balls
// are pruned to a disjoint family in radius-descending order. Every dropped
// ball then intersects a kept ball of no smaller radius, so tripling the kept
// radii covers everything.
Clustering dual_growth_cover(const FiniteMetric& fm, double lambda) {
  const int m = fm.m;
  struct Ball {
    int center;
    double radius;
    std::vector<int> elems;
    double paid = 0.0;
    int active_in = 0;
    bool open = false;
  };
  std::vector<Ball> balls;
  for (int i = 0; i < m; ++i) {
    std::vector<double> radii;
    for (int j = 0; j < m; ++j) radii.push_back(fm.at(i, j));
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    for (double r : radii) {
      Ball b;
      b.center = i;
      b.radius = r;
      for (int j = 0; j < m; ++j)
        if (fm.at(i, j) <= r) b.elems.push_back(j);
      b.active_in = static_cast<int>(b.elems.size());
      balls.push_back(std::move(b));
    }
  }
  std::vector<std::vector<int>> balls_of(static_cast<std::size_t>(m));
  for (std::size_t b = 0; b < balls.size(); ++b)
    for (int j : balls[b].elems) balls_of[static_cast<std::size_t>(j)].push_back(static_cast<int>(b));

  std::vector<char> active(static_cast<std::size_t>(m), 1);
  int covered = 0;
  std::vector<int> opened;
  while (covered < m) {
    int best = -1;
    double best_dt = kInf;
    for (std::size_t b = 0; b < balls.size(); ++b) {
      const Ball& ball = balls[b];
      if (ball.open || ball.active_in == 0) continue;
      double dt = (ball.radius + lambda - ball.paid) / ball.active_in;
      if (dt < 0.0) dt = 0.0;
      if (dt < best_dt) {
        best_dt = dt;
        best = static_cast<int>(b);
      }
    }
    if (best < 0) throw std::logic_error("dual growth stalled before covering all elements");
    for (Ball& ball : balls)
      if (!ball.open && ball.active_in > 0) ball.paid += best_dt * ball.active_in;
    Ball& win = balls[static_cast<std::size_t>(best)];
    win.open = true;
    opened.push_back(best);
    for (int j : win.elems)
      if (active[static_cast<std::size_t>(j)]) {
        active[static_cast<std::size_t>(j)] = 0;
        covered++;
        for (int b : balls_of[static_cast<std::size_t>(j)]) balls[static_cast<std::size_t>(b)].active_in--;
      }
  }

  // Prune to a disjoint family, biggest radius first.
  std::sort(opened.begin(), opened.end(), [&](int a, int b) {
    const Ball& x = balls[static_cast<std::size_t>(a)];
    const Ball& y = balls[static_cast<std::size_t>(b)];
    if (x.radius != y.radius) return x.radius > y.radius;
    if (x.center != y.center) return x.center < y.center;
    return a < b;
  });
  std::vector<char> taken(static_cast<std::size_t>(m), 0);
  std::vector<int> kept;
  for (int b : opened) {
    const Ball& ball = balls[static_cast<std::size_t>(b)];
    bool disjoint = true;
    for (int j : ball.elems)
      if (taken[static_cast<std::size_t>(j)]) {
        disjoint = false;
        break;
      }
    if (!disjoint) continue;
    for (int j : ball.elems) taken[static_cast<std::size_t>(j)] = 1;
    kept.push_back(b);
  }

  Clustering out;
  out.clusters.resize(kept.size());
  for (int j = 0; j < m; ++j) {
    int home = -1;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      const Ball& ball = balls[static_cast<std::size_t>(kept[i])];
      if (fm.at(ball.center, j) <= 3.0 * ball.radius + ulp_guard(3.0 * ball.radius)) {
        home = static_cast<int>(i);
        break;
      }
    }
    if (home < 0) {
      // Unreachable if the pruning argument holds; assign to the nearest kept
      // center rather than fail.
      double bd = kInf;
      for (std::size_t i = 0; i < kept.size(); ++i) {
        double d = fm.at(balls[static_cast<std::size_t>(kept[i])].center, j);
        if (d < bd) {
          bd = d;
          home = static_cast<int>(i);
        }
      }
    }
    out.clusters[static_cast<std::size_t>(home)].members.push_back(j);
  }
  out.clusters.erase(std::remove_if(out.clusters.begin(), out.clusters.end(),
                                    [](const Cluster& c) { return c.members.empty(); }),
                     out.clusters.end());
  finalize(out, fm);
  return out;
}

// While over budget, merge the pair whose union has the cheapest enclosing
// radius relative to the two parts it replaces.
void merge_down(Clustering& c, const FiniteMetric& fm, int k) {
  while (static_cast<int>(c.clusters.size()) > k) {
    int ba = -1, bb = -1;
    double best = kInf;
    int bc = -1;
    double br = 0.0;
    for (std::size_t a = 0; a < c.clusters.size(); ++a)
      for (std::size_t b = a + 1; b < c.clusters.size(); ++b) {
        std::vector<int> uni = c.clusters[a].members;
        uni.insert(uni.end(), c.clusters[b].members.begin(), c.clusters[b].members.end());
        std::sort(uni.begin(), uni.end());
        auto [center, radius] = min_enclosing(fm, uni);
        double score = radius - c.clusters[a].radius - c.clusters[b].radius;
        if (score < best) {
          best = score;
          ba = static_cast<int>(a);
          bb = static_cast<int>(b);
          bc = center;
          br = radius;
        }
      }
    Cluster merged;
    merged.members = c.clusters[static_cast<std::size_t>(ba)].members;
    merged.members.insert(merged.members.end(), c.clusters[static_cast<std::size_t>(bb)].members.begin(),
                          c.clusters[static_cast<std::size_t>(bb)].members.end());
    std::sort(merged.members.begin(), merged.members.end());
    merged.center = bc;
    merged.radius = br;
    c.clusters.erase(c.clusters.begin() + bb);
    c.clusters.erase(c.clusters.begin() + ba);
    c.clusters.push_back(std::move(merged));
    c.recompute_cost();
  }
}

// While under budget, peel the farthest member off whichever cluster gains
// the most from it. Splitting never increases the cost; stop at no gain.
void split_up(Clustering& c, const FiniteMetric& fm, int k) {
  while (static_cast<int>(c.clusters.size()) < k) {
    int best_cl = -1, best_member = -1, best_center = -1;
    double best_gain = 1e-15, best_radius = 0.0;
    for (std::size_t i = 0; i < c.clusters.size(); ++i) {
      const Cluster& cl = c.clusters[i];
      if (cl.members.size() < 2) continue;
      int far = cl.members[0];
      double fd = -1.0;
      for (int q : cl.members) {
        double d = fm.at(cl.center, q);
        if (d > fd) {
          fd = d;
          far = q;
        }
      }
      std::vector<int> rest;
      for (int q : cl.members)
        if (q != far) rest.push_back(q);
      auto [center, radius] = min_enclosing(fm, rest);
      double gain = cl.radius - radius;
      if (gain > best_gain) {
        best_gain = gain;
        best_cl = static_cast<int>(i);
        best_member = far;
        best_center = center;
        best_radius = radius;
      }
    }
    if (best_cl < 0) break;
    Cluster& cl = c.clusters[static_cast<std::size_t>(best_cl)];
    cl.members.erase(std::find(cl.members.begin(), cl.members.end(), best_member));
    cl.center = best_center;
    cl.radius = best_radius;
    c.clusters.push_back({{best_member}, best_member, 0.0});
    c.recompute_cost();
  }
}

}  // namespace

double FiniteMetric::max_distance() const {
  double mx = 0.0;
  for (double v : d) mx = std::max(mx, v);
  return mx;
}

FiniteMetric FiniteMetric::from_instance(const Instance& inst) {
  FiniteMetric fm;
  fm.m = inst.n;
  fm.d = inst.dist;
  return fm;
}

void Clustering::recompute_cost() {
  cost = 0.0;
  for (const Cluster& c : clusters) cost += c.radius;
}

std::pair<int, double> min_enclosing(const FiniteMetric& metric, const std::vector<int>& members) {
  if (members.empty()) throw std::logic_error("min_enclosing over an empty member set");
  int best_c = -1;
  double best_r = kInf;
  for (int c = 0; c < metric.m; ++c) {
    double r = 0.0;
    for (int q : members) r = std::max(r, metric.at(c, q));
    if (r < best_r) {
      best_r = r;
      best_c = c;
    }
  }
  return {best_c, best_r};
}

Clustering sor_exact(const FiniteMetric& metric, int k) {
  if (k < 1) throw InvalidInputError("k must be positive");
  if (metric.m > 12) throw InvalidInputError("exact solver limited to 12 elements");
  const int m = metric.m;
  Clustering out;
  if (m == 0) return out;
  if (k >= m) return singletons(metric);

  std::vector<std::vector<int>> parts;
  std::vector<double> radii;
  std::vector<int> assign(static_cast<std::size_t>(m), -1);
  std::vector<int> best_assign;
  double best_cost = kInf;

  // Restricted-growth order: element i joins an existing part or opens the
  // next one. Radii only grow as parts gain members, so a prefix already at
  // the incumbent cost cannot improve and is cut.
  auto rec = [&](auto&& self, int i, double cost) -> void {
    if (cost >= best_cost) return;
    if (i == m) {
      best_cost = cost;
      best_assign = assign;
      return;
    }
    for (std::size_t j = 0; j < parts.size(); ++j) {
      parts[j].push_back(i);
      double old_r = radii[j];
      auto [c, r] = min_enclosing(metric, parts[j]);
      (void)c;
      radii[j] = r;
      assign[static_cast<std::size_t>(i)] = static_cast<int>(j);
      self(self, i + 1, cost - old_r + r);
      radii[j] = old_r;
      parts[j].pop_back();
    }
    if (static_cast<int>(parts.size()) < k) {
      parts.push_back({i});
      radii.push_back(0.0);
      assign[static_cast<std::size_t>(i)] = static_cast<int>(parts.size()) - 1;
      self(self, i + 1, cost);
      parts.pop_back();
      radii.pop_back();
    }
    assign[static_cast<std::size_t>(i)] = -1;
  };
  rec(rec, 0, 0.0);

  int nparts = *std::max_element(best_assign.begin(), best_assign.end()) + 1;
  out.clusters.resize(static_cast<std::size_t>(nparts));
  for (int i = 0; i < m; ++i)
    out.clusters[static_cast<std::size_t>(best_assign[static_cast<std::size_t>(i)])].members.push_back(i);
  finalize(out, metric);
  return out;
}

Clustering sor_approx(const FiniteMetric& metric, int k, double epsilon) {
  if (k < 1) throw InvalidInputError("k must be positive");
  if (!(epsilon > 0.0)) throw InvalidInputError("epsilon must be positive");
  const int m = metric.m;
  Clustering best;
  if (m == 0) return best;
  if (k >= m) return singletons(metric);

  auto consider = [&](Clustering cand) {
    if (static_cast<int>(cand.clusters.size()) > k) return;
    split_up(cand, metric, k);
    if (best.clusters.empty() || cand.cost < best.cost) best = std::move(cand);
  };

  // One cluster over everything is always within budget; start from there.
  {
    Clustering all;
    Cluster c;
    for (int i = 0; i < m; ++i) c.members.push_back(i);
    all.clusters.push_back(std::move(c));
    finalize(all, metric);
    consider(std::move(all));
  }

  double lo = 0.0;
  double hi = metric.max_distance() * m + 1.0;
  Clustering over;  // cheapest over-budget cover seen, for merge-down repair
  bool have_over = false;

  for (int iter = 0; iter < 64; ++iter) {
    double lambda = iter == 0 ? 0.0 : (iter == 1 ? hi : 0.5 * (lo + hi));
    Clustering sol = dual_growth_cover(metric, lambda);
    bool feasible = static_cast<int>(sol.clusters.size()) <= k;
    if (feasible) {
      if (iter > 1) hi = lambda;
      consider(sol);
    } else {
      if (iter > 1) lo = lambda;
      if (!have_over || sol.cost < over.cost) {
        over = sol;
        have_over = true;
      }
    }
    if (iter >= 1 && have_over && !best.clusters.empty()) {
      double gap = best.cost - over.cost;
      if (gap <= epsilon * best.cost / 4.0) break;
    }
    if (iter >= 1 && hi - lo <= 1e-12 * (1.0 + metric.max_distance())) break;
  }

  if (have_over) {
    merge_down(over, metric, k);
    consider(std::move(over));
  }
  return best;
}

bool verify_clustering(const Clustering& c, const FiniteMetric& metric, int k) {
  if (static_cast<int>(c.clusters.size()) > k) return false;
  std::vector<int> seen(static_cast<std::size_t>(metric.m), 0);
  double total = 0.0;
  for (const Cluster& cl : c.clusters) {
    if (cl.members.empty()) return false;
    if (cl.center < 0 || cl.center >= metric.m) return false;
    for (int q : cl.members) {
      if (q < 0 || q >= metric.m) return false;
      seen[static_cast<std::size_t>(q)]++;
      if (metric.at(cl.center, q) > cl.radius + ulp_guard(cl.radius)) return false;
    }
    total += cl.radius;
  }
  for (int q = 0; q < metric.m; ++q)
    if (seen[static_cast<std::size_t>(q)] != 1) return false;
  return std::fabs(total - c.cost) <= 1e-9 * std::max(1.0, total);
}

Solver parse_solver(const std::string& name) {
  if (name == "exact") return Solver::Exact;
  if (name == "primal-dual") return Solver::PrimalDual;
  throw InvalidInputError("unknown solver: " + name + " (expected exact or primal-dual)");
}

std::string solver_name(Solver s) { return s == Solver::Exact ? "exact" : "primal-dual"; }

double solver_alpha(Solver s) { return s == Solver::Exact ? 1.0 : kSubroutineAlpha; }

}  // namespace fairsor
