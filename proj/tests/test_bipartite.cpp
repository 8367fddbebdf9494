// Degree-constrained subgraph and matching solvers vs exhaustive references.

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "fairsor/errors.hpp"
#include "fairsor/bipartite.hpp"
#include "fairsor/rng.hpp"

using namespace fairsor;

namespace {

BipartiteGraph make_graph(int nl, int nr, const std::vector<double>& w) {
    BipartiteGraph g;
    g.left.resize(nl);
    g.right.resize(nr);
    std::iota(g.left.begin(), g.left.end(), 0);
    std::iota(g.right.begin(), g.right.end(), nl);
    g.w = w;
    return g;
}

BipartiteGraph random_graph(Rng& rng, int nl, int nr, int wmax) {
    std::vector<double> w(static_cast<std::size_t>(nl) * nr);
    for (auto& x : w) x = 1.0 + static_cast<double>(rng.uniform(0, wmax - 1));
    return make_graph(nl, nr, w);
}

double matching_bruteforce(const BipartiteGraph& g) {
    int n = static_cast<int>(g.left.size());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double c = 0.0;
        for (int i = 0; i < n; ++i) c += g.weight(i, perm[i]);
        best = std::min(best, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

TEST_CASE("min_cost_dcs matches brute force over random graphs") {
    Rng rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int nl = 1 + static_cast<int>(rng.uniform(0, 2));
        int nr = 1 + static_cast<int>(rng.uniform(0, 2));
        int t = 1 + static_cast<int>(rng.uniform(0, 1));
        BipartiteGraph g = random_graph(rng, nl, nr, 5);
        bool feasible = nl <= t * nr && nr <= t * nl;
        if (!feasible) {
            CHECK_THROWS_AS(min_cost_dcs(g, 1, t), InfeasibleError);
            CHECK_THROWS_AS(min_cost_dcs_bruteforce(g, 1, t), InfeasibleError);
            continue;
        }
        auto fast = min_cost_dcs(g, 1, t);
        auto ref = min_cost_dcs_bruteforce(g, 1, t);
        CHECK(fast.total_weight == doctest::Approx(ref.total_weight).epsilon(1e-9));
        // Degree bounds hold on every vertex.
        std::map<int, int> deg;
        for (auto& [u, v] : fast.edges) {
            deg[u]++;
            deg[v]++;
        }
        for (int u : g.left) {
            CHECK(deg[u] >= 1);
            CHECK(deg[u] <= t);
        }
        for (int v : g.right) {
            CHECK(deg[v] >= 1);
            CHECK(deg[v] <= t);
        }
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("min_cost_dcs output has no two adjacent vertices of degree two or more") {
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        int nl = 2 + static_cast<int>(rng.uniform(0, 1));
        int nr = 2 + static_cast<int>(rng.uniform(0, 1));
        BipartiteGraph g = random_graph(rng, nl, nr, 3);
        auto sol = min_cost_dcs(g, 1, 2);
        std::map<int, int> deg;
        for (auto& [u, v] : sol.edges) {
            deg[u]++;
            deg[v]++;
        }
        for (auto& [u, v] : sol.edges) {
            bool star_edge = deg[u] == 1 || deg[v] == 1;
            CHECK(star_edge);
        }
    }
}

TEST_CASE("min_cost_dcs with bounds [1,1] equals a perfect matching") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng.uniform(0, 2));
        BipartiteGraph g = random_graph(rng, n, n, 9);
        auto dcs = min_cost_dcs(g, 1, 1);
        auto match = min_weight_perfect_matching(g);
        CHECK(dcs.total_weight == doctest::Approx(match.total_weight).epsilon(1e-9));
        CHECK(dcs.edges.size() == static_cast<std::size_t>(n));
    }
}

TEST_CASE("min_weight_perfect_matching matches permutation brute force") {
    Rng rng(99);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 2 + static_cast<int>(rng.uniform(0, 3));
        BipartiteGraph g = random_graph(rng, n, n, 13);
        auto fast = min_weight_perfect_matching(g);
        double ref = matching_bruteforce(g);
        CHECK(fast.total_weight == doctest::Approx(ref).epsilon(1e-9));
        CHECK(fast.edges.size() == static_cast<std::size_t>(n));
        // The reported edges really cost the reported total.
        double readd = 0.0;
        std::vector<bool> lseen(n, false), rseen(n, false);
        for (auto& [u, v] : fast.edges) {
            int li = u, ri = v - n;
            REQUIRE(li >= 0);
            REQUIRE(li < n);
            REQUIRE(ri >= 0);
            REQUIRE(ri < n);
            CHECK_FALSE(lseen[li]);
            CHECK_FALSE(rseen[ri]);
            lseen[li] = rseen[ri] = true;
            readd += g.weight(li, ri);
        }
        CHECK(readd == doctest::Approx(fast.total_weight).epsilon(1e-9));
    }
}

TEST_CASE("min_weight_perfect_matching rejects unequal sides") {
    Rng rng(1);
    BipartiteGraph g = random_graph(rng, 2, 3, 4);
    CHECK_THROWS_AS(min_weight_perfect_matching(g), InvalidInputError);
}

TEST_CASE("dcs picks the cheap zero-weight pairing when one exists") {
    // left {0,1}, right {2,3}; zero edges on the diagonal pairing.
    BipartiteGraph g = make_graph(2, 2, {0.0, 5.0, 5.0, 0.0});
    auto sol = min_cost_dcs(g, 1, 2);
    CHECK(sol.total_weight == doctest::Approx(0.0));
    CHECK(sol.edges.size() == 2);
}
