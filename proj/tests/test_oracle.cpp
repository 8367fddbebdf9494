// Brute-force oracles vs an even dumber in-test enumerator.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "fairsor/errors.hpp"
#include "fairsor/oracle.hpp"
#include "fairsor/rng.hpp"

using namespace fairsor;

namespace {

Instance line_instance(const std::vector<double>& xs, const std::vector<int>& groups) {
    Instance inst;
    inst.n = static_cast<int>(xs.size());
    inst.group = groups;
    inst.ell = 0;
    for (int g : groups) inst.ell = std::max(inst.ell, g);
    inst.dist.assign(static_cast<std::size_t>(inst.n) * inst.n, 0.0);
    for (int i = 0; i < inst.n; ++i)
        for (int j = 0; j < inst.n; ++j)
            inst.dist[static_cast<std::size_t>(i) * inst.n + j] = std::abs(xs[i] - xs[j]);
    return inst;
}

// Enumerates every assignment of points to k labels (k^n of them, no
// canonicalization, no pruning) and keeps the cheapest accepted partition.
template <class Accept>
double dumb_best(const Instance& inst, int k, Accept accept) {
    int n = inst.n;
    std::vector<int> assign(n, 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        Clustering c;
        for (int part = 0; part < k; ++part) {
            Cluster cl;
            for (int i = 0; i < n; ++i)
                if (assign[i] == part) cl.members.push_back(i);
            if (!cl.members.empty()) c.clusters.push_back(cl);
        }
        if (accept(c)) best = std::min(best, clustering_cost(c, inst));
        int i = n - 1;
        while (i >= 0 && assign[i] == k - 1) assign[i--] = 0;
        if (i < 0) break;
        assign[i]++;
    }
    return best;
}

}  // namespace

TEST_CASE("fair oracle on two matched pairs along a line") {
    Instance inst = line_instance({0, 1, 2, 3}, {1, 2, 1, 2});
    auto res = opt_fair_bruteforce(inst, 1, 2);
    CHECK(res.cost == doctest::Approx(2.0));
    CHECK(verify_fair(res.clustering, inst, 1));
    CHECK(res.cost == doctest::Approx(clustering_cost(res.clustering, inst)));
}

TEST_CASE("fair oracle agrees with plain label enumeration") {
    Rng rng(640);
    int nonzero = 0;
    for (int trial = 0; trial < 25; ++trial) {
        int n = 4 + static_cast<int>(rng.uniform(0, 3));  // up to 7
        int t = 1 + static_cast<int>(rng.uniform(0, 2));
        int k = 1 + static_cast<int>(rng.uniform(0, 2));
        if (t == 1 && n % 2 == 1) ++n;
        Instance inst = generate_instance(1000 + trial, n, 2, GenMode::EuclideanPlane, 50.0);
        auto res = opt_fair_bruteforce(inst, t, k);
        double ref = dumb_best(inst, k, [&](const Clustering& c) { return verify_fair(c, inst, t); });
        CHECK(res.cost == doctest::Approx(ref).epsilon(1e-12));
        CHECK(verify_fair(res.clustering, inst, t));
        CHECK(res.clustering.clusters.size() <= static_cast<std::size_t>(k));
        if (res.cost > 0) ++nonzero;
    }
    CHECK(nonzero > 0);
}

TEST_CASE("balanced oracle agrees with plain label enumeration") {
    Rng rng(641);
    for (int trial = 0; trial < 15; ++trial) {
        int ell = 2 + static_cast<int>(rng.uniform(0, 1));
        int per = 2 + static_cast<int>(rng.uniform(0, 1));
        int n = ell * per;  // at most 6
        int k = 1 + static_cast<int>(rng.uniform(0, 1));
        Instance inst = generate_instance(2000 + trial, n, ell, GenMode::RandomMetric, 20.0);
        auto res = opt_balanced_bruteforce(inst, k);
        double ref = dumb_best(inst, k, [&](const Clustering& c) { return verify_balanced(c, inst); });
        CHECK(res.cost == doctest::Approx(ref).epsilon(1e-12));
        CHECK(verify_balanced(res.clustering, inst));
    }
}

TEST_CASE("fair oracle refuses unbalanceable inputs") {
    Instance inst = line_instance({0, 1, 2, 3}, {1, 2, 2, 2});
    CHECK_THROWS_AS(opt_fair_bruteforce(inst, 2, 3), InfeasibleError);
}

TEST_CASE("oracle returns the same clustering on repeated calls") {
    Instance inst = generate_instance(303, 7, 2, GenMode::EuclideanPlane, 100.0);
    auto a = opt_fair_bruteforce(inst, 2, 2);
    auto b = opt_fair_bruteforce(inst, 2, 2);
    CHECK(a.cost == b.cost);
    REQUIRE(a.clustering.clusters.size() == b.clustering.clusters.size());
    for (std::size_t i = 0; i < a.clustering.clusters.size(); ++i)
        CHECK(a.clustering.clusters[i].members == b.clustering.clusters[i].members);
}
