// Sum-of-radii solvers: exact vs an independent enumerator, and the
// primal-dual approximation against its configured factor.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "fairsor/errors.hpp"
#include "fairsor/rng.hpp"
#include "fairsor/sor.hpp"

using namespace fairsor;

namespace {

FiniteMetric random_metric(Rng& rng, int m, int wmax) {
    FiniteMetric fm;
    fm.m = m;
    fm.d.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            double w = 1.0 + static_cast<double>(rng.uniform(0, wmax - 1));
            fm.d[static_cast<std::size_t>(i) * m + j] = w;
            fm.d[static_cast<std::size_t>(j) * m + i] = w;
        }
    shortest_path_close(fm.d, m);
    return fm;
}

// Plain assignment enumeration, no pruning, no growth-string canonicalization.
// Independent of the library's enumeration strategy on purpose.
double best_partition_cost(const FiniteMetric& fm, int k) {
    int m = fm.m;
    std::vector<int> assign(m, 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        int parts = *std::max_element(assign.begin(), assign.end()) + 1;
        if (parts <= k) {
            double cost = 0.0;
            for (int part = 0; part < parts; ++part) {
                std::vector<int> members;
                for (int i = 0; i < m; ++i)
                    if (assign[i] == part) members.push_back(i);
                if (!members.empty()) cost += min_enclosing(fm, members).second;
            }
            best = std::min(best, cost);
        }
        int i = m - 1;
        while (i >= 0 && assign[i] == k - 1) assign[i--] = 0;
        if (i < 0) break;
        assign[i]++;
    }
    return best;
}

}  // namespace

TEST_CASE("min_enclosing scans all centers and breaks ties low") {
    FiniteMetric fm;
    fm.m = 3;
    fm.d = {0, 2, 2, 2, 0, 2, 2, 2, 0};
    auto [c, r] = min_enclosing(fm, {0, 1, 2});
    CHECK(c == 0);
    CHECK(r == doctest::Approx(2.0));
    auto [c1, r1] = min_enclosing(fm, {1});
    CHECK(c1 == 1);
    CHECK(r1 == doctest::Approx(0.0));
}

TEST_CASE("sor_exact equals independent enumeration on random metrics") {
    Rng rng(501);
    for (int trial = 0; trial < 40; ++trial) {
        int m = 2 + static_cast<int>(rng.uniform(0, 5));  // up to 7
        int k = 1 + static_cast<int>(rng.uniform(0, 2));
        FiniteMetric fm = random_metric(rng, m, 9);
        Clustering sol = sor_exact(fm, k);
        double ref = best_partition_cost(fm, k);
        CHECK(sol.cost == doctest::Approx(ref).epsilon(1e-12));
        CHECK(verify_clustering(sol, fm, k));
    }
}

TEST_CASE("sor_exact with budget >= m returns singletons at cost zero") {
    Rng rng(17);
    FiniteMetric fm = random_metric(rng, 6, 5);
    Clustering sol = sor_exact(fm, 6);
    CHECK(sol.cost == doctest::Approx(0.0));
    CHECK(sol.clusters.size() == 6);
    Clustering wide = sor_exact(fm, 9);
    CHECK(wide.cost == doctest::Approx(0.0));
}

TEST_CASE("sor_exact cost is monotone nonincreasing in k") {
    Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        FiniteMetric fm = random_metric(rng, 7, 11);
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 1; k <= 7; ++k) {
            double c = sor_exact(fm, k).cost;
            CHECK(c <= prev + 1e-12);
            prev = c;
        }
    }
}

TEST_CASE("sor_approx stays within the configured factor of exact") {
    Rng rng(31337);
    double worst = 0.0;
    for (int trial = 0; trial < 60; ++trial) {
        int m = 3 + static_cast<int>(rng.uniform(0, 7));  // up to 10
        int k = 1 + static_cast<int>(rng.uniform(0, 2));
        FiniteMetric fm = random_metric(rng, m, 20);
        Clustering approx = sor_approx(fm, k, 0.1);
        Clustering exact = sor_exact(fm, k);
        REQUIRE(verify_clustering(approx, fm, k));
        if (exact.cost == 0.0) {
            CHECK(approx.cost == 0.0);
        } else {
            double ratio = approx.cost / exact.cost;
            worst = std::max(worst, ratio);
            CHECK(ratio <= kSubroutineAlpha + 1e-6);
        }
    }
    CHECK(worst >= 1.0 - 1e-12);
}

TEST_CASE("sor_approx is deterministic") {
    Rng rng(8);
    FiniteMetric fm = random_metric(rng, 9, 25);
    Clustering a = sor_approx(fm, 2, 0.1);
    Clustering b = sor_approx(fm, 2, 0.1);
    CHECK(a.cost == b.cost);
    REQUIRE(a.clusters.size() == b.clusters.size());
    for (std::size_t i = 0; i < a.clusters.size(); ++i) {
        CHECK(a.clusters[i].members == b.clusters[i].members);
        CHECK(a.clusters[i].center == b.clusters[i].center);
    }
}

TEST_CASE("verify_clustering rejects malformed clusterings") {
    FiniteMetric fm;
    fm.m = 3;
    fm.d = {0, 1, 4, 1, 0, 3, 4, 3, 0};

    Clustering ok;
    ok.clusters.push_back({{0, 1}, 0, 1.0});
    ok.clusters.push_back({{2}, 2, 0.0});
    ok.recompute_cost();
    CHECK(verify_clustering(ok, fm, 2));
    CHECK_FALSE(verify_clustering(ok, fm, 1));  // too many clusters

    Clustering missing = ok;
    missing.clusters[1].members.clear();
    missing.recompute_cost();
    CHECK_FALSE(verify_clustering(missing, fm, 2));  // point 2 unassigned

    Clustering dup = ok;
    dup.clusters[1].members = {1, 2};
    dup.clusters[1].radius = 3.0;
    dup.recompute_cost();
    CHECK_FALSE(verify_clustering(dup, fm, 2));  // point 1 assigned twice

    Clustering short_radius = ok;
    short_radius.clusters[0].radius = 0.5;
    short_radius.recompute_cost();
    CHECK_FALSE(verify_clustering(short_radius, fm, 2));  // radius too small

    Clustering bad_cost = ok;
    bad_cost.cost = 99.0;
    CHECK_FALSE(verify_clustering(bad_cost, fm, 2));  // cost out of sync
}

TEST_CASE("solver names round-trip") {
    CHECK(parse_solver("exact") == Solver::Exact);
    CHECK(parse_solver("primal-dual") == Solver::PrimalDual);
    CHECK(solver_name(Solver::Exact) == "exact");
    CHECK(solver_name(Solver::PrimalDual) == "primal-dual");
    CHECK(solver_alpha(Solver::Exact) == doctest::Approx(1.0));
    CHECK(solver_alpha(Solver::PrimalDual) == doctest::Approx(kSubroutineAlpha));
    CHECK_THROWS_AS(parse_solver("greedy"), InvalidInputError);
}
