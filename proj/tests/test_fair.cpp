// End-to-end fair and balanced pipelines plus their verifiers.

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "fairsor/errors.hpp"
#include "fairsor/fair.hpp"
#include "fairsor/oracle.hpp"

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

}  // namespace

TEST_CASE("parse_balance_parameter accepts integers and rejects the rest") {
    CHECK(parse_balance_parameter("2") == 2);
    CHECK(parse_balance_parameter(" 3 ") == 3);
    CHECK(parse_balance_parameter("10") == 10);
    CHECK_THROWS_AS(parse_balance_parameter("1.5"), InvalidInputError);
    CHECK_THROWS_AS(parse_balance_parameter("x"), InvalidInputError);
    CHECK_THROWS_AS(parse_balance_parameter(""), InvalidInputError);
    CHECK_THROWS_AS(parse_balance_parameter("2x"), InvalidInputError);
    CHECK_THROWS_AS(parse_balance_parameter("-1"), InvalidInputError);
    CHECK_THROWS_AS(parse_balance_parameter("0"), InvalidInputError);
}

TEST_CASE("verify_fair counts per cluster with integer arithmetic") {
    Instance inst = line_instance({0, 1, 2, 3}, {1, 1, 2, 2});
    Clustering c;
    c.clusters.push_back({{0, 2}, 0, 2.0});
    c.clusters.push_back({{1, 3}, 1, 2.0});
    c.recompute_cost();
    CHECK(verify_fair(c, inst, 1));

    Clustering lop;
    lop.clusters.push_back({{0, 1, 2}, 0, 2.0});
    lop.clusters.push_back({{3}, 3, 0.0});
    lop.recompute_cost();
    CHECK_FALSE(verify_fair(lop, inst, 1));  // 2 reds vs 1 blue, and a bare blue
    CHECK(verify_fair(lop, inst, 2) == false);  // {3} still has no red at all

    Clustering two_to_one;
    two_to_one.clusters.push_back({{0, 1, 2, 3}, 0, 3.0});
    two_to_one.recompute_cost();
    CHECK(verify_fair(two_to_one, inst, 1));
    Instance skew = line_instance({0, 1, 2}, {1, 1, 2});
    Clustering all3;
    all3.clusters.push_back({{0, 1, 2}, 0, 2.0});
    all3.recompute_cost();
    CHECK_FALSE(verify_fair(all3, skew, 1));
    CHECK(verify_fair(all3, skew, 2));
}

TEST_CASE("verify_balanced needs equal counts from every group") {
    Instance inst = line_instance({0, 1, 2, 3, 4, 5}, {1, 2, 3, 1, 2, 3});
    Clustering c;
    c.clusters.push_back({{0, 1, 2}, 0, 2.0});
    c.clusters.push_back({{3, 4, 5}, 3, 2.0});
    c.recompute_cost();
    CHECK(verify_balanced(c, inst));

    Clustering skew;
    skew.clusters.push_back({{0, 1, 2, 4}, 0, 4.0});
    skew.clusters.push_back({{3, 5}, 3, 2.0});
    skew.recompute_cost();
    CHECK_FALSE(verify_balanced(skew, inst));
}

TEST_CASE("a matched red-blue pair clusters at the pair diameter") {
    Instance inst = line_instance({0.0, 3.0}, {1, 2});
    auto res = fair_tk_cluster(inst, 1, 1, Solver::Exact, 0.1);
    CHECK(res.fairness_ok);
    CHECK(res.cost == doctest::Approx(3.0));
    CHECK(res.expansion_ratio == doctest::Approx(1.0));
    REQUIRE(res.clustering.clusters.size() == 1);
    CHECK(res.clustering.clusters[0].members == std::vector<int>{0, 1});
    auto opt = opt_fair_bruteforce(inst, 1, 1);
    CHECK(opt.cost == doctest::Approx(3.0));
}

TEST_CASE("colocated pairs cost nothing end to end") {
    Instance inst = line_instance({4.0, 4.0, 4.0, 4.0}, {1, 2, 1, 2});
    for (Solver s : {Solver::Exact, Solver::PrimalDual}) {
        auto res = fair_tk_cluster(inst, 1, 2, s, 0.1);
        CHECK(res.cost == doctest::Approx(0.0));
        CHECK(res.fairness_ok);
        CHECK(res.dcs_weight == doctest::Approx(0.0));
    }
}

TEST_CASE("fair_tk_cluster rejects groups that no partition can balance") {
    Instance inst = line_instance({0, 1, 2, 3}, {1, 2, 2, 2});
    CHECK_THROWS_AS(fair_tk_cluster(inst, 2, 2, Solver::Exact, 0.1), InfeasibleError);
    CHECK_THROWS_AS(opt_fair_bruteforce(inst, 2, 2), InfeasibleError);
    // t = 3 makes the same sizes workable.
    auto res = fair_tk_cluster(inst, 3, 1, Solver::Exact, 0.1);
    CHECK(res.fairness_ok);
}

TEST_CASE("fair_tk_cluster requires exactly two groups") {
    Instance inst = line_instance({0, 1, 2}, {1, 2, 3});
    CHECK_THROWS_AS(fair_tk_cluster(inst, 1, 1, Solver::Exact, 0.1), InvalidInputError);
}

TEST_CASE("balanced_cluster handles colocated triples exactly") {
    Instance inst = line_instance({1, 1, 1, 9, 9, 9}, {1, 2, 3, 1, 2, 3});
    auto res = balanced_cluster(inst, 2, Solver::Exact, 0.1);
    CHECK(res.cost == doctest::Approx(0.0));
    CHECK(res.clustering.clusters.size() == 2);
    CHECK(verify_balanced(res.clustering, inst));
    auto opt = opt_balanced_bruteforce(inst, 2);
    CHECK(opt.cost == doctest::Approx(0.0));
}

TEST_CASE("balanced_cluster rejects unequal group sizes") {
    Instance inst = line_instance({0, 1, 2, 3, 4}, {1, 2, 3, 1, 2});
    CHECK_THROWS_AS(balanced_cluster(inst, 2, Solver::Exact, 0.1), GroupSizesUnequalError);
    CHECK_THROWS_AS(opt_balanced_bruteforce(inst, 2), GroupSizesUnequalError);
}

TEST_CASE("pipelines are deterministic across repeated runs") {
    Instance inst = generate_instance(77, 8, 2, GenMode::EuclideanPlane, 100.0);
    auto a = fair_tk_cluster(inst, 2, 2, Solver::PrimalDual, 0.1);
    auto b = fair_tk_cluster(inst, 2, 2, Solver::PrimalDual, 0.1);
    CHECK(a.cost == b.cost);
    CHECK(a.dcs_weight == b.dcs_weight);
    REQUIRE(a.clustering.clusters.size() == b.clustering.clusters.size());
    for (std::size_t i = 0; i < a.clustering.clusters.size(); ++i)
        CHECK(a.clustering.clusters[i].members == b.clustering.clusters[i].members);

    Instance bal = generate_instance(78, 9, 3, GenMode::RandomMetric, 50.0);
    auto c = balanced_cluster(bal, 2, Solver::Exact, 0.1);
    auto d = balanced_cluster(bal, 2, Solver::Exact, 0.1);
    CHECK(c.cost == d.cost);
    CHECK(c.dcs_weight == d.dcs_weight);
}

TEST_CASE("pipeline output respects the cluster budget and stored cost") {
    Instance inst = generate_instance(5, 10, 2, GenMode::EuclideanPlane, 100.0);
    for (int k : {1, 2, 3}) {
        auto res = fair_tk_cluster(inst, 1, k, Solver::Exact, 0.1);
        CHECK(res.clustering.clusters.size() <= static_cast<std::size_t>(k));
        CHECK(res.fairness_ok);
        CHECK(res.cost == doctest::Approx(clustering_cost(res.clustering, inst)).epsilon(1e-9));
    }
}
