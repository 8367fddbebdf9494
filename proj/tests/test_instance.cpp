// Instance construction, metric validation, rounding, and the generator.

#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "fairsor/errors.hpp"
#include "fairsor/instance.hpp"

using namespace fairsor;

TEST_CASE("round9 rounds half away from zero at nine decimals") {
    CHECK(round9(1.0000000004) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(round9(1.0000000006) == doctest::Approx(1.000000001).epsilon(1e-15));
    CHECK(round9(-2.5e-9) == doctest::Approx(-3e-9).epsilon(1e-15));
    CHECK(round9(0.0) == 0.0);
    CHECK(round9(123.123456789) == doctest::Approx(123.123456789).epsilon(1e-15));
}

TEST_CASE("shortest_path_close produces a triangle-clean matrix") {
    // Direct edge 0-2 is overpriced; the closure must route through 1.
    std::vector<double> d = {
        0, 1, 5,
        1, 0, 1,
        5, 1, 0,
    };
    shortest_path_close(d, 3);
    CHECK(d[0 * 3 + 2] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(d[2 * 3 + 0] == doctest::Approx(2.0).epsilon(1e-15));
    Instance inst;
    inst.n = 3;
    inst.group = {1, 2, 1};
    inst.ell = 2;
    inst.dist = d;
    auto viols = validate_metric(inst, 0.0);
    CHECK(viols.empty());
}

TEST_CASE("validate_metric flags asymmetry, diagonal, and triangle breaks") {
    Instance inst;
    inst.n = 3;
    inst.group = {1, 2, 1};
    inst.ell = 2;

    inst.dist = {0, 1, 3, 1, 0, 1, 3, 1, 0};
    CHECK_FALSE(validate_metric(inst, 0.0).empty());  // 3 > 1 + 1

    inst.dist = {0, 1, 2, 2, 0, 1, 2, 1, 0};
    CHECK_FALSE(validate_metric(inst, 0.0).empty());  // asymmetric

    inst.dist = {0.5, 1, 2, 1, 0, 1, 2, 1, 0};
    CHECK_FALSE(validate_metric(inst, 0.0).empty());  // nonzero diagonal

    inst.dist = {0, 1, 2, 1, 0, 1, 2, 1, 0};
    CHECK(validate_metric(inst, 0.0).empty());
}

TEST_CASE("generated euclidean instances are valid after rounding") {
    for (unsigned seed : {1u, 2u, 9u, 1234u}) {
        Instance inst = generate_instance(seed, 9, 2, GenMode::EuclideanPlane, 100.0);
        CHECK(inst.n == 9);
        CHECK(inst.coords.size() == 9);
        validate_groups(inst);
        CHECK(validate_metric(inst, 0.0).empty());
        // Collinear-ish points plus rounding must not break the triangle
        // inequality because the generator closes the matrix.
        for (int i = 0; i < inst.n; ++i)
            for (int j = 0; j < inst.n; ++j)
                CHECK(inst.d(i, j) == round9(inst.d(i, j)));
    }
}

TEST_CASE("generated random-metric instances are valid") {
    for (unsigned seed : {3u, 77u}) {
        Instance inst = generate_instance(seed, 8, 3, GenMode::RandomMetric, 50.0);
        CHECK(inst.n == 8);
        CHECK(inst.coords.empty());
        CHECK(validate_metric(inst, 0.0).empty());
    }
}

TEST_CASE("generator assigns groups round robin so sizes differ by at most one") {
    Instance a = generate_instance(5, 10, 3, GenMode::EuclideanPlane, 100.0);
    auto sizes = a.group_sizes();
    REQUIRE(sizes.size() == 4);
    int lo = sizes[1], hi = sizes[1];
    for (int g = 1; g <= a.ell; ++g) {
        lo = std::min(lo, sizes[g]);
        hi = std::max(hi, sizes[g]);
    }
    CHECK(hi - lo <= 1);
    CHECK(sizes[1] + sizes[2] + sizes[3] == 10);
}

TEST_CASE("generator is deterministic per seed and differs across seeds") {
    Instance a = generate_instance(42, 7, 2, GenMode::EuclideanPlane, 100.0);
    Instance b = generate_instance(42, 7, 2, GenMode::EuclideanPlane, 100.0);
    Instance c = generate_instance(43, 7, 2, GenMode::EuclideanPlane, 100.0);
    REQUIRE(a.n == b.n);
    bool same = true, same_c = true;
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) {
            same = same && a.d(i, j) == b.d(i, j);
            same_c = same_c && a.d(i, j) == c.d(i, j);
        }
    CHECK(same);
    CHECK_FALSE(same_c);
    CHECK(a.group == b.group);
}

TEST_CASE("parse_gen_mode accepts the two documented names") {
    CHECK(parse_gen_mode("euclidean-plane") == GenMode::EuclideanPlane);
    CHECK(parse_gen_mode("random-metric") == GenMode::RandomMetric);
    CHECK_THROWS_AS(parse_gen_mode("grid"), InvalidInputError);
}

TEST_CASE("group_sizes and group_members agree") {
    Instance inst = generate_instance(8, 9, 3, GenMode::RandomMetric, 10.0);
    auto sizes = inst.group_sizes();
    for (int g = 1; g <= inst.ell; ++g) {
        auto members = inst.group_members(g);
        CHECK((long)members.size() == sizes[g]);
        for (int p : members) CHECK(inst.group[p] == g);
    }
}
