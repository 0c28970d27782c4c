#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "synthmot/rng.hpp"

using namespace synthmot;

TEST_SUITE("rng") {

TEST_CASE("same seed, same stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("derived seeds are distinct and stable") {
    std::set<uint64_t> seen;
    for (uint64_t s = 0; s < 16; ++s) seen.insert(derive_seed(7, s));
    CHECK(seen.size() == 16);
    CHECK(derive_seed(7, 3) == derive_seed(7, 3));
    CHECK(derive_seed(7, 3) != derive_seed(8, 3));
}

TEST_CASE("uniform stays in [0,1) with sane mean") {
    Rng rng(1);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("uniform range endpoints") {
    Rng rng(2);
    for (int i = 0; i < 1000; ++i) {
        double u = rng.uniform(-3.0, 5.0);
        REQUIRE(u >= -3.0);
        REQUIRE(u < 5.0);
    }
}

TEST_CASE("uniform_int inclusive on both ends") {
    Rng rng(3);
    std::set<int64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        int64_t v = rng.uniform_int(2, 5);
        REQUIRE(v >= 2);
        REQUIRE(v <= 5);
        seen.insert(v);
    }
    CHECK(seen.size() == 4);  // all four values show up in 1000 draws
    CHECK(rng.uniform_int(7, 7) == 7);
}

TEST_CASE("gaussian moments") {
    Rng rng(4);
    const int n = 100000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        double g = rng.gaussian();
        sum += g;
        sq += g * g;
    }
    double mean = sum / n;
    double var = sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.03);
    double shifted = 0.0;
    for (int i = 0; i < n; ++i) shifted += rng.gaussian(10.0, 0.5);
    CHECK(std::abs(shifted / n - 10.0) < 0.02);
}

TEST_CASE("poisson mean and edge cases") {
    Rng rng(5);
    const int n = 100000;
    int64_t total = 0;
    for (int i = 0; i < n; ++i) {
        int k = rng.poisson(3.0);
        REQUIRE(k >= 0);
        total += k;
    }
    CHECK(std::abs(static_cast<double>(total) / n - 3.0) < 0.05);
    CHECK(rng.poisson(0.0) == 0);
    CHECK(rng.poisson(-1.0) == 0);
}

TEST_CASE("unit_vector has unit norm and no directional bias") {
    Rng rng(6);
    const int n = 100000;
    Vec3 mean;
    for (int i = 0; i < n; ++i) {
        Vec3 v = rng.unit_vector();
        REQUIRE(std::abs(v.norm() - 1.0) < 1e-12);
        mean += v;
    }
    mean = mean / n;
    CHECK(std::abs(mean.x) < 0.02);
    CHECK(std::abs(mean.y) < 0.02);
    CHECK(std::abs(mean.z) < 0.02);
}

}  // TEST_SUITE
