#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "synthmot/boids.hpp"
#include "synthmot/rng.hpp"
#include "synthmot/sampling.hpp"

using namespace synthmot;
using boids::FishState;
using boids::SchoolState;

namespace {

SchoolState random_school(Rng& rng, int n, double spread) {
    SchoolState s;
    for (int i = 0; i < n; ++i) {
        FishState f;
        f.id = i + 1;
        f.position = {rng.uniform(-spread, spread), rng.uniform(-spread, spread),
                      rng.uniform(-spread, spread)};
        f.heading = rng.unit_vector();
        f.velocity = f.heading * rng.uniform(0.05, 0.4);
        s.fishes.push_back(f);
    }
    return s;
}

double mean_pairwise_distance(const SchoolState& s) {
    double sum = 0.0;
    int pairs = 0;
    for (size_t i = 0; i < s.fishes.size(); ++i) {
        for (size_t j = i + 1; j < s.fishes.size(); ++j) {
            sum += (s.fishes[i].position - s.fishes[j].position).norm();
            ++pairs;
        }
    }
    return sum / pairs;
}

}  // namespace

TEST_SUITE("boids") {

TEST_CASE("neighborhood matches brute force") {
    Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        SchoolState school = random_school(rng, 15, 1.5);
        double radius = rng.uniform(0.3, 2.0);
        for (const FishState& subject : school.fishes) {
            auto got = boids::neighborhood(subject, school, radius);
            std::set<int> got_ids;
            for (const auto& f : got) got_ids.insert(f.id);
            std::set<int> want_ids;
            for (const auto& f : school.fishes) {
                if (f.id == subject.id) continue;
                if ((f.position - subject.position).norm() <= radius) want_ids.insert(f.id);
            }
            CHECK(got_ids == want_ids);
        }
    }
}

TEST_CASE("neighborhood radius is inclusive and excludes self") {
    SchoolState school;
    FishState a;
    a.id = 1;
    a.position = {0, 0, 0};
    FishState b = a;
    b.id = 2;
    b.position = {1.0, 0, 0};
    school.fishes = {a, b};
    auto n = boids::neighborhood(a, school, 1.0);
    REQUIRE(n.size() == 1);
    CHECK(n[0].id == 2);
    CHECK(boids::neighborhood(a, school, 0.999).empty());
}

TEST_CASE("compute_forces hand case") {
    FishState subject;
    subject.id = 1;
    subject.position = {0, 0, 0};
    subject.velocity = {0.1, 0, 0};
    subject.heading = {1, 0, 0};

    FishState n1;
    n1.id = 2;
    n1.position = {1, 0, 0};
    n1.velocity = {0, 0.2, 0};
    n1.heading = {0, 1, 0};

    FishState n2;
    n2.id = 3;
    n2.position = {0, 2, 0};
    n2.velocity = {0.3, 0, 0};
    n2.heading = {1, 0, 0};

    auto f = boids::compute_forces(subject, {n1, n2});

    // separation: normalize((-1,0,0)/1 + (0,-2,0)/4) = normalize(-1,-0.5,0)
    Vec3 sep_want = Vec3{-1.0, -0.5, 0.0}.normalized();
    CHECK((f.separation - sep_want).norm() < 1e-12);
    // cohesion: toward centroid (0.5, 1, 0)
    Vec3 coh_want = Vec3{0.5, 1.0, 0.0}.normalized();
    CHECK((f.cohesion - coh_want).norm() < 1e-12);
    // alignment: mean velocity (0.15, 0.1, 0) relative to own (0.1, 0, 0)
    Vec3 ali_want = Vec3{0.05, 0.1, 0.0}.normalized();
    CHECK((f.alignment - ali_want).norm() < 1e-12);
    // leader: n2's heading is the closest to the subject's
    CHECK((f.leader - Vec3{1, 0, 0}).norm() < 1e-12);
}

TEST_CASE("leader tie breaks to the lowest id") {
    FishState subject;
    subject.id = 1;
    subject.heading = {1, 0, 0};
    FishState n1;
    n1.id = 5;
    n1.position = {1, 0, 0};
    n1.heading = {0, 1, 0};
    FishState n2 = n1;
    n2.id = 3;
    n2.position = {0, 1, 0};
    n2.heading = {0, 1, 0};
    // Equal heading dot; id 3 must win regardless of argument order.
    auto f = boids::compute_forces(subject, {n1, n2});
    auto g = boids::compute_forces(subject, {n2, n1});
    CHECK((f.leader - n2.heading).norm() < 1e-12);
    CHECK((g.leader - n2.heading).norm() < 1e-12);
}

TEST_CASE("coincident neighbors stay finite") {
    FishState subject;
    subject.id = 1;
    subject.position = {0.5, 0.5, 0.5};
    FishState twin = subject;
    twin.id = 2;
    auto f = boids::compute_forces(subject, {twin});
    CHECK(std::isfinite(f.separation.x));
    CHECK((f.separation - Vec3{1, 0, 0}).norm() < 1e-12);
    CHECK(f.cohesion.norm() < 1e-12);  // centroid coincides with the subject
}

TEST_CASE("force components are unit or zero") {
    Rng rng(22);
    for (int trial = 0; trial < 100; ++trial) {
        SchoolState school = random_school(rng, 8, 1.0);
        auto neigh = boids::neighborhood(school.fishes[0], school, 2.0);
        auto f = boids::compute_forces(school.fishes[0], neigh);
        for (const Vec3& v : {f.separation, f.cohesion, f.alignment, f.leader}) {
            double n = v.norm();
            CHECK((n < 1e-9 || std::abs(n - 1.0) < 1e-9));
        }
    }
}

TEST_CASE("no neighbors, no forces") {
    FishState lone;
    lone.id = 1;
    auto f = boids::compute_forces(lone, {});
    CHECK(f.separation.norm() == 0.0);
    CHECK(f.cohesion.norm() == 0.0);
    CHECK(f.alignment.norm() == 0.0);
    CHECK(f.leader.norm() == 0.0);
}

TEST_CASE("steering is clamped to max_force") {
    boids::ForceComponents f;
    f.separation = {1, 0, 0};
    f.cohesion = {1, 0, 0};
    f.alignment = {1, 0, 0};
    f.leader = {1, 0, 0};
    boids::BoidWeights w;
    w.separation = w.cohesion = w.alignment = w.leader = 10.0;
    w.max_force = 2.0;
    CHECK(boids::steering(f, w).norm() == doctest::Approx(2.0));
    // Below the cap the weighted sum passes through unchanged.
    w.separation = 0.5;
    w.cohesion = w.alignment = w.leader = 0.0;
    CHECK((boids::steering(f, w) - Vec3{0.5, 0, 0}).norm() < 1e-12);
}

TEST_CASE("boundary repulsion hand values") {
    Box3 bounds{{0, 0, 0}, {10, 10, 10}};  // margin = 1 on every axis
    double mf = 2.0;
    CHECK(boids::boundary_repulsion({5, 5, 5}, bounds, mf).norm() == 0.0);
    auto low = boids::boundary_repulsion({0.5, 5, 5}, bounds, mf);
    CHECK(low.x == doctest::Approx(mf * 0.5));
    CHECK(low.y == 0.0);
    auto high = boids::boundary_repulsion({5, 9.8, 5}, bounds, mf);
    CHECK(high.y == doctest::Approx(-mf * 0.8));
    // Past the wall the push keeps growing.
    auto outside = boids::boundary_repulsion({-1.0, 5, 5}, bounds, mf);
    CHECK(outside.x > mf);
}

TEST_CASE("step keeps speed clamped and headings unit") {
    Rng rng(23);
    boids::BoidWeights w;
    Box3 bounds{{-2, -2, -2}, {2, 2, 2}};
    for (int trial = 0; trial < 20; ++trial) {
        SchoolState s = random_school(rng, 10, 1.5);
        for (int t = 0; t < 50; ++t) {
            s = boids::step(s, w, bounds, 1.0 / 15.0);
            for (const FishState& f : s.fishes) {
                double speed = f.velocity.norm();
                CHECK(speed >= w.min_speed - 1e-12);
                CHECK(speed <= w.max_speed + 1e-12);
                CHECK(std::abs(f.heading.norm() - 1.0) < 1e-9);
            }
        }
        CHECK(s.frame_index == 50);
    }
}

TEST_CASE("step is deterministic") {
    Rng rng(24);
    SchoolState s = random_school(rng, 12, 1.0);
    boids::BoidWeights w;
    Box3 bounds{{-3, -3, -3}, {3, 3, 3}};
    SchoolState a = s, b = s;
    for (int t = 0; t < 30; ++t) {
        a = boids::step(a, w, bounds, 1.0 / 15.0);
        b = boids::step(b, w, bounds, 1.0 / 15.0);
    }
    REQUIRE(a.fishes.size() == b.fishes.size());
    for (size_t i = 0; i < a.fishes.size(); ++i) {
        CHECK(a.fishes[i].position == b.fishes[i].position);
        CHECK(a.fishes[i].velocity == b.fishes[i].velocity);
    }
}

TEST_CASE("cohesion-only schools contract") {
    boids::BoidWeights w;
    w.separation = 0.0;
    w.cohesion = 1.0;
    w.alignment = 0.0;
    w.leader = 0.0;
    w.neighborhood_radius = 10.0;           // everyone sees everyone
    Box3 bounds{{-50, -50, -50}, {50, 50, 50}};  // boundary force stays zero
    for (uint64_t seed = 0; seed < 20; ++seed) {
        Rng rng(derive_seed(100, seed));
        SchoolState s = random_school(rng, 12, 1.0);
        double before = mean_pairwise_distance(s);
        for (int t = 0; t < 150; ++t) s = boids::step(s, w, bounds, 1.0 / 15.0);
        double after = mean_pairwise_distance(s);
        CHECK(after < before);
    }
}

TEST_CASE("sampled parameters land in their configured ranges") {
    SequenceConfig cfg;
    cfg.master_seed = 99;
    for (int idx = 0; idx < 10; ++idx) {
        auto p = sample_sequence_params(cfg, idx);
        CHECK(cfg.fish_count_range.contains(p.fish_count));
        CHECK(static_cast<int>(p.fish_initial_poses.size()) == p.fish_count);
        CHECK(cfg.boid_weight_ranges.separation.contains(p.boid_weights.separation));
        CHECK(cfg.boid_weight_ranges.cohesion.contains(p.boid_weights.cohesion));
        CHECK(cfg.boid_weight_ranges.alignment.contains(p.boid_weights.alignment));
        CHECK(cfg.boid_weight_ranges.leader.contains(p.boid_weights.leader));
        for (const auto& pose : p.fish_initial_poses) {
            CHECK(cfg.fish_scale_range.contains(pose.scale));
            CHECK(pose.position.x >= cfg.world_bounds.min.x);
            CHECK(pose.position.x <= cfg.world_bounds.max.x);
            CHECK(pose.position.z >= cfg.world_bounds.min.z);
            CHECK(pose.position.z <= cfg.world_bounds.max.z);
            CHECK(std::abs(pose.heading.norm() - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("simulate is a pure function of its inputs") {
    SequenceConfig cfg;
    cfg.master_seed = 7;
    auto params = sample_sequence_params(cfg, 0);
    auto a = boids::simulate(params, cfg);
    auto b = boids::simulate(params, cfg);
    REQUIRE(a.size() == static_cast<size_t>(cfg.frame_count));
    REQUIRE(b.size() == a.size());
    for (size_t f = 0; f < a.size(); ++f) {
        REQUIRE(a[f].fishes.size() == b[f].fishes.size());
        for (size_t i = 0; i < a[f].fishes.size(); ++i) {
            CHECK(a[f].fishes[i].position == b[f].fishes[i].position);
        }
    }
}

TEST_CASE("retired fish never return") {
    SequenceConfig cfg;
    cfg.master_seed = 31;
    auto params = sample_sequence_params(cfg, 2);
    auto frames = boids::simulate(params, cfg);
    std::set<int> prev;
    for (const auto& f : frames[0].fishes) prev.insert(f.id);
    for (const auto& frame : frames) {
        std::set<int> cur;
        for (const auto& f : frame.fishes) cur.insert(f.id);
        for (int id : cur) CHECK(prev.count(id) == 1);  // cur is a subset of prev
        prev = cur;
    }
}

}  // TEST_SUITE
