#include <doctest.h>

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "synthmot/errors.hpp"
#include "synthmot/metrics.hpp"
#include "synthmot/rng.hpp"
#include "synthmot/tracker.hpp"
#include "test_util.hpp"

using namespace synthmot;
using metrics::Detection;
using metrics::FrameData;
using testutil::TempDir;
using tracker::CorruptionParams;
using tracker::DetectionFrames;
using tracker::TrackerParams;

namespace {

FrameData parallel_tracks(int tracks, int frames, double step) {
    FrameData fd(static_cast<size_t>(frames));
    for (int t = 0; t < tracks; ++t) {
        for (int f = 0; f < frames; ++f) {
            fd[static_cast<size_t>(f)].push_back(
                {t + 1, {100.0 * t + step * f, 50.0, 30.0, 30.0}});
        }
    }
    return fd;
}

int64_t count_dets(const DetectionFrames& frames) {
    int64_t n = 0;
    for (const auto& f : frames) n += static_cast<int64_t>(f.size());
    return n;
}

}  // namespace

TEST_SUITE("tracker") {

TEST_CASE("no corruption passes detections through") {
    FrameData gt = parallel_tracks(3, 10, 2.0);
    CorruptionParams params;  // all zero
    auto det = tracker::corrupt_detections(gt, params, 1920, 1080);
    REQUIRE(det.size() == gt.size());
    for (size_t f = 0; f < gt.size(); ++f) {
        REQUIRE(det[f].size() == gt[f].size());
        for (size_t i = 0; i < gt[f].size(); ++i) {
            CHECK(det[f][i] == gt[f][i].box);
        }
    }
}

TEST_CASE("drop rate concentrates around its expectation") {
    FrameData gt = parallel_tracks(10, 100, 0.0);  // 1000 detections
    CorruptionParams params;
    params.drop_probability = 0.3;
    params.seed = 9;
    auto det = tracker::corrupt_detections(gt, params, 1920, 1080);
    int64_t kept = count_dets(det);
    // Binomial(1000, 0.7): sd ~ 14.5; allow 5 sigma.
    CHECK(kept > 700 - 73);
    CHECK(kept < 700 + 73);
}

TEST_CASE("jitter perturbs but keeps boxes plausible") {
    FrameData gt = parallel_tracks(5, 40, 1.0);
    CorruptionParams params;
    params.jitter_sigma = 2.0;
    params.seed = 10;
    auto det = tracker::corrupt_detections(gt, params, 1920, 1080);
    int64_t moved = 0;
    for (size_t f = 0; f < gt.size(); ++f) {
        REQUIRE(det[f].size() == gt[f].size());
        for (size_t i = 0; i < det[f].size(); ++i) {
            CHECK(det[f][i].width >= 1.0);
            CHECK(det[f][i].height >= 1.0);
            if (!(det[f][i] == gt[f][i].box)) ++moved;
        }
    }
    CHECK(moved > 150);  // 200 boxes, virtually all should move
}

TEST_CASE("false positives arrive at the configured rate, inside the image") {
    FrameData gt(500);  // no real detections at all
    for (auto& f : gt) f.push_back({1, {10, 10, 20, 20}});
    CorruptionParams params;
    params.drop_probability = 1.0;  // remove the real box
    params.false_positive_rate = 2.0;
    params.seed = 11;
    auto det = tracker::corrupt_detections(gt, params, 640, 480);
    int64_t n = count_dets(det);
    // Poisson(1000): sd ~ 31.6; allow 5 sigma.
    CHECK(n > 1000 - 158);
    CHECK(n < 1000 + 158);
    for (const auto& frame : det) {
        for (const auto& box : frame) {
            CHECK(box.left >= 0.0);
            CHECK(box.top >= 0.0);
            CHECK(box.right() <= 640.0);
            CHECK(box.bottom() <= 480.0);
            CHECK(box.width >= 1.0);
        }
    }
}

TEST_CASE("corruption is deterministic in the seed") {
    FrameData gt = parallel_tracks(4, 20, 1.5);
    CorruptionParams params;
    params.drop_probability = 0.2;
    params.jitter_sigma = 1.0;
    params.false_positive_rate = 0.5;
    params.seed = 12;
    auto a = tracker::corrupt_detections(gt, params, 1920, 1080);
    auto b = tracker::corrupt_detections(gt, params, 1920, 1080);
    CHECK(a == b);
    params.seed = 13;
    CHECK_FALSE(tracker::corrupt_detections(gt, params, 1920, 1080) == a);
}

TEST_CASE("corruption parameter validation") {
    FrameData gt = parallel_tracks(1, 2, 0.0);
    CorruptionParams params;
    params.drop_probability = 1.5;
    CHECK_THROWS_AS(tracker::corrupt_detections(gt, params, 1920, 1080), ValidationError);
    params.drop_probability = 0.0;
    params.jitter_sigma = -1.0;
    CHECK_THROWS_AS(tracker::corrupt_detections(gt, params, 1920, 1080), ValidationError);
    params.jitter_sigma = 0.0;
    params.false_positive_rate = -0.1;
    CHECK_THROWS_AS(tracker::corrupt_detections(gt, params, 1920, 1080), ValidationError);
}

TEST_CASE("perfect detections track perfectly") {
    FrameData gt = parallel_tracks(4, 30, 2.0);
    DetectionFrames det;
    for (const auto& frame : gt) {
        std::vector<Bbox> boxes;
        for (const auto& d : frame) boxes.push_back(d.box);
        det.push_back(boxes);
    }
    TrackerParams params;
    auto tracks = tracker::track_sequence(det, params);
    auto mota = metrics::clear_mota(gt, tracks);
    CHECK(mota.mota == doctest::Approx(1.0));
    CHECK(mota.idsw == 0);
    CHECK(metrics::idf1(gt, tracks).idf1 == doctest::Approx(1.0));
    CHECK(metrics::hota(gt, tracks).hota == doctest::Approx(1.0));
}

TEST_CASE("ids are stable and fresh ids increase") {
    DetectionFrames det(3);
    det[0] = {{10, 10, 20, 20}};
    det[1] = {{12, 10, 20, 20}, {300, 10, 20, 20}};
    det[2] = {{14, 10, 20, 20}, {302, 10, 20, 20}};
    auto tracks = tracker::track_sequence(det, {});
    REQUIRE(tracks.size() == 3);
    REQUIRE(tracks[0].size() == 1);
    CHECK(tracks[0][0].id == 1);
    REQUIRE(tracks[1].size() == 2);
    std::set<int> frame2_ids;
    for (const auto& d : tracks[1]) frame2_ids.insert(d.id);
    CHECK(frame2_ids == std::set<int>{1, 2});
    for (const auto& d : tracks[2]) frame2_ids.erase(d.id);
    CHECK(frame2_ids.empty());  // same two ids carry into frame 3
}

TEST_CASE("the gate rejects weak matches") {
    DetectionFrames det(2);
    det[0] = {{0, 0, 10, 10}};
    det[1] = {{100, 100, 10, 10}};  // nowhere near the track
    TrackerParams params;
    params.iou_gate = 0.3;
    auto tracks = tracker::track_sequence(det, params);
    CHECK(tracks[0][0].id == 1);
    CHECK(tracks[1][0].id == 2);  // new identity, not a forced match
}

TEST_CASE("coasting bridges a missed frame") {
    DetectionFrames det(3);
    det[0] = {{10, 10, 20, 20}};
    det[1] = {};
    det[2] = {{11, 10, 20, 20}};
    SUBCASE("without coasting the id changes") {
        TrackerParams params;
        params.max_missed_frames = 0;
        auto tracks = tracker::track_sequence(det, params);
        CHECK(tracks[2][0].id == 2);
    }
    SUBCASE("with max_missed_frames = 1 the id survives") {
        TrackerParams params;
        params.max_missed_frames = 1;
        auto tracks = tracker::track_sequence(det, params);
        CHECK(tracks[2][0].id == 1);
        CHECK(tracks[1].empty());  // coasting emits nothing
    }
}

TEST_CASE("constant velocity prediction catches fast movers") {
    // Accelerating motion on a 30 px box: a first 10 px stride bootstraps
    // the velocity estimate, then strides of 22/34/46 px leave the last box
    // behind (IoU <= 0.15) while the extrapolated box stays 12 px off
    // (IoU 0.43, above the 0.3 gate).
    DetectionFrames det(5);
    const double xs[] = {0, 10, 32, 66, 112};
    for (int f = 0; f < 5; ++f) det[static_cast<size_t>(f)] = {{xs[f], 10, 30, 30}};
    TrackerParams plain;
    auto without = tracker::track_sequence(det, plain);
    std::set<int> ids_without;
    for (const auto& frame : without) {
        for (const auto& d : frame) ids_without.insert(d.id);
    }
    CHECK(ids_without.size() > 1);

    TrackerParams cv;
    cv.constant_velocity = true;
    auto with = tracker::track_sequence(det, cv);
    for (const auto& frame : with) {
        REQUIRE(frame.size() == 1);
        CHECK(frame[0].id == 1);
    }
}

TEST_CASE("hungarian association untangles a greedy conflict") {
    // Tracks at x=0 and x=24 after frame 1. Frame 2: det A (x=12) overlaps
    // both tracks equally (IoU 0.25); det B (x=-14) overlaps only track 1
    // (IoU ~0.18). Greedy hands A to track 1 (ties break on track id),
    // stranding track 2 and opening a fresh id for B. The Hungarian pairing
    // (1-B, 2-A) keeps both established identities alive.
    DetectionFrames det(2);
    det[0] = {{0, 0, 20, 20}, {24, 0, 20, 20}};
    det[1] = {{12, 0, 20, 20}, {-14, 0, 20, 20}};
    TrackerParams greedy;
    greedy.iou_gate = 0.05;
    auto g = tracker::track_sequence(det, greedy);
    std::set<int> greedy_ids;
    for (const auto& d : g[1]) greedy_ids.insert(d.id);
    CHECK(greedy_ids == std::set<int>{1, 3});

    TrackerParams hung = greedy;
    hung.hungarian = true;
    auto h = tracker::track_sequence(det, hung);
    std::set<int> hung_ids;
    for (const auto& d : h[1]) hung_ids.insert(d.id);
    CHECK(hung_ids == std::set<int>{1, 2});
}

TEST_CASE("tracking is deterministic") {
    Rng rng(61);
    DetectionFrames det(30);
    for (auto& frame : det) {
        int n = static_cast<int>(rng.uniform_int(0, 6));
        for (int i = 0; i < n; ++i) {
            frame.push_back({rng.uniform(0.0, 600.0), rng.uniform(0.0, 400.0),
                             rng.uniform(10.0, 40.0), rng.uniform(10.0, 40.0)});
        }
    }
    for (auto hung : {false, true}) {
        TrackerParams p;
        p.hungarian = hung;
        auto a = tracker::track_sequence(det, p);
        auto b = tracker::track_sequence(det, p);
        REQUIRE(a.size() == b.size());
        for (size_t f = 0; f < a.size(); ++f) {
            REQUIRE(a[f].size() == b[f].size());
            for (size_t i = 0; i < a[f].size(); ++i) {
                CHECK(a[f][i].id == b[f][i].id);
                CHECK(a[f][i].box == b[f][i].box);
            }
        }
    }
}

TEST_CASE("results file format") {
    TempDir tmp;
    FrameData tracks(2);
    tracks[0].push_back({1, {10.0, 20.0, 30.0, 40.0}});
    tracks[1].push_back({1, {10.505, 20.0, 30.0, 40.0}});
    auto results = tracker::to_results(tracks);
    std::string path = tmp.str("res.txt");
    tracker::write_results_file(results, path);
    std::string bytes = testutil::read_file(path);
    CHECK(bytes ==
          "1,1,10.00,20.00,30.00,40.00,1.00,-1,-1,-1\n"
          "2,1,10.51,20.00,30.00,40.00,1.00,-1,-1,-1\n");
    // And it parses back as results.
    auto parsed = annot::parse_results_file(path);
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[1].box.left == doctest::Approx(10.51));
}

}  // TEST_SUITE
