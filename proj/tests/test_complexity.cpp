#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "synthmot/complexity.hpp"
#include "synthmot/errors.hpp"
#include "synthmot/rng.hpp"
#include "test_util.hpp"

using namespace synthmot;
using complexity::ScoredSequence;
using metrics::Detection;
using metrics::FrameData;
using testutil::TempDir;

namespace {

FrameData random_gt(Rng& rng, int tracks, int frames) {
    FrameData fd(static_cast<size_t>(frames));
    for (int t = 0; t < tracks; ++t) {
        Bbox box{rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0), rng.uniform(5.0, 30.0),
                 rng.uniform(5.0, 30.0)};
        for (int f = 0; f < frames; ++f) {
            box.left += rng.uniform(-5.0, 5.0);
            box.top += rng.uniform(-5.0, 5.0);
            if (rng.uniform() < 0.9) fd[static_cast<size_t>(f)].push_back({t + 1, box});
        }
    }
    return fd;
}

}  // namespace

TEST_SUITE("complexity") {

TEST_CASE("ocom is 0 for a lone object and 1 for perfect overlap") {
    FrameData lone(5);
    for (int f = 0; f < 5; ++f) lone[static_cast<size_t>(f)].push_back({1, {10, 10, 20, 20}});
    CHECK(complexity::ocom_proxy(lone) == doctest::Approx(0.0));

    FrameData stacked(3);
    for (int f = 0; f < 3; ++f) {
        stacked[static_cast<size_t>(f)].push_back({1, {10, 10, 20, 20}});
        stacked[static_cast<size_t>(f)].push_back({2, {10, 10, 20, 20}});
    }
    CHECK(complexity::ocom_proxy(stacked) == doctest::Approx(1.0));
}

TEST_CASE("ocom hand value for a half overlap") {
    FrameData fd(1);
    fd[0].push_back({1, {0, 0, 10, 10}});
    fd[0].push_back({2, {5, 0, 10, 10}});
    // Each box has half its area covered by the other.
    CHECK(complexity::ocom_proxy(fd) == doctest::Approx(0.5));
}

TEST_CASE("ocom stays within [0,1] and rejects empty input") {
    Rng rng(51);
    for (int trial = 0; trial < 50; ++trial) {
        FrameData fd = random_gt(rng, 4, 8);
        bool any = false;
        for (const auto& f : fd) any = any || !f.empty();
        if (!any) continue;
        double v = complexity::ocom_proxy(fd);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    FrameData empty(3);
    CHECK_THROWS_AS(complexity::ocom_proxy(empty), ValidationError);
}

TEST_CASE("mcom is 0 for constant velocity") {
    FrameData fd(6);
    for (int f = 0; f < 6; ++f) {
        fd[static_cast<size_t>(f)].push_back({1, {10.0 + 7.0 * f, 20.0 + 3.0 * f, 15, 15}});
    }
    CHECK(complexity::mcom_proxy(fd) == doctest::Approx(0.0));
}

TEST_CASE("mcom hand value for one bent step") {
    // Centers (5,5) -> (15,5) -> (30,5): constant velocity predicts x = 25,
    // actual x = 30, so d = 5 px against a 10x10 box diagonal.
    FrameData fd(3);
    fd[0].push_back({1, {0, 0, 10, 10}});
    fd[1].push_back({1, {10, 0, 10, 10}});
    fd[2].push_back({1, {25, 0, 10, 10}});
    double d = 5.0 / std::sqrt(200.0);
    CHECK(complexity::mcom_proxy(fd) == doctest::Approx(d / (1.0 + d)).epsilon(1e-12));
}

TEST_CASE("mcom needs three consecutive frames") {
    FrameData fd(2);
    fd[0].push_back({1, {0, 0, 10, 10}});
    fd[1].push_back({1, {50, 0, 10, 10}});
    CHECK(complexity::mcom_proxy(fd) == doctest::Approx(0.0));

    // A gap at frame 1 breaks the triple (0,1,2).
    FrameData gap(3);
    gap[0].push_back({1, {0, 0, 10, 10}});
    gap[2].push_back({1, {80, 0, 10, 10}});
    CHECK(complexity::mcom_proxy(gap) == doctest::Approx(0.0));
}

TEST_CASE("mcom stays within [0,1]") {
    Rng rng(52);
    for (int trial = 0; trial < 50; ++trial) {
        FrameData fd = random_gt(rng, 4, 8);
        bool any = false;
        for (const auto& f : fd) any = any || !f.empty();
        if (!any) continue;
        double v = complexity::mcom_proxy(fd);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("motcom is the mean of the sub-metrics") {
    CHECK(complexity::combine_motcom(0.2, 0.6) == doctest::Approx(0.4));
    CHECK(complexity::combine_motcom(0.0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("98 sequences split 78/20") {
    std::vector<ScoredSequence> scored;
    for (int i = 0; i < 98; ++i) {
        scored.push_back({"seq-" + std::to_string(i), static_cast<double>(i) * 0.01});
    }
    auto split = complexity::split_sequences(scored);
    CHECK(split.train.size() == 78);
    CHECK(split.test.size() == 20);
    // Highest score (seq-97) trains; runner-up (seq-96) tests.
    CHECK(std::find(split.train.begin(), split.train.end(), "seq-97") != split.train.end());
    CHECK(std::find(split.test.begin(), split.test.end(), "seq-96") != split.test.end());
}

TEST_CASE("test split size is ceil((n-1)/5) for every n") {
    for (int n = 2; n <= 200; ++n) {
        std::vector<ScoredSequence> scored;
        for (int i = 0; i < n; ++i) {
            scored.push_back({"s" + std::to_string(i), static_cast<double>(i)});
        }
        auto split = complexity::split_sequences(scored);
        int want_test = (n - 1 + 4) / 5;
        CHECK(static_cast<int>(split.test.size()) == want_test);
        CHECK(static_cast<int>(split.train.size()) == n - want_test);

        // Partition: disjoint and complete.
        std::set<std::string> all;
        for (const auto& s : split.train) all.insert(s);
        for (const auto& s : split.test) all.insert(s);
        CHECK(static_cast<int>(all.size()) == n);
    }
}

TEST_CASE("split depends only on the score ordering") {
    Rng rng(53);
    std::vector<ScoredSequence> scored;
    for (int i = 0; i < 37; ++i) {
        scored.push_back({"s" + std::to_string(i), rng.uniform(0.0, 1.0)});
    }
    auto base = complexity::split_sequences(scored);

    // Scale every score and feed the list in reverse order.
    std::vector<ScoredSequence> scaled(scored.rbegin(), scored.rend());
    for (auto& s : scaled) s.score = s.score * 42.0 + 3.0;
    auto again = complexity::split_sequences(scaled);
    CHECK(base.train == again.train);
    CHECK(base.test == again.test);
}

TEST_CASE("score ties break by name") {
    std::vector<ScoredSequence> scored = {{"b", 1.0}, {"a", 1.0}, {"c", 0.5}};
    auto split = complexity::split_sequences(scored);
    // Order: a, b, c -> a trains, b tests, c trains.
    CHECK(split.train == std::vector<std::string>{"a", "c"});
    CHECK(split.test == std::vector<std::string>{"b"});
}

TEST_CASE("split preconditions") {
    CHECK_THROWS_WITH_AS(complexity::split_sequences({{"only", 1.0}}),
                         doctest::Contains("at least 2"), ValidationError);
    CHECK_THROWS_WITH_AS(complexity::split_sequences({{"dup", 1.0}, {"dup", 0.5}}),
                         doctest::Contains("duplicate"), ValidationError);
}

TEST_CASE("scores CSV round trip") {
    TempDir tmp;
    std::vector<complexity::ComplexityScores> scores = {
        {"Synth-001", 0.25, 0.5, 0.375},
        {"Synth-002", 0.1, 0.2, 0.15},
    };
    std::string csv = complexity::scores_to_csv(scores);
    CHECK(csv.find("name,ocom,mcom,motcom\n") == 0);
    testutil::write_file(tmp.str("scores.csv"), csv);
    auto parsed = complexity::parse_scores_csv(tmp.str("scores.csv"));
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0].name == "Synth-001");
    CHECK(parsed[0].score == doctest::Approx(0.375));
    CHECK(parsed[1].score == doctest::Approx(0.15));
}

TEST_CASE("two-column scores parse with or without a header") {
    TempDir tmp;
    testutil::write_file(tmp.str("a.csv"), "name,score\nx,0.5\ny,0.75\n");
    auto a = complexity::parse_scores_csv(tmp.str("a.csv"));
    REQUIRE(a.size() == 2);
    CHECK(a[1].score == doctest::Approx(0.75));

    testutil::write_file(tmp.str("b.csv"), "x,0.5\ny,0.75\n");
    auto b = complexity::parse_scores_csv(tmp.str("b.csv"));
    REQUIRE(b.size() == 2);
    CHECK(b[0].name == "x");
}

TEST_CASE("malformed scores CSV names the line") {
    TempDir tmp;
    testutil::write_file(tmp.str("bad.csv"), "x,0.5\ny,not-a-number\n");
    CHECK_THROWS_WITH_AS(complexity::parse_scores_csv(tmp.str("bad.csv")),
                         doctest::Contains("line 2"), ValidationError);
    testutil::write_file(tmp.str("bad3.csv"), "x,0.5,0.2\n");
    CHECK_THROWS_AS(complexity::parse_scores_csv(tmp.str("bad3.csv")), ValidationError);
}

TEST_CASE("score_gt produces the combined row") {
    FrameData fd(3);
    for (int f = 0; f < 3; ++f) {
        fd[static_cast<size_t>(f)].push_back({1, {10, 10, 20, 20}});
        fd[static_cast<size_t>(f)].push_back({2, {10, 10, 20, 20}});
    }
    auto s = complexity::score_gt("Seq", fd);
    CHECK(s.name == "Seq");
    CHECK(s.ocom == doctest::Approx(1.0));
    CHECK(s.mcom == doctest::Approx(0.0));
    CHECK(s.motcom == doctest::Approx(0.5));
}

}  // TEST_SUITE
