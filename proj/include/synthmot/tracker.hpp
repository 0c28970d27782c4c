#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "synthmot/annotations.hpp"
#include "synthmot/bbox.hpp"
#include "synthmot/metrics.hpp"

namespace synthmot::tracker {

/// Stand-in for an imperfect detector.
struct CorruptionParams {
    double drop_probability = 0.0;
    double jitter_sigma = 0.0;         // px, applied to all four box fields
    double false_positive_rate = 0.0;  // expected false boxes per frame
    uint64_t seed = 0;
};

/// Anonymous per-frame detections (ids stripped).
using DetectionFrames = std::vector<std::vector<Bbox>>;

/// Drops each GT box independently, jitters survivors with zero-mean
/// Gaussian noise (extents floored at 1 px), and adds Poisson-many random
/// boxes per frame inside the image. Deterministic in params.seed.
DetectionFrames corrupt_detections(const metrics::FrameData& gt, const CorruptionParams& params,
                                   int image_width, int image_height);

struct TrackerParams {
    double iou_gate = 0.3;  // in (0, 1]
    int max_missed_frames = 0;
    bool constant_velocity = false;  // predict next box from the last two
    bool hungarian = false;          // optimal per-frame association instead of greedy
};

/// Online association: per frame, detections are matched to active tracks in
/// descending-IoU order (lowest track id, then lowest detection index, break
/// ties) against the track's last box or its constant-velocity prediction;
/// matches below iou_gate are rejected; leftover detections open fresh
/// tracks; tracks unmatched for more than max_missed_frames are dropped.
metrics::FrameData track_sequence(const DetectionFrames& detections, const TrackerParams& params);

/// Tracked frames as MOTChallenge result rows (confidence 1).
std::vector<annot::ResultRecord> to_results(const metrics::FrameData& tracks);

/// 10-field comma-separated rows ("%.2f" box fields, -1 world coordinates),
/// sorted by (frame, id), LF endings; byte-identical for equal input.
void write_results_file(const std::vector<annot::ResultRecord>& results, const std::string& path);

}  // namespace synthmot::tracker
