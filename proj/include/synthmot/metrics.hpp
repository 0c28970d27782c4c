#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "synthmot/annotations.hpp"
#include "synthmot/bbox.hpp"

namespace synthmot::metrics {

struct Detection {
    int id = 0;
    Bbox box;
};

/// One entry per frame (index 0 = frame 1), each a list of identified boxes.
using FrameData = std::vector<std::vector<Detection>>;

/// Buckets records into FrameData. frame_count 0 means "use the highest
/// frame seen". Throws when a frame index exceeds frame_count or an id
/// repeats within a frame.
FrameData frame_data_from_gt(const std::vector<annot::AnnotationRecord>& records,
                             int frame_count = 0);
FrameData frame_data_from_results(const std::vector<annot::ResultRecord>& records,
                                  int frame_count = 0);

/// Intersection over union; requires positive extents on both boxes.
double iou(const Bbox& a, const Bbox& b);

inline constexpr double kDefaultIouThreshold = 0.5;

struct MotaResult {
    double mota = 0.0;
    int64_t fn = 0;
    int64_t fp = 0;
    int64_t idsw = 0;
    int64_t matches = 0;  // true positives over all frames
};

/// CLEAR protocol: carry over still-overlapping matches from the previous
/// frame, assign the rest by Hungarian maximization of IoU over pairs at or
/// above the threshold. An id switch is counted when a GT id's matched
/// prediction differs from the one at its previous matched frame.
/// mota = 1 - (fn + fp + idsw) / gt_dets. Throws when gt has no detections.
MotaResult clear_mota(const FrameData& gt, const FrameData& pred,
                      double iou_threshold = kDefaultIouThreshold);

struct Idf1Result {
    double idf1 = 0.0;
    int64_t idtp = 0;
    int64_t idfp = 0;
    int64_t idfn = 0;
};

/// Identity F1: one global Hungarian over (gt track, predicted track) pairs
/// maximizing frames where the pair overlaps at or above the threshold.
/// Both sides empty is perfect identification (1.0).
Idf1Result idf1(const FrameData& gt, const FrameData& pred,
                double iou_threshold = kDefaultIouThreshold);

inline constexpr int kHotaAlphaCount = 19;  // 0.05, 0.10, ..., 0.95

struct HotaResult {
    double hota = 0.0;  // mean over alpha of sqrt(DetA * AssA)
    double deta = 0.0;  // mean over alpha
    double assa = 0.0;  // mean over alpha
    std::array<double, kHotaAlphaCount> alpha_curve{};
};

/// HOTA over the 19-level alpha grid. Matching per frame maximizes first the
/// number of pairs with IoU >= alpha, then global association overlap, then
/// IoU (two-pass scheme: co-occurrence counts feed the per-frame solver).
/// Empty vs empty is 1.0, exactly one side empty is 0.0.
HotaResult hota(const FrameData& gt, const FrameData& pred);

/// The paper-style report row.
struct MetricsReport {
    std::string name;
    double hota = 0.0;
    double mota = 0.0;
    double idf1 = 0.0;
    int64_t dets = 0;     // predicted detections
    int64_t gt_dets = 0;  // ground-truth detections
    int64_t ids = 0;      // distinct predicted ids
    int64_t gt_ids = 0;   // distinct ground-truth ids
    int64_t idsw = 0;
};

struct EvaluationInput {
    std::string gt_path;
    std::string results_path;
};

struct Evaluation {
    std::vector<MetricsReport> sequences;
    MetricsReport combined;  // metrics recomputed over pooled frames
};

/// Evaluates each (gt, results) pair and a pooled COMBINED row. Sequence
/// length comes from the sibling seqinfo.ini when present, else from the
/// highest gt frame; results frames beyond it raise an error naming the
/// sequence.
Evaluation evaluate_sequences(const std::vector<EvaluationInput>& inputs);

/// Which metric columns a report shows; counts are always shown and the
/// column order is fixed (HOTA, MOTA, IDF1) regardless of selection order.
struct MetricSelection {
    bool hota = true;
    bool mota = true;
    bool idf1 = true;
};

/// Parses a comma-separated subset of {hota, mota, idf1}.
MetricSelection parse_metric_selection(const std::string& csv);

/// Aligned text table / CSV with the columns
/// name, HOTA, MOTA, IDF1, Dets, GT dets, IDs, GT IDs, IDSW.
/// Metrics are rounded to two decimals at display only.
std::string format_report_table(const Evaluation& eval, const MetricSelection& sel = {});
std::string format_report_csv(const Evaluation& eval, const MetricSelection& sel = {});

}  // namespace synthmot::metrics
