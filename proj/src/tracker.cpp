#include "synthmot/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "synthmot/assignment.hpp"
#include "synthmot/errors.hpp"
#include "synthmot/fsutil.hpp"
#include "synthmot/rng.hpp"

namespace synthmot::tracker {

DetectionFrames corrupt_detections(const metrics::FrameData& gt, const CorruptionParams& params,
                                   int image_width, int image_height) {
    if (params.drop_probability < 0.0 || params.drop_probability > 1.0) {
        throw ValidationError("drop_probability must be in [0,1]");
    }
    if (params.jitter_sigma < 0.0) throw ValidationError("jitter_sigma must be >= 0");
    if (params.false_positive_rate < 0.0) {
        throw ValidationError("false_positive_rate must be >= 0");
    }
    if (image_width <= 0 || image_height <= 0) {
        throw ValidationError("image dimensions must be positive");
    }

    Rng rng(params.seed);
    DetectionFrames out(gt.size());
    double fp_max_w = std::max(8.0, image_width / 8.0);
    double fp_max_h = std::max(8.0, image_height / 8.0);
    for (size_t f = 0; f < gt.size(); ++f) {
        for (const metrics::Detection& d : gt[f]) {
            if (rng.uniform() < params.drop_probability) continue;
            Bbox b = d.box;
            if (params.jitter_sigma > 0.0) {
                b.left += rng.gaussian(0.0, params.jitter_sigma);
                b.top += rng.gaussian(0.0, params.jitter_sigma);
                b.width = std::max(1.0, b.width + rng.gaussian(0.0, params.jitter_sigma));
                b.height = std::max(1.0, b.height + rng.gaussian(0.0, params.jitter_sigma));
            }
            out[f].push_back(b);
        }
        int64_t fps = rng.poisson(params.false_positive_rate);
        for (int64_t i = 0; i < fps; ++i) {
            Bbox b;
            b.width = rng.uniform(4.0, fp_max_w);
            b.height = rng.uniform(4.0, fp_max_h);
            b.left = rng.uniform(0.0, image_width - b.width);
            b.top = rng.uniform(0.0, image_height - b.height);
            out[f].push_back(b);
        }
    }
    return out;
}

namespace {

struct Track {
    int id = 0;
    Bbox last;
    Bbox prev;
    bool has_prev = false;
    int missed = 0;
};

Bbox predicted_box(const Track& t, bool constant_velocity) {
    if (!constant_velocity || !t.has_prev) return t.last;
    Bbox b = t.last;
    b.left += t.last.left + 0.5 * t.last.width - (t.prev.left + 0.5 * t.prev.width);
    b.top += t.last.top + 0.5 * t.last.height - (t.prev.top + 0.5 * t.prev.height);
    return b;
}

double safe_iou(const Bbox& a, const Bbox& b) {
    if (!a.valid() || !b.valid()) return 0.0;
    double inter = intersection_area(a, b);
    return inter / (a.area() + b.area() - inter);
}

}  // namespace

metrics::FrameData track_sequence(const DetectionFrames& detections, const TrackerParams& params) {
    if (params.iou_gate <= 0.0 || params.iou_gate > 1.0) {
        throw ValidationError("iou_gate must be in (0,1]");
    }
    if (params.max_missed_frames < 0) {
        throw ValidationError("max_missed_frames must be >= 0");
    }

    metrics::FrameData out(detections.size());
    std::vector<Track> tracks;
    int next_id = 1;
    for (size_t f = 0; f < detections.size(); ++f) {
        const std::vector<Bbox>& dets = detections[f];
        std::vector<Bbox> predicted(tracks.size());
        for (size_t t = 0; t < tracks.size(); ++t) {
            predicted[t] = predicted_box(tracks[t], params.constant_velocity);
        }

        std::vector<int> det_track(dets.size(), -1);  // detection -> track slot
        std::vector<char> track_used(tracks.size(), 0);
        if (!tracks.empty() && !dets.empty()) {
            if (params.hungarian) {
                std::vector<double> cost(tracks.size() * dets.size());
                for (size_t t = 0; t < tracks.size(); ++t) {
                    for (size_t d = 0; d < dets.size(); ++d) {
                        double v = safe_iou(predicted[t], dets[d]);
                        cost[t * dets.size() + d] =
                            v >= params.iou_gate ? 1.0 - v : metrics::kForbidden;
                    }
                }
                std::vector<int> asg = metrics::solve_assignment(
                    cost, static_cast<int>(tracks.size()), static_cast<int>(dets.size()));
                for (size_t t = 0; t < tracks.size(); ++t) {
                    int d = asg[t];
                    if (d >= 0 && cost[t * dets.size() + d] < metrics::kForbidden) {
                        det_track[static_cast<size_t>(d)] = static_cast<int>(t);
                        track_used[t] = 1;
                    }
                }
            } else {
                struct Pair {
                    double iou;
                    size_t track, det;
                };
                std::vector<Pair> pairs;
                for (size_t t = 0; t < tracks.size(); ++t) {
                    for (size_t d = 0; d < dets.size(); ++d) {
                        double v = safe_iou(predicted[t], dets[d]);
                        if (v >= params.iou_gate) pairs.push_back({v, t, d});
                    }
                }
                std::sort(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
                    if (a.iou != b.iou) return a.iou > b.iou;
                    if (tracks[a.track].id != tracks[b.track].id) {
                        return tracks[a.track].id < tracks[b.track].id;
                    }
                    return a.det < b.det;
                });
                for (const Pair& p : pairs) {
                    if (track_used[p.track] || det_track[p.det] >= 0) continue;
                    track_used[p.track] = 1;
                    det_track[p.det] = static_cast<int>(p.track);
                }
            }
        }

        for (size_t d = 0; d < dets.size(); ++d) {
            if (det_track[d] >= 0) {
                Track& t = tracks[static_cast<size_t>(det_track[d])];
                t.prev = t.last;
                t.has_prev = true;
                t.last = dets[d];
                t.missed = 0;
                out[f].push_back({t.id, dets[d]});
            } else {
                Track t;
                t.id = next_id++;
                t.last = dets[d];
                tracks.push_back(t);
                out[f].push_back({t.id, dets[d]});
            }
        }
        std::vector<Track> alive;
        alive.reserve(tracks.size());
        for (size_t t = 0; t < tracks.size(); ++t) {
            bool observed_now = t < track_used.size() ? track_used[t] != 0
                                                      : true;  // freshly opened this frame
            if (!observed_now) {
                ++tracks[t].missed;
                if (tracks[t].missed > params.max_missed_frames) continue;
            }
            alive.push_back(tracks[t]);
        }
        tracks = std::move(alive);
    }
    return out;
}

std::vector<annot::ResultRecord> to_results(const metrics::FrameData& tracks) {
    std::vector<annot::ResultRecord> out;
    for (size_t f = 0; f < tracks.size(); ++f) {
        for (const metrics::Detection& d : tracks[f]) {
            annot::ResultRecord r;
            r.frame = static_cast<int>(f) + 1;
            r.id = d.id;
            r.box = d.box;
            r.confidence = 1.0;
            out.push_back(r);
        }
    }
    return out;
}

void write_results_file(const std::vector<annot::ResultRecord>& results, const std::string& path) {
    std::vector<annot::ResultRecord> sorted = results;
    std::sort(sorted.begin(), sorted.end(),
              [](const annot::ResultRecord& a, const annot::ResultRecord& b) {
                  if (a.frame != b.frame) return a.frame < b.frame;
                  return a.id < b.id;
              });
    std::ostringstream os;
    char buf[192];
    for (const annot::ResultRecord& r : sorted) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.2f,%.2f,%.2f,%.2f,%.2f,-1,-1,-1\n", r.frame, r.id,
                      r.box.left, r.box.top, r.box.width, r.box.height, r.confidence);
        os << buf;
    }
    write_file_atomic(path, os.str());
}

}  // namespace synthmot::tracker
