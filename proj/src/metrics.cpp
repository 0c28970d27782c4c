#include "synthmot/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "synthmot/assignment.hpp"
#include "synthmot/errors.hpp"

namespace synthmot::metrics {

namespace {

const std::vector<Detection> kNoDetections;

const std::vector<Detection>& frame_or_empty(const FrameData& fd, size_t f) {
    return f < fd.size() ? fd[f] : kNoDetections;
}

void check_unique_ids(const std::vector<Detection>& dets, size_t frame, const char* side) {
    std::vector<int> ids;
    ids.reserve(dets.size());
    for (const Detection& d : dets) ids.push_back(d.id);
    std::sort(ids.begin(), ids.end());
    auto dup = std::adjacent_find(ids.begin(), ids.end());
    if (dup != ids.end()) {
        throw ValidationError("duplicate " + std::string(side) + " id " + std::to_string(*dup) +
                              " in frame " + std::to_string(frame + 1));
    }
}

template <typename Record, typename ToDetection>
FrameData bucket_records(const std::vector<Record>& records, int frame_count, const char* side,
                         ToDetection to_detection) {
    int max_frame = 0;
    for (const Record& r : records) max_frame = std::max(max_frame, r.frame);
    if (frame_count == 0) frame_count = max_frame;
    if (max_frame > frame_count) {
        throw ValidationError("frame " + std::to_string(max_frame) + " exceeds sequence length " +
                              std::to_string(frame_count));
    }
    FrameData fd(static_cast<size_t>(frame_count));
    for (const Record& r : records) {
        if (r.frame < 1) throw ValidationError("frame indices start at 1");
        fd[static_cast<size_t>(r.frame) - 1].push_back(to_detection(r));
    }
    for (size_t f = 0; f < fd.size(); ++f) check_unique_ids(fd[f], f, side);
    return fd;
}

}  // namespace

FrameData frame_data_from_gt(const std::vector<annot::AnnotationRecord>& records,
                             int frame_count) {
    return bucket_records(records, frame_count, "ground-truth", [](const annot::AnnotationRecord& r) {
        return Detection{r.id, Bbox{static_cast<double>(r.left), static_cast<double>(r.top),
                                    static_cast<double>(r.width), static_cast<double>(r.height)}};
    });
}

FrameData frame_data_from_results(const std::vector<annot::ResultRecord>& records,
                                  int frame_count) {
    return bucket_records(records, frame_count, "predicted",
                          [](const annot::ResultRecord& r) { return Detection{r.id, r.box}; });
}

double iou(const Bbox& a, const Bbox& b) {
    if (!a.valid() || !b.valid()) {
        throw ValidationError("iou requires boxes with positive extents");
    }
    double inter = intersection_area(a, b);
    return inter / (a.area() + b.area() - inter);
}

// ---------------------------------------------------------------------------
// CLEAR-MOTA

MotaResult clear_mota(const FrameData& gt, const FrameData& pred, double iou_threshold) {
    int64_t gt_dets = 0;
    for (const auto& frame : gt) gt_dets += static_cast<int64_t>(frame.size());
    if (gt_dets == 0) {
        throw ValidationError("MOTA undefined: ground truth contains no detections");
    }

    MotaResult res;
    size_t frames = std::max(gt.size(), pred.size());
    std::map<int, int> prev_match;         // gt id -> pred id in previous frame
    std::map<int, int> last_matched_pred;  // gt id -> pred id at its last matched frame
    for (size_t f = 0; f < frames; ++f) {
        const auto& G = frame_or_empty(gt, f);
        const auto& P = frame_or_empty(pred, f);
        std::map<int, size_t> gt_pos, pred_pos;
        for (size_t i = 0; i < G.size(); ++i) gt_pos[G[i].id] = i;
        for (size_t j = 0; j < P.size(); ++j) pred_pos[P[j].id] = j;

        std::map<int, int> matches;
        std::set<int> used_pred;
        for (const auto& [g, p] : prev_match) {
            auto gi = gt_pos.find(g);
            auto pj = pred_pos.find(p);
            if (gi == gt_pos.end() || pj == pred_pos.end()) continue;
            if (iou(G[gi->second].box, P[pj->second].box) >= iou_threshold) {
                matches[g] = p;
                used_pred.insert(p);
            }
        }

        std::vector<size_t> rest_g, rest_p;
        for (size_t i = 0; i < G.size(); ++i) {
            if (!matches.count(G[i].id)) rest_g.push_back(i);
        }
        for (size_t j = 0; j < P.size(); ++j) {
            if (!used_pred.count(P[j].id)) rest_p.push_back(j);
        }
        if (!rest_g.empty() && !rest_p.empty()) {
            std::vector<double> cost(rest_g.size() * rest_p.size());
            for (size_t a = 0; a < rest_g.size(); ++a) {
                for (size_t b = 0; b < rest_p.size(); ++b) {
                    double v = iou(G[rest_g[a]].box, P[rest_p[b]].box);
                    cost[a * rest_p.size() + b] = v >= iou_threshold ? 1.0 - v : kForbidden;
                }
            }
            std::vector<int> asg = solve_assignment(cost, static_cast<int>(rest_g.size()),
                                                    static_cast<int>(rest_p.size()));
            for (size_t a = 0; a < rest_g.size(); ++a) {
                int b = asg[a];
                if (b >= 0 && cost[a * rest_p.size() + b] < kForbidden) {
                    matches[G[rest_g[a]].id] = P[rest_p[static_cast<size_t>(b)]].id;
                }
            }
        }

        res.matches += static_cast<int64_t>(matches.size());
        res.fn += static_cast<int64_t>(G.size() - matches.size());
        res.fp += static_cast<int64_t>(P.size() - matches.size());
        for (const auto& [g, p] : matches) {
            auto it = last_matched_pred.find(g);
            if (it != last_matched_pred.end() && it->second != p) ++res.idsw;
            last_matched_pred[g] = p;
        }
        prev_match = std::move(matches);
    }
    res.mota = 1.0 - static_cast<double>(res.fn + res.fp + res.idsw) / static_cast<double>(gt_dets);
    return res;
}

// ---------------------------------------------------------------------------
// IDF1

Idf1Result idf1(const FrameData& gt, const FrameData& pred, double iou_threshold) {
    std::map<int, int64_t> gt_len, pred_len;
    std::map<std::pair<int, int>, int64_t> hits;  // frames where the pair overlaps >= threshold
    size_t frames = std::max(gt.size(), pred.size());
    for (size_t f = 0; f < frames; ++f) {
        const auto& G = frame_or_empty(gt, f);
        const auto& P = frame_or_empty(pred, f);
        for (const Detection& g : G) ++gt_len[g.id];
        for (const Detection& p : P) ++pred_len[p.id];
        for (const Detection& g : G) {
            for (const Detection& p : P) {
                if (iou(g.box, p.box) >= iou_threshold) ++hits[{g.id, p.id}];
            }
        }
    }
    int64_t total_gt = 0, total_pred = 0;
    for (const auto& [id, n] : gt_len) total_gt += n;
    for (const auto& [id, n] : pred_len) total_pred += n;
    if (total_gt == 0 && total_pred == 0) return {1.0, 0, 0, 0};

    std::vector<int> gids, pids;
    for (const auto& [id, n] : gt_len) gids.push_back(id);
    for (const auto& [id, n] : pred_len) pids.push_back(id);
    int64_t idtp = 0;
    if (!gids.empty() && !pids.empty()) {
        // Maximize total per-pair hits; pairs that never overlap cost 0 and
        // contribute nothing even when nominally assigned.
        std::vector<double> cost(gids.size() * pids.size(), 0.0);
        for (const auto& [pair, n] : hits) {
            size_t gi = static_cast<size_t>(
                std::lower_bound(gids.begin(), gids.end(), pair.first) - gids.begin());
            size_t pj = static_cast<size_t>(
                std::lower_bound(pids.begin(), pids.end(), pair.second) - pids.begin());
            cost[gi * pids.size() + pj] = -static_cast<double>(n);
        }
        std::vector<int> asg =
            solve_assignment(cost, static_cast<int>(gids.size()), static_cast<int>(pids.size()));
        for (size_t gi = 0; gi < gids.size(); ++gi) {
            if (asg[gi] < 0) continue;
            auto it = hits.find({gids[gi], pids[static_cast<size_t>(asg[gi])]});
            if (it != hits.end()) idtp += it->second;
        }
    }
    Idf1Result res;
    res.idtp = idtp;
    res.idfn = total_gt - idtp;
    res.idfp = total_pred - idtp;
    res.idf1 = 2.0 * static_cast<double>(idtp) /
               static_cast<double>(2 * idtp + res.idfp + res.idfn);
    return res;
}

// ---------------------------------------------------------------------------
// HOTA

namespace {

/// Per-frame view in compact track indices, with pairwise IoUs precomputed.
struct HotaFrame {
    std::vector<int> g, p;    // compact indices present this frame
    std::vector<double> iou;  // |g| x |p| row-major
};

}  // namespace

HotaResult hota(const FrameData& gt, const FrameData& pred) {
    int64_t total_gt = 0, total_pred = 0;
    for (const auto& frame : gt) total_gt += static_cast<int64_t>(frame.size());
    for (const auto& frame : pred) total_pred += static_cast<int64_t>(frame.size());
    HotaResult res;
    if (total_gt == 0 && total_pred == 0) {
        res.hota = res.deta = res.assa = 1.0;
        res.alpha_curve.fill(1.0);
        return res;
    }
    if (total_gt == 0 || total_pred == 0) return res;  // all zeros

    // Compact track indices and presence counts.
    std::map<int, int> gidx, pidx;
    std::vector<int64_t> ng, np;
    size_t frames = std::max(gt.size(), pred.size());
    std::vector<HotaFrame> per_frame(frames);
    for (size_t f = 0; f < frames; ++f) {
        const auto& G = frame_or_empty(gt, f);
        const auto& P = frame_or_empty(pred, f);
        HotaFrame& hf = per_frame[f];
        for (const Detection& d : G) {
            auto [it, fresh] = gidx.try_emplace(d.id, static_cast<int>(ng.size()));
            if (fresh) ng.push_back(0);
            ++ng[static_cast<size_t>(it->second)];
            hf.g.push_back(it->second);
        }
        for (const Detection& d : P) {
            auto [it, fresh] = pidx.try_emplace(d.id, static_cast<int>(np.size()));
            if (fresh) np.push_back(0);
            ++np[static_cast<size_t>(it->second)];
            hf.p.push_back(it->second);
        }
        hf.iou.resize(G.size() * P.size());
        for (size_t i = 0; i < G.size(); ++i) {
            for (size_t j = 0; j < P.size(); ++j) {
                hf.iou[i * P.size() + j] = iou(G[i].box, P[j].box);
            }
        }
    }

    size_t pred_tracks = np.size();
    auto pair_key = [pred_tracks](int g, int p) {
        return static_cast<int64_t>(g) * static_cast<int64_t>(pred_tracks) + p;
    };

    double hota_sum = 0.0, deta_sum = 0.0, assa_sum = 0.0;
    for (int k = 0; k < kHotaAlphaCount; ++k) {
        double alpha = 0.05 * (k + 1);

        // Pass 1: how often could each (gt track, pred track) pair match.
        std::unordered_map<int64_t, int64_t> potential;
        for (const HotaFrame& hf : per_frame) {
            for (size_t i = 0; i < hf.g.size(); ++i) {
                for (size_t j = 0; j < hf.p.size(); ++j) {
                    if (hf.iou[i * hf.p.size() + j] >= alpha) {
                        ++potential[pair_key(hf.g[i], hf.p[j])];
                    }
                }
            }
        }

        // Pass 2: per-frame assignment. Cardinality of valid pairs dominates
        // (each contributes kValid), then the association Jaccard from pass
        // 1, then IoU as a cosmetic tie-break.
        constexpr double kValid = 1e6;
        constexpr double kIouTieBreak = 1e-6;
        std::unordered_map<int64_t, int64_t> matched;
        int64_t tp = 0;
        for (const HotaFrame& hf : per_frame) {
            if (hf.g.empty() || hf.p.empty()) continue;
            std::vector<double> cost(hf.g.size() * hf.p.size());
            for (size_t i = 0; i < hf.g.size(); ++i) {
                for (size_t j = 0; j < hf.p.size(); ++j) {
                    double v = hf.iou[i * hf.p.size() + j];
                    if (v < alpha) {
                        cost[i * hf.p.size() + j] = kForbidden;
                        continue;
                    }
                    auto it = potential.find(pair_key(hf.g[i], hf.p[j]));
                    double cnt = it == potential.end() ? 0.0 : static_cast<double>(it->second);
                    double jac = cnt / (static_cast<double>(ng[static_cast<size_t>(hf.g[i])]) +
                                        static_cast<double>(np[static_cast<size_t>(hf.p[j])]) -
                                        cnt);
                    cost[i * hf.p.size() + j] = -(kValid + jac + kIouTieBreak * v);
                }
            }
            std::vector<int> asg = solve_assignment(cost, static_cast<int>(hf.g.size()),
                                                    static_cast<int>(hf.p.size()));
            for (size_t i = 0; i < hf.g.size(); ++i) {
                int j = asg[i];
                if (j < 0 || hf.iou[i * hf.p.size() + static_cast<size_t>(j)] < alpha) continue;
                ++matched[pair_key(hf.g[i], hf.p[static_cast<size_t>(j)])];
                ++tp;
            }
        }

        double deta = static_cast<double>(tp) / static_cast<double>(total_gt + total_pred - tp);
        double assa = 0.0;
        if (tp > 0) {
            double acc = 0.0;
            for (const auto& [key, m] : matched) {
                int g = static_cast<int>(key / static_cast<int64_t>(pred_tracks));
                int p = static_cast<int>(key % static_cast<int64_t>(pred_tracks));
                double denom = static_cast<double>(ng[static_cast<size_t>(g)]) +
                               static_cast<double>(np[static_cast<size_t>(p)]) -
                               static_cast<double>(m);
                acc += static_cast<double>(m) * (static_cast<double>(m) / denom);
            }
            assa = acc / static_cast<double>(tp);
        }
        double h = std::sqrt(deta * assa);
        res.alpha_curve[static_cast<size_t>(k)] = h;
        hota_sum += h;
        deta_sum += deta;
        assa_sum += assa;
    }
    res.hota = hota_sum / kHotaAlphaCount;
    res.deta = deta_sum / kHotaAlphaCount;
    res.assa = assa_sum / kHotaAlphaCount;
    return res;
}

// ---------------------------------------------------------------------------
// Sequence evaluation and reports

namespace {

std::string sequence_display_name(const std::string& gt_path) {
    namespace fs = std::filesystem;
    fs::path p(gt_path);
    fs::path parent = p.parent_path();
    if (parent.filename() == "gt" && !parent.parent_path().filename().empty()) {
        return parent.parent_path().filename().string();
    }
    return p.stem().string();
}

/// seqLength from the sibling seqinfo.ini of a <seq>/gt/gt.txt layout, or 0.
int seqinfo_length_hint(const std::string& gt_path) {
    namespace fs = std::filesystem;
    fs::path p(gt_path);
    fs::path parent = p.parent_path();
    if (parent.filename() != "gt") return 0;
    fs::path ini = parent.parent_path() / "seqinfo.ini";
    std::error_code ec;
    if (!fs::is_regular_file(ini, ec)) return 0;
    return annot::parse_seqinfo(ini.string()).frame_count;
}

/// Appends `src` frames to `dst` with ids remapped into a fresh range, so
/// pooled sequences never share ids.
void append_pooled(FrameData& dst, const FrameData& src, int& next_id) {
    std::map<int, int> remap;
    size_t base = dst.size();
    dst.resize(base + src.size());
    for (size_t f = 0; f < src.size(); ++f) {
        for (const Detection& d : src[f]) {
            auto [it, fresh] = remap.try_emplace(d.id, next_id);
            if (fresh) ++next_id;
            dst[base + f].push_back({it->second, d.box});
        }
    }
}

MetricsReport compute_report(const std::string& name, const FrameData& gt_fd,
                             const FrameData& pred_fd) {
    MetricsReport row;
    row.name = name;
    std::set<int> gt_ids, pred_ids;
    for (const auto& frame : gt_fd) {
        for (const Detection& d : frame) {
            ++row.gt_dets;
            gt_ids.insert(d.id);
        }
    }
    for (const auto& frame : pred_fd) {
        for (const Detection& d : frame) {
            ++row.dets;
            pred_ids.insert(d.id);
        }
    }
    row.gt_ids = static_cast<int64_t>(gt_ids.size());
    row.ids = static_cast<int64_t>(pred_ids.size());
    MotaResult m = clear_mota(gt_fd, pred_fd);
    row.mota = m.mota;
    row.idsw = m.idsw;
    row.idf1 = idf1(gt_fd, pred_fd).idf1;
    row.hota = hota(gt_fd, pred_fd).hota;
    return row;
}

}  // namespace

Evaluation evaluate_sequences(const std::vector<EvaluationInput>& inputs) {
    if (inputs.empty()) throw ValidationError("no sequences to evaluate");
    Evaluation out;
    FrameData pooled_gt, pooled_pred;
    int next_gt_id = 1, next_pred_id = 1;
    for (const EvaluationInput& input : inputs) {
        std::string name = sequence_display_name(input.gt_path);
        std::vector<annot::AnnotationRecord> gt_records = annot::parse_gt_file(input.gt_path);
        std::vector<annot::ResultRecord> results = annot::parse_results_file(input.results_path);

        int length = seqinfo_length_hint(input.gt_path);
        for (const auto& r : gt_records) length = std::max(length, r.frame);
        for (const auto& r : results) {
            if (r.frame > length) {
                throw ValidationError("results exceed sequence length for " + name + ": frame " +
                                      std::to_string(r.frame) + " > " + std::to_string(length));
            }
        }
        FrameData gt_fd = frame_data_from_gt(gt_records, length);
        FrameData pred_fd = frame_data_from_results(results, length);
        out.sequences.push_back(compute_report(name, gt_fd, pred_fd));
        append_pooled(pooled_gt, gt_fd, next_gt_id);
        append_pooled(pooled_pred, pred_fd, next_pred_id);
        if (pooled_pred.size() < pooled_gt.size()) pooled_pred.resize(pooled_gt.size());
    }
    out.combined = compute_report("COMBINED", pooled_gt, pooled_pred);
    return out;
}

namespace {

std::string format_metric(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::vector<const MetricsReport*> all_rows(const Evaluation& eval) {
    std::vector<const MetricsReport*> rows;
    for (const auto& r : eval.sequences) rows.push_back(&r);
    rows.push_back(&eval.combined);
    return rows;
}

}  // namespace

MetricSelection parse_metric_selection(const std::string& csv) {
    MetricSelection sel{false, false, false};
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "hota") {
            sel.hota = true;
        } else if (item == "mota") {
            sel.mota = true;
        } else if (item == "idf1") {
            sel.idf1 = true;
        } else {
            throw ValidationError("unknown metric '" + item + "' (expected hota, mota, idf1)");
        }
    }
    if (!sel.hota && !sel.mota && !sel.idf1) {
        throw ValidationError("metric selection is empty (expected hota, mota, idf1)");
    }
    return sel;
}

std::string format_report_table(const Evaluation& eval, const MetricSelection& sel) {
    auto rows = all_rows(eval);
    size_t name_w = 8;
    for (const auto* r : rows) name_w = std::max(name_w, r->name.size());
    std::ostringstream os;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%-*s", static_cast<int>(name_w), "Sequence");
    os << buf << ' ';
    auto cell = [&](const std::string& text, int width) {
        std::snprintf(buf, sizeof(buf), " %*s", width, text.c_str());
        os << buf;
    };
    if (sel.hota) cell("HOTA", 6);
    if (sel.mota) cell("MOTA", 6);
    if (sel.idf1) cell("IDF1", 6);
    cell("Dets", 8);
    cell("GT dets", 8);
    cell("IDs", 6);
    cell("GT IDs", 6);
    cell("IDSW", 6);
    os << '\n';
    for (const auto* r : rows) {
        std::snprintf(buf, sizeof(buf), "%-*s", static_cast<int>(name_w), r->name.c_str());
        os << buf << ' ';
        if (sel.hota) cell(format_metric(r->hota), 6);
        if (sel.mota) cell(format_metric(r->mota), 6);
        if (sel.idf1) cell(format_metric(r->idf1), 6);
        cell(std::to_string(r->dets), 8);
        cell(std::to_string(r->gt_dets), 8);
        cell(std::to_string(r->ids), 6);
        cell(std::to_string(r->gt_ids), 6);
        cell(std::to_string(r->idsw), 6);
        os << '\n';
    }
    return os.str();
}

std::string format_report_csv(const Evaluation& eval, const MetricSelection& sel) {
    std::ostringstream os;
    os << "sequence";
    if (sel.hota) os << ",hota";
    if (sel.mota) os << ",mota";
    if (sel.idf1) os << ",idf1";
    os << ",dets,gt_dets,ids,gt_ids,idsw\n";
    for (const auto* r : all_rows(eval)) {
        os << r->name;
        if (sel.hota) os << ',' << format_metric(r->hota);
        if (sel.mota) os << ',' << format_metric(r->mota);
        if (sel.idf1) os << ',' << format_metric(r->idf1);
        os << ',' << r->dets << ',' << r->gt_dets << ',' << r->ids << ',' << r->gt_ids << ','
           << r->idsw << '\n';
    }
    return os.str();
}

}  // namespace synthmot::metrics
