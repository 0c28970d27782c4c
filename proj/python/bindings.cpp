#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "synthmot/annotations.hpp"
#include "synthmot/complexity.hpp"
#include "synthmot/config.hpp"
#include "synthmot/environment.hpp"
#include "synthmot/errors.hpp"
#include "synthmot/metrics.hpp"
#include "synthmot/pipeline.hpp"
#include "synthmot/tracker.hpp"

namespace py = pybind11;
using namespace synthmot;

namespace {

SequenceConfig resolve_config(const std::string& config_json,
                              const std::optional<std::string>& variant,
                              const std::optional<uint64_t>& seed) {
    SequenceConfig cfg = config_json.empty() ? default_config() : validate_config(config_json);
    if (variant) cfg.variant = parse_variant(*variant);
    if (seed) cfg.master_seed = *seed;
    return cfg;
}

py::dict report_to_dict(const metrics::MetricsReport& r) {
    py::dict d;
    d["name"] = r.name;
    d["hota"] = r.hota;
    d["mota"] = r.mota;
    d["idf1"] = r.idf1;
    d["dets"] = r.dets;
    d["gt_dets"] = r.gt_dets;
    d["ids"] = r.ids;
    d["gt_ids"] = r.gt_ids;
    d["idsw"] = r.idsw;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Deterministic synthetic underwater MOT dataset toolkit";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    m.def(
        "validate_config", [](const std::string& json_text) { validate_config(json_text); },
        py::arg("json_text"),
        "Raise ValidationError when the JSON config document is invalid.");

    m.def(
        "generate_dataset",
        [](const std::string& out_dir, const std::string& config_json,
           const std::optional<std::string>& variant, int count, bool render,
           const std::optional<uint64_t>& seed, int jobs, bool overwrite) {
            SequenceConfig cfg = resolve_config(config_json, variant, seed);
            pipeline::DatasetOptions opt;
            opt.count = count;
            opt.out_dir = out_dir;
            opt.render = render;
            opt.jobs = jobs;
            opt.overwrite = overwrite;
            py::gil_scoped_release release;
            return pipeline::generate_dataset(cfg, opt);
        },
        py::arg("out_dir"), py::arg("config_json") = "", py::arg("variant") = std::nullopt,
        py::arg("count") = 50, py::arg("render") = false, py::arg("seed") = std::nullopt,
        py::arg("jobs") = 1, py::arg("overwrite") = false,
        "Generate sequences in MOTChallenge layout; returns their names.");

    m.def(
        "iou",
        [](std::array<double, 4> a, std::array<double, 4> b) {
            return metrics::iou(Bbox{a[0], a[1], a[2], a[3]}, Bbox{b[0], b[1], b[2], b[3]});
        },
        py::arg("a"), py::arg("b"),
        "Intersection over union of two (left, top, width, height) boxes.");

    m.def(
        "turbidity_alpha",
        [](double distance, double density) {
            env::TurbidityParams p;
            p.density = density;
            return env::turbidity_alpha(distance, p);
        },
        py::arg("distance"), py::arg("density"), "Fog opacity 1 - exp(-density * distance).");

    m.def(
        "evaluate",
        [](const std::vector<std::pair<std::string, std::string>>& pairs) {
            std::vector<metrics::EvaluationInput> inputs;
            inputs.reserve(pairs.size());
            for (const auto& [gt, results] : pairs) inputs.push_back({gt, results});
            metrics::Evaluation eval;
            {
                py::gil_scoped_release release;
                eval = metrics::evaluate_sequences(inputs);
            }
            py::list rows;
            for (const auto& r : eval.sequences) rows.append(report_to_dict(r));
            return py::make_tuple(rows, report_to_dict(eval.combined));
        },
        py::arg("pairs"),
        "Evaluate (gt.txt, results.txt) pairs; returns (per-sequence rows, combined).");

    m.def(
        "track_file",
        [](const std::string& gt_path, const std::string& results_path, double drop,
           double jitter, double fp_rate, uint64_t seed, double iou_gate, int max_missed,
           bool constant_velocity, bool hungarian, int image_width, int image_height) {
            py::gil_scoped_release release;
            std::vector<annot::AnnotationRecord> records = annot::parse_gt_file(gt_path);
            metrics::FrameData gt = metrics::frame_data_from_gt(records);
            tracker::CorruptionParams corruption{drop, jitter, fp_rate, seed};
            tracker::TrackerParams params{iou_gate, max_missed, constant_velocity, hungarian};
            tracker::DetectionFrames dets =
                tracker::corrupt_detections(gt, corruption, image_width, image_height);
            tracker::write_results_file(tracker::to_results(tracker::track_sequence(dets, params)),
                                        results_path);
        },
        py::arg("gt_path"), py::arg("results_path"), py::arg("drop") = 0.0,
        py::arg("jitter") = 0.0, py::arg("fp_rate") = 0.0, py::arg("seed") = 0,
        py::arg("iou_gate") = 0.3, py::arg("max_missed") = 0,
        py::arg("constant_velocity") = false, py::arg("hungarian") = false,
        py::arg("image_width") = 1920, py::arg("image_height") = 1080,
        "Corrupt a gt.txt into detections, track them, write a results file.");

    m.def(
        "score_file",
        [](const std::string& gt_path) {
            std::vector<annot::AnnotationRecord> records = annot::parse_gt_file(gt_path);
            metrics::FrameData gt = metrics::frame_data_from_gt(records);
            complexity::ComplexityScores s = complexity::score_gt("", gt);
            return py::make_tuple(s.ocom, s.mcom, s.motcom);
        },
        py::arg("gt_path"), "Complexity proxies (ocom, mcom, motcom) of a gt.txt.");

    m.def(
        "split",
        [](const std::vector<std::pair<std::string, double>>& scored) {
            std::vector<complexity::ScoredSequence> s;
            s.reserve(scored.size());
            for (const auto& [name, score] : scored) s.push_back({name, score});
            complexity::SplitAssignment split = complexity::split_sequences(s);
            return py::make_tuple(split.train, split.test);
        },
        py::arg("scored"),
        "Sorted every-fifth train/test split over (name, score) pairs.");

    m.def(
        "parse_gt",
        [](const std::string& path) {
            py::list rows;
            for (const annot::AnnotationRecord& r : annot::parse_gt_file(path)) {
                rows.append(py::make_tuple(r.frame, r.id, r.left, r.top, r.width, r.height,
                                           r.confidence, r.class_id, r.visibility));
            }
            return rows;
        },
        py::arg("path"), "gt.txt rows as 9-tuples.");

    m.attr("__version__") = "0.1.0";
}
