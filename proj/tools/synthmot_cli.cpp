#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "synthmot/annotations.hpp"
#include "synthmot/complexity.hpp"
#include "synthmot/config.hpp"
#include "synthmot/errors.hpp"
#include "synthmot/fsutil.hpp"
#include "synthmot/metrics.hpp"
#include "synthmot/pipeline.hpp"
#include "synthmot/rng.hpp"
#include "synthmot/tracker.hpp"

namespace fs = std::filesystem;
using namespace synthmot;

namespace {

struct SequenceRef {
    std::string name;
    std::string gt_path;
};

std::string name_from_gt_file(const fs::path& p) {
    fs::path parent = p.parent_path();
    if (parent.filename() == "gt" && !parent.parent_path().filename().empty()) {
        return parent.parent_path().filename().string();
    }
    return p.stem().string();
}

/// Accepts a gt.txt file, a single sequence directory, or a dataset
/// directory of sequence subdirectories.
std::vector<SequenceRef> discover_sequences(const std::string& path) {
    std::error_code ec;
    std::vector<SequenceRef> out;
    fs::path p(path);
    if (fs::is_regular_file(p, ec)) {
        out.push_back({name_from_gt_file(p), p.string()});
    } else if (fs::is_directory(p, ec)) {
        fs::path own_gt = p / "gt" / "gt.txt";
        if (fs::is_regular_file(own_gt, ec)) {
            out.push_back({p.filename().string(), own_gt.string()});
        } else {
            for (const auto& entry : fs::directory_iterator(p, ec)) {
                if (!entry.is_directory()) continue;
                fs::path gt = entry.path() / "gt" / "gt.txt";
                std::error_code ec2;
                if (fs::is_regular_file(gt, ec2)) {
                    out.push_back({entry.path().filename().string(), gt.string()});
                }
            }
            std::sort(out.begin(), out.end(),
                      [](const SequenceRef& a, const SequenceRef& b) { return a.name < b.name; });
        }
    } else {
        throw IoError("no such file or directory: " + path);
    }
    if (out.empty()) throw ValidationError("no sequences found under " + path);
    return out;
}

/// seqinfo.ini sitting next to <seq>/gt/gt.txt, if any.
std::optional<annot::SequenceMeta> sidecar_seqinfo(const std::string& gt_path) {
    fs::path p(gt_path);
    if (p.parent_path().filename() != "gt") return std::nullopt;
    fs::path ini = p.parent_path().parent_path() / "seqinfo.ini";
    std::error_code ec;
    if (!fs::is_regular_file(ini, ec)) return std::nullopt;
    return annot::parse_seqinfo(ini.string());
}

void refuse_existing(const fs::path& p, bool overwrite) {
    std::error_code ec;
    if (!overwrite && fs::exists(p, ec)) {
        throw IoError("output already exists (use --overwrite): " + p.string());
    }
}

// ---------------------------------------------------------------------------
// Subcommand state

struct GenerateOptions {
    std::string config_path;
    std::string variant = "none";
    bool variant_set = false;
    int count = 50;
    std::string out;
    bool render = false;
    uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 1;
    bool overwrite = false;
};

struct TrackOptions {
    std::string gt;
    std::string out;
    double drop = 0.0;
    double jitter = 0.0;
    double fp_rate = 0.0;
    uint64_t seed = 0;
    double iou_gate = 0.3;
    int max_missed = 0;
    bool constant_velocity = false;
    bool hungarian = false;
    bool overwrite = false;
};

struct EvaluateOptions {
    std::string gt;
    std::string results;
    std::string metrics = "hota,mota,idf1";
    std::string format = "table";
};

struct ScoreOptions {
    std::string gt;
    std::string out;
    bool overwrite = false;
};

struct SplitOptions {
    std::string scores;
    std::string gt;
    std::string out;
    bool overwrite = false;
};

struct ReportOptions {
    std::string input;
    std::string format = "table";
};

int run_generate(const GenerateOptions& opt) {
    SequenceConfig config =
        opt.config_path.empty() ? default_config() : load_config_file(opt.config_path);
    if (opt.variant_set) config.variant = parse_variant(opt.variant);
    if (opt.seed_set) config.master_seed = opt.seed;

    pipeline::DatasetOptions ds;
    ds.count = opt.count;
    ds.out_dir = opt.out;
    ds.render = opt.render;
    ds.jobs = opt.jobs;
    ds.overwrite = opt.overwrite;
    std::vector<std::string> names = pipeline::generate_dataset(config, ds);
    for (const std::string& name : names) std::cout << name << '\n';
    std::cerr << "generated " << names.size() << " sequence(s) under " << opt.out << '\n';
    return 0;
}

int run_track(const TrackOptions& opt) {
    std::vector<SequenceRef> seqs = discover_sequences(opt.gt);
    ensure_directory(opt.out);
    tracker::CorruptionParams corruption;
    corruption.drop_probability = opt.drop;
    corruption.jitter_sigma = opt.jitter;
    corruption.false_positive_rate = opt.fp_rate;
    tracker::TrackerParams params;
    params.iou_gate = opt.iou_gate;
    params.max_missed_frames = opt.max_missed;
    params.constant_velocity = opt.constant_velocity;
    params.hungarian = opt.hungarian;

    for (const SequenceRef& seq : seqs) {
        fs::path out_file = fs::path(opt.out) / (seq.name + ".txt");
        refuse_existing(out_file, opt.overwrite);
        std::vector<annot::AnnotationRecord> records = annot::parse_gt_file(seq.gt_path);
        auto meta = sidecar_seqinfo(seq.gt_path);
        int frame_count = meta ? meta->frame_count : 0;
        int width = meta && meta->image_width > 0 ? meta->image_width : 1920;
        int height = meta && meta->image_height > 0 ? meta->image_height : 1080;
        metrics::FrameData gt = metrics::frame_data_from_gt(records, frame_count);
        // Per-sequence sub-seed so every sequence sees its own noise stream.
        tracker::CorruptionParams seq_corruption = corruption;
        seq_corruption.seed = derive_seed(opt.seed, std::hash<std::string>{}(seq.name));
        tracker::DetectionFrames dets =
            tracker::corrupt_detections(gt, seq_corruption, width, height);
        metrics::FrameData tracks = tracker::track_sequence(dets, params);
        tracker::write_results_file(tracker::to_results(tracks), out_file.string());
        std::cerr << "tracked " << seq.name << " -> " << out_file.string() << '\n';
    }
    return 0;
}

int run_evaluate(const EvaluateOptions& opt) {
    metrics::MetricSelection sel = metrics::parse_metric_selection(opt.metrics);
    if (opt.format != "table" && opt.format != "csv") {
        throw ValidationError("unknown format '" + opt.format + "' (expected table or csv)");
    }
    std::vector<SequenceRef> seqs = discover_sequences(opt.gt);
    std::vector<metrics::EvaluationInput> inputs;
    for (const SequenceRef& seq : seqs) {
        fs::path results = fs::path(opt.results) / (seq.name + ".txt");
        std::error_code ec;
        if (!fs::is_regular_file(results, ec)) {
            throw ValidationError("missing results for sequence " + seq.name + ": " +
                                  results.string());
        }
        inputs.push_back({seq.gt_path, results.string()});
    }
    metrics::Evaluation eval = metrics::evaluate_sequences(inputs);
    std::cout << (opt.format == "csv" ? metrics::format_report_csv(eval, sel)
                                      : metrics::format_report_table(eval, sel));
    return 0;
}

int run_score(const ScoreOptions& opt) {
    std::vector<SequenceRef> seqs = discover_sequences(opt.gt);
    std::vector<complexity::ComplexityScores> scores;
    for (const SequenceRef& seq : seqs) {
        std::vector<annot::AnnotationRecord> records = annot::parse_gt_file(seq.gt_path);
        metrics::FrameData gt = metrics::frame_data_from_gt(records);
        scores.push_back(complexity::score_gt(seq.name, gt));
    }
    std::string csv = complexity::scores_to_csv(scores);
    std::cout << csv;
    if (!opt.out.empty()) {
        refuse_existing(opt.out, opt.overwrite);
        write_file_atomic(opt.out, csv);
    }
    return 0;
}

int run_split(const SplitOptions& opt) {
    if (opt.scores.empty() == opt.gt.empty()) {
        throw ValidationError("split needs exactly one of --scores or --gt");
    }
    std::vector<complexity::ScoredSequence> scored;
    if (!opt.scores.empty()) {
        scored = complexity::parse_scores_csv(opt.scores);
    } else {
        for (const SequenceRef& seq : discover_sequences(opt.gt)) {
            std::vector<annot::AnnotationRecord> records = annot::parse_gt_file(seq.gt_path);
            metrics::FrameData gt = metrics::frame_data_from_gt(records);
            scored.push_back({seq.name, complexity::score_gt(seq.name, gt).motcom});
        }
    }
    complexity::SplitAssignment split = complexity::split_sequences(scored);
    ensure_directory(opt.out);
    fs::path train = fs::path(opt.out) / "train.txt";
    fs::path test = fs::path(opt.out) / "test.txt";
    refuse_existing(train, opt.overwrite);
    refuse_existing(test, opt.overwrite);
    auto join = [](const std::vector<std::string>& names) {
        std::string s;
        for (const std::string& n : names) {
            s += n;
            s += '\n';
        }
        return s;
    };
    write_file_atomic(train.string(), join(split.train));
    write_file_atomic(test.string(), join(split.test));
    std::cerr << "split " << scored.size() << " sequences: " << split.train.size() << " train / "
              << split.test.size() << " test\n";
    return 0;
}

int run_report(const ReportOptions& opt) {
    if (opt.format != "table" && opt.format != "csv") {
        throw ValidationError("unknown format '" + opt.format + "' (expected table or csv)");
    }
    std::ifstream in(opt.input);
    if (!in) throw IoError("cannot open report: " + opt.input);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        rows.push_back(std::move(fields));
    }
    if (rows.empty()) throw ValidationError("report is empty: " + opt.input);
    size_t cols = rows[0].size();
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) {
            throw ValidationError(opt.input + ": row " + std::to_string(i + 1) + " has " +
                                  std::to_string(rows[i].size()) + " fields, expected " +
                                  std::to_string(cols));
        }
    }
    if (opt.format == "csv") {
        for (const auto& row : rows) {
            for (size_t c = 0; c < cols; ++c) std::cout << (c ? "," : "") << row[c];
            std::cout << '\n';
        }
        return 0;
    }
    std::vector<size_t> width(cols, 0);
    for (const auto& row : rows) {
        for (size_t c = 0; c < cols; ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (const auto& row : rows) {
        for (size_t c = 0; c < cols; ++c) {
            if (c == 0) {
                std::cout << row[c] << std::string(width[c] - row[c].size(), ' ');
            } else {
                std::cout << "  " << std::string(width[c] - row[c].size(), ' ') << row[c];
            }
        }
        std::cout << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Synthetic brackish-water multi-object tracking toolkit"};
    app.require_subcommand(1);

    GenerateOptions gen;
    CLI::App* cmd_gen = app.add_subcommand("generate", "Generate synthetic MOT sequences");
    cmd_gen->add_option("--config", gen.config_path, "JSON config file");
    CLI::Option* variant_opt =
        cmd_gen->add_option("--variant", gen.variant, "Environment letters from {B,T,D} or none");
    cmd_gen->add_option("--count", gen.count, "Number of sequences")->capture_default_str();
    cmd_gen->add_option("--out", gen.out, "Output dataset directory")->required();
    cmd_gen->add_flag("--render", gen.render, "Write img1/ PNG frames");
    CLI::Option* seed_opt = cmd_gen->add_option("--seed", gen.seed, "Master seed override");
    cmd_gen->add_option("--jobs", gen.jobs, "Parallel sequence workers")->capture_default_str();
    cmd_gen->add_flag("--overwrite", gen.overwrite, "Replace existing sequence directories");

    TrackOptions trk;
    CLI::App* cmd_trk = app.add_subcommand("track", "Run the baseline tracker over ground truth");
    cmd_trk->add_option("--gt", trk.gt, "Dataset dir, sequence dir, or gt.txt")->required();
    cmd_trk->add_option("--out", trk.out, "Directory for <sequence>.txt results")->required();
    cmd_trk->add_option("--drop", trk.drop, "Detection drop probability")->capture_default_str();
    cmd_trk->add_option("--jitter", trk.jitter, "Gaussian box jitter sigma (px)")
        ->capture_default_str();
    cmd_trk->add_option("--fp-rate", trk.fp_rate, "Expected false positives per frame")
        ->capture_default_str();
    cmd_trk->add_option("--seed", trk.seed, "Corruption seed")->capture_default_str();
    cmd_trk->add_option("--iou-gate", trk.iou_gate, "Association IoU gate")->capture_default_str();
    cmd_trk->add_option("--max-missed", trk.max_missed, "Frames a track may coast")
        ->capture_default_str();
    cmd_trk->add_flag("--cv", trk.constant_velocity, "Constant-velocity box prediction");
    cmd_trk->add_flag("--hungarian", trk.hungarian, "Optimal association instead of greedy");
    cmd_trk->add_flag("--overwrite", trk.overwrite, "Replace existing results files");

    EvaluateOptions ev;
    CLI::App* cmd_ev = app.add_subcommand("evaluate", "Evaluate results against ground truth");
    cmd_ev->add_option("--gt", ev.gt, "Dataset dir, sequence dir, or gt.txt")->required();
    cmd_ev->add_option("--results", ev.results, "Directory of <sequence>.txt results")->required();
    cmd_ev->add_option("--metrics", ev.metrics, "Comma-separated subset of hota,mota,idf1")
        ->capture_default_str();
    cmd_ev->add_option("--format", ev.format, "table or csv")->capture_default_str();

    ScoreOptions sc;
    CLI::App* cmd_sc = app.add_subcommand("score", "Complexity proxy scores for sequences");
    cmd_sc->add_option("--gt", sc.gt, "Dataset dir, sequence dir, or gt.txt")->required();
    cmd_sc->add_option("--out", sc.out, "Also write the CSV here");
    cmd_sc->add_flag("--overwrite", sc.overwrite, "Replace an existing CSV");

    SplitOptions sp;
    CLI::App* cmd_sp = app.add_subcommand("split", "Sorted every-fifth train/test split");
    cmd_sp->add_option("--scores", sp.scores, "Scores CSV (name,...,score)");
    cmd_sp->add_option("--gt", sp.gt, "Dataset dir to score with the built-in proxies");
    cmd_sp->add_option("--out", sp.out, "Directory for train.txt and test.txt")->required();
    cmd_sp->add_flag("--overwrite", sp.overwrite, "Replace existing split files");

    ReportOptions rp;
    CLI::App* cmd_rp = app.add_subcommand("report", "Re-render an evaluation CSV");
    cmd_rp->add_option("--input", rp.input, "CSV produced by evaluate --format csv")->required();
    cmd_rp->add_option("--format", rp.format, "table or csv")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    gen.variant_set = variant_opt->count() > 0;
    gen.seed_set = seed_opt->count() > 0;

    try {
        if (cmd_gen->parsed()) return run_generate(gen);
        if (cmd_trk->parsed()) return run_track(trk);
        if (cmd_ev->parsed()) return run_evaluate(ev);
        if (cmd_sc->parsed()) return run_score(sc);
        if (cmd_sp->parsed()) return run_split(sp);
        if (cmd_rp->parsed()) return run_report(rp);
        std::cerr << "error: no subcommand\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
}
