#include "synthmot/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <mutex>
#include <thread>

#include "synthmot/errors.hpp"
#include "synthmot/fsutil.hpp"
#include "synthmot/renderer.hpp"

namespace synthmot::pipeline {

bool annotation_visible(const Bbox& clipped) {
    return clipped.area() >= kMinVisibleArea && annot::round_px(clipped.width) >= 1 &&
           annot::round_px(clipped.height) >= 1;
}

std::string sequence_name(const EnvironmentVariant& variant, int number) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%03d", number);
    std::string letters = variant.letters();
    return letters.empty() ? "Synth-" + std::string(buf)
                           : "Synth-" + letters + "-" + std::string(buf);
}

GeneratedSequence generate_sequence(const SequenceConfig& config, int sequence_index) {
    if (sequence_index < 0) throw ValidationError("sequence_index must be >= 0");
    GeneratedSequence seq;
    seq.config = config;
    seq.params = sample_sequence_params(config, sequence_index);
    seq.frames = boids::simulate(seq.params, config);

    cam::CameraIntrinsics intr = cam::intrinsics_from_config(config);
    cam::BodyExtent extent;
    annot::TrackLedger ledger;
    for (size_t f = 0; f < seq.frames.size(); ++f) {
        std::vector<int> visible_sim_ids;
        std::vector<std::pair<int, Bbox>> boxes;  // sim id -> clipped box
        for (const boids::FishState& fish : seq.frames[f].fishes) {
            auto box = cam::fish_bbox(fish, extent, intr);
            if (!box || !annotation_visible(*box)) continue;
            visible_sim_ids.push_back(fish.id);
            boxes.emplace_back(fish.id, *box);
        }
        std::map<int, int> ids = ledger.assign_ids(static_cast<int>(f) + 1, visible_sim_ids);
        for (const auto& [sim_id, box] : boxes) {
            annot::AnnotationRecord r;
            r.frame = static_cast<int>(f) + 1;
            r.id = ids.at(sim_id);
            r.left = annot::round_px(box.left);
            r.top = annot::round_px(box.top);
            r.width = annot::round_px(box.width);
            r.height = annot::round_px(box.height);
            r.confidence = 1;
            r.class_id = kFishClassId;
            r.visibility = 1;
            seq.records.push_back(r);
        }
    }

    seq.meta.name = sequence_name(config.variant, sequence_index + 1);
    seq.meta.frame_count = config.frame_count;
    seq.meta.fps = config.fps;
    seq.meta.image_width = config.image_width;
    seq.meta.image_height = config.image_height;
    return seq;
}

void write_sequence_dir(const GeneratedSequence& seq, const std::string& out_root, bool render,
                        bool overwrite) {
    namespace fs = std::filesystem;
    fs::path dir = fs::path(out_root) / seq.meta.name;
    std::error_code ec;
    if (fs::exists(dir, ec)) {
        if (!overwrite) {
            throw IoError("output already exists (use --overwrite): " + dir.string());
        }
        fs::remove_all(dir, ec);
        if (ec) throw IoError("cannot clear " + dir.string() + ": " + ec.message());
    }
    ensure_directory((dir / "gt").string());
    annot::write_gt_file(seq.records, (dir / "gt" / "gt.txt").string());
    annot::write_seqinfo(seq.meta, (dir / "seqinfo.ini").string());

    if (!render) return;
    ensure_directory((dir / "img1").string());
    cam::CameraIntrinsics intr = cam::intrinsics_from_config(seq.config);
    render::RenderContext ctx = render::make_render_context(seq.params);
    render::FrameBuffer background;
    if (seq.params.environment.background.kind != env::BackgroundKind::image_sequence) {
        background = render::render_background(seq.params.environment, intr, 0);
        ctx.cached_background = &background;
    }
    for (size_t f = 0; f < seq.frames.size(); ++f) {
        env::EnvInstance frame_env = seq.params.environment;
        if (!frame_env.distractors.empty()) {
            frame_env.distractors =
                env::step_distractors(seq.params.environment, static_cast<int>(f),
                                      seq.params.environment_seed, seq.config);
        }
        render::FrameBuffer fb =
            render::render_frame(seq.frames[f], frame_env, intr, static_cast<int>(f), ctx);
        char name[32];
        std::snprintf(name, sizeof(name), "%06zu.png", f + 1);
        render::write_image(fb, (dir / "img1" / name).string());
    }
}

std::vector<std::string> generate_dataset(const SequenceConfig& config,
                                          const DatasetOptions& options) {
    if (options.count < 1) throw ValidationError("count must be >= 1");
    if (options.jobs < 1) throw ValidationError("jobs must be >= 1");
    if (options.out_dir.empty()) throw ValidationError("output directory required");
    ensure_directory(options.out_dir);

    std::vector<std::string> names(static_cast<size_t>(options.count));
    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= options.count) return;
            try {
                GeneratedSequence seq = generate_sequence(config, i);
                write_sequence_dir(seq, options.out_dir, options.render, options.overwrite);
                names[static_cast<size_t>(i)] = seq.meta.name;
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    int jobs = std::min(options.jobs, options.count);
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(jobs));
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return names;
}

}  // namespace synthmot::pipeline
