#include "synthmot/environment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "synthmot/camera.hpp"
#include "synthmot/errors.hpp"
#include "synthmot/rng.hpp"

namespace synthmot::env {

double turbidity_alpha(double distance, const TurbidityParams& params) {
    if (distance < 0.0) throw ValidationError("turbidity distance must be >= 0");
    return -std::expm1(-params.density * distance);
}

namespace {

/// Uniform position inside the camera frustum clipped to the world bounds.
/// Depth first, then the lateral ranges shrink with the frustum at that depth.
Vec3 sample_view_position(Rng& rng, const SequenceConfig& config) {
    const Box3& wb = config.world_bounds;
    cam::FrustumSlopes fr = cam::frustum_slopes(cam::intrinsics_from_config(config));
    double z = rng.uniform(wb.min.z, wb.max.z);
    double x_lo = std::max(wb.min.x, fr.x_lo * z);
    double x_hi = std::max(x_lo, std::min(wb.max.x, fr.x_hi * z));
    double y_lo = std::max(wb.min.y, fr.y_lo * z);
    double y_hi = std::max(y_lo, std::min(wb.max.y, fr.y_hi * z));
    // Bounds fully outside the view pyramid collapse the range to its edge
    // instead of inverting it.
    return {rng.uniform(x_lo, x_hi), rng.uniform(y_lo, y_hi), z};
}

bool has_background_frames(const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) return false;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        if (ext == ".png" || ext == ".ppm") return true;
    }
    return false;
}

}  // namespace

EnvInstance sample_environment(const EnvironmentVariant& variant, uint64_t seed,
                               const SequenceConfig& config) {
    Rng rng(seed);
    EnvInstance env;

    // Fog color is sampled even for no-T variants: the monotone background
    // reuses it so the plain variants still look like the same water.
    env.turbidity.fog_color = grey_green(rng.uniform());
    env.turbidity.density =
        variant.turbidity
            ? rng.uniform(config.turbidity_density_range.low, config.turbidity_density_range.high)
            : 0.0;

    if (variant.background) {
        if (config.background_dir) {
            if (!has_background_frames(*config.background_dir)) {
                throw ValidationError("background source unavailable: " + *config.background_dir);
            }
            env.background.kind = BackgroundKind::image_sequence;
            env.background.image_dir = *config.background_dir;
        } else {
            env.background.kind = BackgroundKind::procedural;
        }
    } else {
        env.background.kind = BackgroundKind::monotone;
    }
    env.background.monotone_color = env.turbidity.fog_color;
    env.background.texture_seed = rng.next_u64();
    env.background.augmentation.saturation = rng.uniform(0.6, 1.4);
    env.background.augmentation.color_shift = {rng.uniform(-0.08, 0.08), rng.uniform(-0.08, 0.08),
                                               rng.uniform(-0.08, 0.08)};
    env.background.augmentation.blur_radius_px = static_cast<int>(rng.uniform_int(0, 3));

    if (variant.distractors) {
        env.distractor_count = static_cast<int>(rng.uniform_int(
            config.distractor_count_range.low, config.distractor_count_range.high));
        env.distractors.reserve(env.distractor_count);
        for (int i = 0; i < env.distractor_count; ++i) {
            Distractor d;
            d.position = sample_view_position(rng, config);
            d.radius = rng.uniform(config.distractor_radius_range.low,
                                   config.distractor_radius_range.high);
            d.transparency = rng.uniform(config.distractor_transparency_range.low,
                                         config.distractor_transparency_range.high);
            d.color = grey_green(rng.uniform());
            env.distractors.push_back(d);
        }
    }
    return env;
}

std::vector<Distractor> step_distractors(const EnvInstance& env, int frame_index, uint64_t seed,
                                         const SequenceConfig& config) {
    if (frame_index < 0) throw ValidationError("frame_index must be >= 0");
    Rng rng(derive_seed(seed, static_cast<uint64_t>(frame_index)));
    std::vector<Distractor> moved = env.distractors;
    for (Distractor& d : moved) d.position = sample_view_position(rng, config);
    return moved;
}

}  // namespace synthmot::env
