#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "synthmot/color.hpp"
#include "synthmot/config.hpp"
#include "synthmot/vec3.hpp"

namespace synthmot::env {

/// Endpoints of the grey-green color segment everything water-tinted is
/// sampled from. Only the interpolation parameter varies, so a sampled color
/// c always satisfies c = lerp(grey, green, t) for some t in [0,1].
inline constexpr Color kGrey{0.5, 0.5, 0.5};
inline constexpr Color kGreen{0.3, 0.55, 0.35};

inline Color grey_green(double t) { return lerp(kGrey, kGreen, t); }

/// Distance-dependent fog. density is the attenuation coefficient in 1/m.
struct TurbidityParams {
    double density = 0.0;
    Color fog_color = kGrey;
};

/// A floating clutter sphere. transparency 1 means fully see-through.
struct Distractor {
    Vec3 position;
    double radius = 0.05;  // m
    double transparency = 0.5;
    Color color = kGrey;
};

enum class BackgroundKind { monotone, image_sequence, procedural };

/// Per-sequence augmentation applied to non-monotone backgrounds.
struct BackgroundAugmentation {
    double saturation = 1.0;
    Color color_shift;       // added per channel
    int blur_radius_px = 0;  // box blur
};

struct BackgroundSpec {
    BackgroundKind kind = BackgroundKind::monotone;
    Color monotone_color = kGrey;
    std::string image_dir;     // image_sequence only
    uint64_t texture_seed = 0;  // procedural only
    BackgroundAugmentation augmentation;
};

/// The sampled environment of one sequence. Variant flags are baked in:
/// no T means density == 0, no D means an empty distractor list, no B means
/// a monotone background.
struct EnvInstance {
    TurbidityParams turbidity;
    BackgroundSpec background;
    std::vector<Distractor> distractors;
    int distractor_count = 0;
};

/// Opacity of the fog between the camera and an object `distance` meters
/// away: 1 - exp(-density * distance). Throws on negative distance.
double turbidity_alpha(double distance, const TurbidityParams& params);

/// Draws a complete environment for one sequence. Deterministic in `seed`.
/// Distractor and fish positions must land on screen, so sampling is
/// restricted to the camera frustum intersected with the world bounds.
EnvInstance sample_environment(const EnvironmentVariant& variant, uint64_t seed,
                               const SequenceConfig& config);

/// Positions for frame `frame_index`: every distractor is moved to a fresh
/// uniform position in frustum-and-bounds, attributes unchanged.
/// Deterministic in (seed, frame_index).
std::vector<Distractor> step_distractors(const EnvInstance& env, int frame_index, uint64_t seed,
                                         const SequenceConfig& config);

}  // namespace synthmot::env
