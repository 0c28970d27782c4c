#pragma once

#include <vector>

#include "synthmot/boids.hpp"
#include "synthmot/camera.hpp"
#include "synthmot/environment.hpp"
#include "synthmot/image.hpp"
#include "synthmot/sampling.hpp"

namespace synthmot::render {

/// Frame-independent inputs shared by every render_frame call of a sequence.
struct RenderContext {
    std::vector<Appearance> appearances;  // indexed by fish id - 1
    cam::BodyExtent body_extent;
    /// Optional pre-rendered background. Monotone and procedural backgrounds
    /// are identical across frames, so callers rendering many frames can
    /// build one with render_background and share it here; render_frame
    /// builds its own when this is null.
    const FrameBuffer* cached_background = nullptr;
};

RenderContext make_render_context(const SequenceParams& params);

/// The background layer alone: monotone fill, the cyclically indexed frame
/// from the background image directory, or the procedural seabed; the two
/// non-monotone kinds get the sampled augmentation (saturation, color shift,
/// box blur) applied.
FrameBuffer render_background(const env::EnvInstance& env, const cam::CameraIntrinsics& cam,
                              int frame_index);

/// Full frame: background first, then fish (heading-aligned shaded ellipses)
/// and distractors (translucent circles) composited far to near, each color
/// blended toward the fog color by turbidity_alpha(object distance).
/// env.distractors must already hold this frame's positions.
FrameBuffer render_frame(const boids::SchoolState& school, const env::EnvInstance& env,
                         const cam::CameraIntrinsics& cam, int frame_index,
                         const RenderContext& ctx);

}  // namespace synthmot::render
