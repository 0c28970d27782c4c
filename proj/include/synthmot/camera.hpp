#pragma once

#include <optional>

#include "synthmot/bbox.hpp"
#include "synthmot/boids.hpp"
#include "synthmot/config.hpp"
#include "synthmot/vec3.hpp"

namespace synthmot::cam {

struct Pixel {
    double u = 0.0;
    double v = 0.0;
};

/// Distortion-free pinhole camera.
struct CameraIntrinsics {
    double focal_px = 1000.0;
    double cx = 960.0;
    double cy = 540.0;
    int image_width = 1920;
    int image_height = 1080;
};

/// Intrinsics resolved from a config: configured focal length, principal
/// point defaulting to the image center.
CameraIntrinsics intrinsics_from_config(const SequenceConfig& config);

/// Body-aligned box dimensions in meters before the per-fish scale factor.
/// Defaults approximate a stickleback-like body.
struct BodyExtent {
    double length = 0.12;
    double height = 0.04;
    double width = 0.03;
};

/// Projects a camera-frame point; empty when the point is not strictly in
/// front of the camera.
std::optional<Pixel> project_point(const Vec3& p, const CameraIntrinsics& cam);

/// Horizontal/vertical view half-tangents: |x| <= tan * z is on-screen.
/// Returns {left, right, top, bottom} slopes of the view pyramid.
struct FrustumSlopes {
    double x_lo, x_hi, y_lo, y_hi;
};
FrustumSlopes frustum_slopes(const CameraIntrinsics& cam);

/// Axis-aligned hull of the eight projected corners of the fish's
/// heading-aligned body box. Empty when any corner lies behind the camera or
/// the hull misses the image entirely. No clipping.
std::optional<Bbox> fish_bbox_unclipped(const boids::FishState& fish, const BodyExtent& extent,
                                        const CameraIntrinsics& cam);

/// Clips a box to the image rectangle; empty when nothing remains.
std::optional<Bbox> clip_to_image(const Bbox& box, const CameraIntrinsics& cam);

/// fish_bbox_unclipped followed by clip_to_image.
std::optional<Bbox> fish_bbox(const boids::FishState& fish, const BodyExtent& extent,
                              const CameraIntrinsics& cam);

/// Orthonormal body frame for a unit heading: forward along the heading, the
/// other two axes spanning the body cross-section. Deterministic fallback
/// when the heading is (anti)parallel to the image vertical.
struct BodyFrame {
    Vec3 forward, right, up;
};
BodyFrame body_frame(const Vec3& heading);

}  // namespace synthmot::cam
