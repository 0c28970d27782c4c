#include "synthmot/camera.hpp"

#include <algorithm>
#include <cmath>

namespace synthmot::cam {

CameraIntrinsics intrinsics_from_config(const SequenceConfig& config) {
    CameraIntrinsics cam;
    cam.focal_px = config.camera.focal_px;
    cam.image_width = config.image_width;
    cam.image_height = config.image_height;
    cam.cx = config.camera.cx.value_or(config.image_width / 2.0);
    cam.cy = config.camera.cy.value_or(config.image_height / 2.0);
    return cam;
}

std::optional<Pixel> project_point(const Vec3& p, const CameraIntrinsics& cam) {
    if (!(p.z > 0.0)) return std::nullopt;
    return Pixel{cam.cx + cam.focal_px * p.x / p.z, cam.cy + cam.focal_px * p.y / p.z};
}

FrustumSlopes frustum_slopes(const CameraIntrinsics& cam) {
    return {-cam.cx / cam.focal_px, (cam.image_width - cam.cx) / cam.focal_px,
            -cam.cy / cam.focal_px, (cam.image_height - cam.cy) / cam.focal_px};
}

BodyFrame body_frame(const Vec3& heading) {
    BodyFrame f;
    f.forward = heading;
    Vec3 world_up{0.0, -1.0, 0.0};  // -y is up in the camera frame
    Vec3 right = f.forward.cross(world_up).normalized();
    if (right.norm_sq() == 0.0) right = {0.0, 0.0, 1.0};  // heading straight up or down
    f.right = right;
    f.up = f.right.cross(f.forward);
    return f;
}

std::optional<Bbox> fish_bbox_unclipped(const boids::FishState& fish, const BodyExtent& extent,
                                        const CameraIntrinsics& cam) {
    BodyFrame frame = body_frame(fish.heading);
    Vec3 half_l = frame.forward * (0.5 * extent.length * fish.scale);
    Vec3 half_h = frame.up * (0.5 * extent.height * fish.scale);
    Vec3 half_w = frame.right * (0.5 * extent.width * fish.scale);

    double u_min = 0.0, u_max = 0.0, v_min = 0.0, v_max = 0.0;
    bool first = true;
    for (int sl : {-1, 1}) {
        for (int sh : {-1, 1}) {
            for (int sw : {-1, 1}) {
                Vec3 corner = fish.position + half_l * sl + half_h * sh + half_w * sw;
                auto px = project_point(corner, cam);
                if (!px) return std::nullopt;
                u_min = first ? px->u : std::min(u_min, px->u);
                u_max = first ? px->u : std::max(u_max, px->u);
                v_min = first ? px->v : std::min(v_min, px->v);
                v_max = first ? px->v : std::max(v_max, px->v);
                first = false;
            }
        }
    }
    Bbox box{u_min, v_min, u_max - u_min, v_max - v_min};
    if (!(box.width > 0.0 && box.height > 0.0)) return std::nullopt;
    return box;
}

std::optional<Bbox> clip_to_image(const Bbox& box, const CameraIntrinsics& cam) {
    double left = std::max(box.left, 0.0);
    double top = std::max(box.top, 0.0);
    double right = std::min(box.right(), static_cast<double>(cam.image_width));
    double bottom = std::min(box.bottom(), static_cast<double>(cam.image_height));
    if (right - left <= 0.0 || bottom - top <= 0.0) return std::nullopt;
    return Bbox{left, top, right - left, bottom - top};
}

std::optional<Bbox> fish_bbox(const boids::FishState& fish, const BodyExtent& extent,
                              const CameraIntrinsics& cam) {
    auto hull = fish_bbox_unclipped(fish, extent, cam);
    if (!hull) return std::nullopt;
    return clip_to_image(*hull, cam);
}

}  // namespace synthmot::cam
