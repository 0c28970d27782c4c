#include "synthmot/renderer.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "synthmot/errors.hpp"
#include "synthmot/rng.hpp"

namespace synthmot::render {

namespace {

// ---------------------------------------------------------------------------
// Procedural background: two octaves of value noise over a hashed lattice.

uint64_t cell_hash(uint64_t seed, int64_t xi, int64_t yi) {
    uint64_t h = seed;
    h = splitmix64_mix(h ^ (static_cast<uint64_t>(xi) * 0x9E3779B97F4A7C15ULL));
    h = splitmix64_mix(h ^ (static_cast<uint64_t>(yi) * 0xC2B2AE3D27D4EB4FULL));
    return h;
}

double value_noise(uint64_t seed, double x, double y) {
    int64_t x0 = static_cast<int64_t>(std::floor(x));
    int64_t y0 = static_cast<int64_t>(std::floor(y));
    double fx = x - static_cast<double>(x0);
    double fy = y - static_cast<double>(y0);
    auto fade = [](double t) { return t * t * (3.0 - 2.0 * t); };
    auto val = [&](int64_t xi, int64_t yi) {
        return static_cast<double>(cell_hash(seed, xi, yi) >> 11) * 0x1.0p-53;
    };
    double u = fade(fx), v = fade(fy);
    double top = val(x0, y0) + (val(x0 + 1, y0) - val(x0, y0)) * u;
    double bot = val(x0, y0 + 1) + (val(x0 + 1, y0 + 1) - val(x0, y0 + 1)) * u;
    return top + (bot - top) * v;
}

void fill_monotone(FrameBuffer& fb, const Color& c) {
    uint8_t r = FrameBuffer::to_byte(c.r);
    uint8_t g = FrameBuffer::to_byte(c.g);
    uint8_t b = FrameBuffer::to_byte(c.b);
    for (size_t i = 0; i < fb.pixels.size(); i += 3) {
        fb.pixels[i] = r;
        fb.pixels[i + 1] = g;
        fb.pixels[i + 2] = b;
    }
}

void fill_procedural(FrameBuffer& fb, const env::BackgroundSpec& bg) {
    const Color dark{0.18, 0.23, 0.19};
    const Color light{0.46, 0.52, 0.45};
    uint64_t seed2 = splitmix64_mix(bg.texture_seed ^ 0x5851F42D4C957F2DULL);
    for (int y = 0; y < fb.height; ++y) {
        for (int x = 0; x < fb.width; ++x) {
            double n = 0.7 * value_noise(bg.texture_seed, x / 140.0, y / 140.0) +
                       0.3 * value_noise(seed2, x / 36.0, y / 36.0);
            Color c = lerp(dark, light, n);
            // Tie the seabed palette to the sequence's water color.
            c = lerp(c, bg.monotone_color, 0.25);
            fb.set(x, y, c);
        }
    }
}

FrameBuffer resize_nearest(const FrameBuffer& src, int w, int h) {
    if (src.width == w && src.height == h) return src;
    FrameBuffer out(w, h);
    for (int y = 0; y < h; ++y) {
        int sy = std::min<int>(src.height - 1,
                               static_cast<int>(static_cast<int64_t>(y) * src.height / h));
        for (int x = 0; x < w; ++x) {
            int sx = std::min<int>(src.width - 1,
                                   static_cast<int>(static_cast<int64_t>(x) * src.width / w));
            size_t so = src.offset(sx, sy);
            size_t dst = out.offset(x, y);
            out.pixels[dst] = src.pixels[so];
            out.pixels[dst + 1] = src.pixels[so + 1];
            out.pixels[dst + 2] = src.pixels[so + 2];
        }
    }
    return out;
}

std::vector<std::filesystem::path> list_background_frames(const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    std::error_code ec;
    if (fs::is_directory(dir, ec)) {
        for (const auto& entry : fs::directory_iterator(dir, ec)) {
            if (!entry.is_regular_file()) continue;
            std::string ext = entry.path().extension().string();
            if (ext == ".png" || ext == ".ppm") files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

void box_blur(FrameBuffer& fb, int radius) {
    if (radius <= 0) return;
    // Separable two-pass blur; window clamped at the borders.
    auto pass = [&](bool horizontal) {
        FrameBuffer src = fb;
        int limit = horizontal ? fb.width : fb.height;
        int lines = horizontal ? fb.height : fb.width;
        for (int line = 0; line < lines; ++line) {
            for (int i = 0; i < limit; ++i) {
                int lo = std::max(0, i - radius);
                int hi = std::min(limit - 1, i + radius);
                int sum[3] = {0, 0, 0};
                for (int j = lo; j <= hi; ++j) {
                    size_t o = horizontal ? src.offset(j, line) : src.offset(line, j);
                    sum[0] += src.pixels[o];
                    sum[1] += src.pixels[o + 1];
                    sum[2] += src.pixels[o + 2];
                }
                int n = hi - lo + 1;
                size_t o = horizontal ? fb.offset(i, line) : fb.offset(line, i);
                fb.pixels[o] = static_cast<uint8_t>((sum[0] + n / 2) / n);
                fb.pixels[o + 1] = static_cast<uint8_t>((sum[1] + n / 2) / n);
                fb.pixels[o + 2] = static_cast<uint8_t>((sum[2] + n / 2) / n);
            }
        }
    };
    pass(true);
    pass(false);
}

void apply_augmentation(FrameBuffer& fb, const env::BackgroundAugmentation& aug) {
    for (int y = 0; y < fb.height; ++y) {
        for (int x = 0; x < fb.width; ++x) {
            size_t o = fb.offset(x, y);
            double r = fb.pixels[o] / 255.0;
            double g = fb.pixels[o + 1] / 255.0;
            double b = fb.pixels[o + 2] / 255.0;
            double luma = 0.299 * r + 0.587 * g + 0.114 * b;
            r = luma + (r - luma) * aug.saturation + aug.color_shift.r;
            g = luma + (g - luma) * aug.saturation + aug.color_shift.g;
            b = luma + (b - luma) * aug.saturation + aug.color_shift.b;
            fb.set(x, y, {r, g, b});
        }
    }
    box_blur(fb, aug.blur_radius_px);
}

// ---------------------------------------------------------------------------
// Sprites.

struct ScreenPoint {
    double u = 0.0, v = 0.0;
};

/// Lambert-style shade with the light fixed above the scene (screen-space
/// up): t is the signed minor-axis coordinate in [-1,1] with +t pointing
/// down on screen.
Color shade_fish(const Appearance& look, double t) {
    double lambert = 0.55 - 0.35 * t;
    Color c{look.albedo.r * lambert, look.albedo.g * lambert, look.albedo.b * lambert};
    double stripe = look.glossiness * 0.45 * std::exp(-std::pow((t + 0.35) / 0.22, 2.0));
    return clamped({c.r + stripe, c.g + stripe, c.b + stripe});
}

void draw_fish(FrameBuffer& fb, const boids::FishState& fish, const Appearance& look,
               const cam::BodyExtent& extent, const env::EnvInstance& env,
               const cam::CameraIntrinsics& cam) {
    cam::BodyFrame frame = cam::body_frame(fish.heading);
    double half_len = 0.5 * extent.length * fish.scale;
    double half_h = 0.5 * extent.height * fish.scale;

    auto center = cam::project_point(fish.position, cam);
    auto nose = cam::project_point(fish.position + frame.forward * half_len, cam);
    auto tail = cam::project_point(fish.position - frame.forward * half_len, cam);
    auto crown = cam::project_point(fish.position + frame.up * half_h, cam);
    if (!center || !nose || !tail || !crown) return;

    double axis_u = nose->u - tail->u;
    double axis_v = nose->v - tail->v;
    double a = 0.5 * std::hypot(axis_u, axis_v);
    double b = std::hypot(crown->u - center->u, crown->v - center->v);
    if (a > 1e-9) {
        axis_u /= 2.0 * a;
        axis_v /= 2.0 * a;
    } else {
        axis_u = 1.0;
        axis_v = 0.0;
    }
    // Head-on fish degenerate to a blob of the cross-section size.
    a = std::max({a, b, 0.5});
    b = std::max(b, 0.5);

    double alpha = env::turbidity_alpha(fish.position.norm(), env.turbidity);
    // +t along the minor axis must point down on screen so the shade always
    // lights the top of the body.
    double perp_u = -axis_v, perp_v = axis_u;
    if (perp_v < 0.0) {
        perp_u = -perp_u;
        perp_v = -perp_v;
    }

    int u_lo = std::max(0, static_cast<int>(std::floor(center->u - a)) - 1);
    int u_hi = std::min(fb.width - 1, static_cast<int>(std::ceil(center->u + a)) + 1);
    int v_lo = std::max(0, static_cast<int>(std::floor(center->v - a)) - 1);
    int v_hi = std::min(fb.height - 1, static_cast<int>(std::ceil(center->v + a)) + 1);
    bool painted_center = false;
    for (int y = v_lo; y <= v_hi; ++y) {
        for (int x = u_lo; x <= u_hi; ++x) {
            double du = (x + 0.5) - center->u;
            double dv = (y + 0.5) - center->v;
            double s = (du * axis_u + dv * axis_v) / a;
            double t = (du * perp_u + dv * perp_v) / b;
            if (s * s + t * t > 1.0) continue;
            Color c = lerp(shade_fish(look, std::clamp(t, -1.0, 1.0)), env.turbidity.fog_color,
                           alpha);
            fb.set(x, y, c);
            if (x == static_cast<int>(std::floor(center->u)) &&
                y == static_cast<int>(std::floor(center->v))) {
                painted_center = true;
            }
        }
    }
    // Sub-pixel fish still mark their annotated box.
    int cu = static_cast<int>(std::floor(center->u));
    int cv = static_cast<int>(std::floor(center->v));
    if (!painted_center && cu >= 0 && cu < fb.width && cv >= 0 && cv < fb.height) {
        Color c = lerp(shade_fish(look, 0.0), env.turbidity.fog_color, alpha);
        fb.set(cu, cv, c);
    }
}

void draw_distractor(FrameBuffer& fb, const env::Distractor& d, const env::EnvInstance& env,
                     const cam::CameraIntrinsics& cam) {
    auto center = cam::project_point(d.position, cam);
    if (!center) return;
    double r = d.radius * cam.focal_px / d.position.z;
    if (r < 0.35) return;
    double alpha = env::turbidity_alpha(d.position.norm(), env.turbidity);
    double opacity = std::clamp(1.0 - d.transparency, 0.0, 1.0);

    int u_lo = std::max(0, static_cast<int>(std::floor(center->u - r)) - 1);
    int u_hi = std::min(fb.width - 1, static_cast<int>(std::ceil(center->u + r)) + 1);
    int v_lo = std::max(0, static_cast<int>(std::floor(center->v - r)) - 1);
    int v_hi = std::min(fb.height - 1, static_cast<int>(std::ceil(center->v + r)) + 1);
    for (int y = v_lo; y <= v_hi; ++y) {
        for (int x = u_lo; x <= u_hi; ++x) {
            double du = (x + 0.5) - center->u;
            double dv = (y + 0.5) - center->v;
            if (du * du + dv * dv > r * r) continue;
            double sphere_shade = 0.75 - 0.25 * (dv / r);
            Color lit{d.color.r * sphere_shade, d.color.g * sphere_shade,
                      d.color.b * sphere_shade};
            Color fogged = lerp(lit, env.turbidity.fog_color, alpha);
            size_t o = fb.offset(x, y);
            Color dst{fb.pixels[o] / 255.0, fb.pixels[o + 1] / 255.0, fb.pixels[o + 2] / 255.0};
            Color out = lerp(dst, fogged, opacity);
            fb.set(x, y, out);
        }
    }
}

}  // namespace

RenderContext make_render_context(const SequenceParams& params) {
    RenderContext ctx;
    ctx.appearances.reserve(params.fish_initial_poses.size());
    for (const FishInitialPose& pose : params.fish_initial_poses) {
        ctx.appearances.push_back(pose.appearance);
    }
    return ctx;
}

FrameBuffer render_background(const env::EnvInstance& env, const cam::CameraIntrinsics& cam,
                              int frame_index) {
    FrameBuffer fb(cam.image_width, cam.image_height);
    switch (env.background.kind) {
        case env::BackgroundKind::monotone:
            fill_monotone(fb, env.background.monotone_color);
            return fb;
        case env::BackgroundKind::procedural:
            fill_procedural(fb, env.background);
            break;
        case env::BackgroundKind::image_sequence: {
            auto frames = list_background_frames(env.background.image_dir);
            if (frames.empty()) {
                throw IoError("background source unavailable: " + env.background.image_dir);
            }
            const auto& path = frames[static_cast<size_t>(frame_index) % frames.size()];
            fb = resize_nearest(read_image(path.string()), cam.image_width, cam.image_height);
            break;
        }
    }
    apply_augmentation(fb, env.background.augmentation);
    return fb;
}

FrameBuffer render_frame(const boids::SchoolState& school, const env::EnvInstance& env,
                         const cam::CameraIntrinsics& cam, int frame_index,
                         const RenderContext& ctx) {
    FrameBuffer fb = (ctx.cached_background != nullptr &&
                      env.background.kind != env::BackgroundKind::image_sequence)
                         ? *ctx.cached_background
                         : render_background(env, cam, frame_index);

    // Painter's algorithm over fish and distractors together: farthest first,
    // index as a deterministic tie-break.
    struct Item {
        double z;
        bool is_fish;
        size_t index;
    };
    std::vector<Item> items;
    items.reserve(school.fishes.size() + env.distractors.size());
    for (size_t i = 0; i < school.fishes.size(); ++i) {
        items.push_back({school.fishes[i].position.z, true, i});
    }
    for (size_t i = 0; i < env.distractors.size(); ++i) {
        items.push_back({env.distractors[i].position.z, false, i});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.z != b.z) return a.z > b.z;
        if (a.is_fish != b.is_fish) return !a.is_fish;
        return a.index < b.index;
    });

    for (const Item& item : items) {
        if (item.is_fish) {
            const boids::FishState& fish = school.fishes[item.index];
            Appearance look;
            size_t slot = static_cast<size_t>(fish.id) - 1;
            if (fish.id >= 1 && slot < ctx.appearances.size()) look = ctx.appearances[slot];
            draw_fish(fb, fish, look, ctx.body_extent, env, cam);
        } else {
            draw_distractor(fb, env.distractors[item.index], env, cam);
        }
    }
    return fb;
}

}  // namespace synthmot::render
