#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "synthmot/variant.hpp"
#include "synthmot/vec3.hpp"

namespace synthmot {

/// Inclusive numeric range.
template <typename T>
struct Range {
    T low{};
    T high{};

    bool contains(T v) const { return v >= low && v <= high; }
    bool operator==(const Range& o) const { return low == o.low && high == o.high; }
};

/// Per-weight sampling ranges for the four steering forces.
struct BoidWeightRanges {
    Range<double> separation{0.2, 2.0};
    Range<double> cohesion{0.2, 2.0};
    Range<double> alignment{0.2, 2.0};
    Range<double> leader{0.2, 2.0};
};

/// Fixed (non-sampled) kinematic limits of the school members.
struct BoidKinematics {
    double neighborhood_radius = 1.0;  // m
    double min_speed = 0.05;           // m/s
    double max_speed = 0.4;            // m/s
    double max_force = 2.0;            // m/s^2
};

struct CameraSettings {
    double focal_px = 1000.0;
    // Principal point defaults to the image center; override only if needed.
    std::optional<double> cx;
    std::optional<double> cy;
};

/// Fully validated generation settings. Defaults reproduce the stock setup:
/// 150 frames at 15 FPS, 1920x1080, 4-50 fish. The scene extent, weight
/// ranges, and the turbidity/distractor ranges are this framework's own
/// choices and can all be overridden through the JSON config.
struct SequenceConfig {
    int frame_count = 150;
    double fps = 15.0;
    int image_width = 1920;
    int image_height = 1080;
    EnvironmentVariant variant;
    uint64_t master_seed = 0;

    Range<int64_t> fish_count_range{4, 50};
    Range<double> fish_scale_range{0.7, 1.4};
    Box3 world_bounds{{-2.0, -1.2, 0.8}, {2.0, 1.2, 6.0}};

    BoidWeightRanges boid_weight_ranges;
    BoidKinematics boid_kinematics;

    Range<double> turbidity_density_range{0.1, 0.8};  // 1/m
    Range<int64_t> distractor_count_range{5, 30};
    Range<double> distractor_radius_range{0.02, 0.10};        // m
    Range<double> distractor_transparency_range{0.1, 0.7};

    CameraSettings camera;

    /// Frame directory for the video-background mode; when unset, variant B
    /// falls back to a procedural seabed texture.
    std::optional<std::string> background_dir;

    double dt() const { return 1.0 / fps; }
};

/// Parses and validates a JSON config document. Every field is optional and
/// falls back to the defaults above; unknown keys are rejected. Throws
/// ValidationError with a message naming the offending field.
SequenceConfig validate_config(const std::string& json_text);

/// Same, reading the document from a file.
SequenceConfig load_config_file(const std::string& path);

/// A default-constructed config passed through the same validation.
SequenceConfig default_config();

}  // namespace synthmot
