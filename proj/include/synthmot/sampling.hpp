#pragma once

#include <cstdint>
#include <vector>

#include "synthmot/boids.hpp"
#include "synthmot/color.hpp"
#include "synthmot/config.hpp"
#include "synthmot/environment.hpp"

namespace synthmot {

/// Rendered look of one fish; albedo is a silvery body tint, glossiness
/// scales the specular stripe.
struct Appearance {
    Color albedo{0.6, 0.62, 0.66};
    double glossiness = 0.5;
};

struct FishInitialPose {
    Vec3 position;
    Vec3 heading;  // unit
    double scale = 1.0;
    Appearance appearance;
    double initial_speed = 0.1;  // m/s along the heading
};

/// Everything randomized for one sequence, drawn once up front so the rest
/// of the pipeline is a pure function of this value.
struct SequenceParams {
    int sequence_index = 0;
    uint64_t seed = 0;  // derived from (master_seed, sequence_index)
    int fish_count = 0;
    boids::BoidWeights boid_weights;
    std::vector<FishInitialPose> fish_initial_poses;
    env::EnvInstance environment;

    /// Seed of the environment stream; the renderer reuses it to move
    /// distractors per frame.
    uint64_t environment_seed = 0;
};

/// Deterministically samples all per-sequence parameters from
/// (config.master_seed, sequence_index). Every scalar lands inside its
/// configured range.
SequenceParams sample_sequence_params(const SequenceConfig& config, int sequence_index);

namespace boids {

/// Initial school (frame 0) from the sampled poses; fish ids are 1-based in
/// pose order.
SchoolState initial_school(const SequenceParams& params);

/// Runs the behavior model for config.frame_count frames (frame 0 is the
/// initial poses). Fish that leave the world bounds are retired from all
/// later frames. Pure function of (params, config).
std::vector<SchoolState> simulate(const SequenceParams& params, const SequenceConfig& config);

}  // namespace boids

}  // namespace synthmot
