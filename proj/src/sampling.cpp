#include "synthmot/sampling.hpp"

#include <algorithm>

#include "synthmot/rng.hpp"

namespace synthmot {

namespace {

// Sub-stream ids hung off the per-sequence seed. Values are arbitrary but
// frozen: changing them changes every generated dataset.
constexpr uint64_t kStreamParams = 1;
constexpr uint64_t kStreamEnvironment = 2;

// Silvery body tint endpoints.
constexpr Color kAlbedoDark{0.45, 0.48, 0.52};
constexpr Color kAlbedoLight{0.72, 0.74, 0.78};

}  // namespace

SequenceParams sample_sequence_params(const SequenceConfig& config, int sequence_index) {
    SequenceParams params;
    params.sequence_index = sequence_index;
    params.seed = derive_seed(config.master_seed, static_cast<uint64_t>(sequence_index));
    params.environment_seed = derive_seed(params.seed, kStreamEnvironment);

    Rng rng(derive_seed(params.seed, kStreamParams));

    params.fish_count = static_cast<int>(
        rng.uniform_int(config.fish_count_range.low, config.fish_count_range.high));

    const BoidWeightRanges& wr = config.boid_weight_ranges;
    const BoidKinematics& kin = config.boid_kinematics;
    params.boid_weights.separation = rng.uniform(wr.separation.low, wr.separation.high);
    params.boid_weights.cohesion = rng.uniform(wr.cohesion.low, wr.cohesion.high);
    params.boid_weights.alignment = rng.uniform(wr.alignment.low, wr.alignment.high);
    params.boid_weights.leader = rng.uniform(wr.leader.low, wr.leader.high);
    params.boid_weights.neighborhood_radius = kin.neighborhood_radius;
    params.boid_weights.min_speed = kin.min_speed;
    params.boid_weights.max_speed = kin.max_speed;
    params.boid_weights.max_force = kin.max_force;

    // Spawn inside the repulsion-free interior (the outer 10% per axis is the
    // boundary ramp), so initial frames are not dominated by wall pushes.
    const Box3& wb = config.world_bounds;
    Vec3 inset = wb.extent() * 0.1;
    Box3 spawn{wb.min + inset, wb.max - inset};

    params.fish_initial_poses.reserve(params.fish_count);
    for (int i = 0; i < params.fish_count; ++i) {
        FishInitialPose pose;
        pose.position = {rng.uniform(spawn.min.x, spawn.max.x),
                         rng.uniform(spawn.min.y, spawn.max.y),
                         rng.uniform(spawn.min.z, spawn.max.z)};
        pose.heading = rng.unit_vector();
        pose.scale = rng.uniform(config.fish_scale_range.low, config.fish_scale_range.high);
        pose.appearance.albedo = lerp(kAlbedoDark, kAlbedoLight, rng.uniform());
        pose.appearance.glossiness = rng.uniform();
        pose.initial_speed = rng.uniform(kin.min_speed, kin.max_speed);
        params.fish_initial_poses.push_back(pose);
    }

    params.environment =
        env::sample_environment(config.variant, params.environment_seed, config);
    return params;
}

namespace boids {

SchoolState initial_school(const SequenceParams& params) {
    SchoolState school;
    school.frame_index = 0;
    school.fishes.reserve(params.fish_initial_poses.size());
    int next_id = 1;
    for (const FishInitialPose& pose : params.fish_initial_poses) {
        FishState fish;
        fish.id = next_id++;
        fish.position = pose.position;
        fish.heading = pose.heading;
        fish.velocity = pose.heading * pose.initial_speed;
        fish.scale = pose.scale;
        school.fishes.push_back(fish);
    }
    return school;
}

std::vector<SchoolState> simulate(const SequenceParams& params, const SequenceConfig& config) {
    std::vector<SchoolState> frames;
    frames.reserve(config.frame_count);
    frames.push_back(initial_school(params));

    for (int f = 1; f < config.frame_count; ++f) {
        SchoolState next = step(frames.back(), params.boid_weights, config.world_bounds,
                                config.dt());
        // Retire fish that left the scene volume; their track ends here.
        std::erase_if(next.fishes, [&](const FishState& fish) {
            return !config.world_bounds.contains(fish.position);
        });
        frames.push_back(std::move(next));
    }
    return frames;
}

}  // namespace boids

}  // namespace synthmot
