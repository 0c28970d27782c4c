#pragma once

#include <vector>

#include "synthmot/config.hpp"
#include "synthmot/vec3.hpp"

namespace synthmot::boids {

/// Steering weights plus the kinematic limits they operate under.
/// `separation`..`leader` are the dimensionless gains of the four forces.
struct BoidWeights {
    double separation = 1.0;
    double cohesion = 1.0;
    double alignment = 1.0;
    double leader = 1.0;
    double neighborhood_radius = 1.0;  // m
    double min_speed = 0.05;           // m/s
    double max_speed = 0.4;            // m/s
    double max_force = 2.0;            // m/s^2
};

struct FishState {
    int id = 0;
    Vec3 position;       // m
    Vec3 velocity;       // m/s
    Vec3 heading;        // unit
    double scale = 1.0;  // body-size multiplier
};

/// The four steering ingredients, each normalized to unit length (or zero
/// when undefined) before weighting.
struct ForceComponents {
    Vec3 separation;
    Vec3 cohesion;
    Vec3 alignment;
    Vec3 leader;
};

struct SchoolState {
    int frame_index = 0;
    std::vector<FishState> fishes;
};

/// Every other fish within `radius` of the subject, boundary inclusive.
std::vector<FishState> neighborhood(const FishState& subject, const SchoolState& school,
                                    double radius);

/// Computes the four unit force components from the neighbor set.
/// Separation is the normalized sum of inverse-square-weighted offsets;
/// cohesion points at the neighbor centroid; alignment at the mean neighbor
/// velocity relative to the subject's own; leader is the heading of the
/// neighbor whose heading is closest (max dot product) to the subject's,
/// lowest id winning ties. A coincident pair (distance < 1e-9) contributes a
/// fixed unit x-axis to separation instead of a singular term.
ForceComponents compute_forces(const FishState& subject, const std::vector<FishState>& neighbors);

/// Weighted sum of the force components, clamped to norm <= max_force.
Vec3 steering(const ForceComponents& forces, const BoidWeights& weights);

/// Inward push that ramps up linearly inside the outer 10% of each bounds
/// axis and keeps growing past the boundary. Magnitude scale is max_force
/// per axis at the wall.
Vec3 boundary_repulsion(const Vec3& position, const Box3& bounds, double max_force);

/// One semi-implicit Euler step of the whole school: steer, clamp speed into
/// [min_speed, max_speed], advance positions, renormalize headings. Pure.
SchoolState step(const SchoolState& school, const BoidWeights& weights, const Box3& bounds,
                 double dt);

}  // namespace synthmot::boids
