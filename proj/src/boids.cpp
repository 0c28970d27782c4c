#include "synthmot/boids.hpp"

#include <algorithm>
#include <cmath>

namespace synthmot::boids {

std::vector<FishState> neighborhood(const FishState& subject, const SchoolState& school,
                                    double radius) {
    std::vector<FishState> out;
    double r2 = radius * radius;
    for (const FishState& other : school.fishes) {
        if (other.id == subject.id) continue;
        if ((other.position - subject.position).norm_sq() <= r2) out.push_back(other);
    }
    return out;
}

ForceComponents compute_forces(const FishState& subject, const std::vector<FishState>& neighbors) {
    ForceComponents f;
    if (neighbors.empty()) return f;

    Vec3 separation_sum;
    Vec3 centroid;
    Vec3 velocity_sum;
    const FishState* leader = nullptr;
    double best_heading_dot = -2.0;

    for (const FishState& other : neighbors) {
        Vec3 offset = subject.position - other.position;
        double dist = offset.norm();
        if (dist < 1e-9) {
            // Coincident pair; a fixed axis keeps the result finite and deterministic.
            separation_sum += Vec3{1.0, 0.0, 0.0};
        } else {
            separation_sum += offset / (dist * dist);
        }
        centroid += other.position;
        velocity_sum += other.velocity;

        double d = subject.heading.dot(other.heading);
        if (d > best_heading_dot || (d == best_heading_dot && leader && other.id < leader->id)) {
            best_heading_dot = d;
            leader = &other;
        }
    }

    double n = static_cast<double>(neighbors.size());
    f.separation = separation_sum.normalized();
    f.cohesion = (centroid / n - subject.position).normalized();
    f.alignment = (velocity_sum / n - subject.velocity).normalized();
    f.leader = leader->heading.normalized();
    return f;
}

namespace {

Vec3 clamp_norm(const Vec3& v, double limit) {
    double n = v.norm();
    if (n <= limit || n < 1e-300) return v;
    return v * (limit / n);
}

}  // namespace

Vec3 steering(const ForceComponents& forces, const BoidWeights& weights) {
    Vec3 steer = forces.separation * weights.separation + forces.cohesion * weights.cohesion +
                 forces.alignment * weights.alignment + forces.leader * weights.leader;
    return clamp_norm(steer, weights.max_force);
}

Vec3 boundary_repulsion(const Vec3& position, const Box3& bounds, double max_force) {
    Vec3 force;
    const double* pos[3] = {&position.x, &position.y, &position.z};
    const double* lo[3] = {&bounds.min.x, &bounds.min.y, &bounds.min.z};
    const double* hi[3] = {&bounds.max.x, &bounds.max.y, &bounds.max.z};
    double* out[3] = {&force.x, &force.y, &force.z};
    for (int axis = 0; axis < 3; ++axis) {
        double margin = 0.1 * (*hi[axis] - *lo[axis]);
        if (margin <= 0.0) continue;
        double below = (*lo[axis] + margin) - *pos[axis];
        if (below > 0.0) *out[axis] += max_force * (below / margin);
        double above = *pos[axis] - (*hi[axis] - margin);
        if (above > 0.0) *out[axis] -= max_force * (above / margin);
    }
    return force;
}

namespace {

Vec3 clamp_speed(const Vec3& velocity, const Vec3& fallback_heading, double min_speed,
                 double max_speed) {
    double speed = velocity.norm();
    if (speed > max_speed) return velocity * (max_speed / speed);
    if (speed < min_speed) {
        if (speed < 1e-12) return fallback_heading * min_speed;
        return velocity * (min_speed / speed);
    }
    return velocity;
}

}  // namespace

SchoolState step(const SchoolState& school, const BoidWeights& weights, const Box3& bounds,
                 double dt) {
    SchoolState next;
    next.frame_index = school.frame_index + 1;
    next.fishes.reserve(school.fishes.size());

    for (const FishState& fish : school.fishes) {
        std::vector<FishState> neighbors = neighborhood(fish, school, weights.neighborhood_radius);
        Vec3 steer = steering(compute_forces(fish, neighbors), weights);
        Vec3 accel = steer + boundary_repulsion(fish.position, bounds, weights.max_force);

        FishState updated = fish;
        updated.velocity =
            clamp_speed(fish.velocity + accel * dt, fish.heading, weights.min_speed,
                        weights.max_speed);
        updated.position = fish.position + updated.velocity * dt;
        Vec3 h = updated.velocity.normalized();
        if (h.norm_sq() > 0.0) updated.heading = h;
        next.fishes.push_back(updated);
    }
    return next;
}

}  // namespace synthmot::boids
