#pragma once

// Brute-force reachability: the fewest folds with which a target can be selected from the
// user's dominant hand, found by BFS over a grid visibility graph.

#include <optional>
#include <vector>

#include "foldray/geom.hpp"
#include "foldray/scene.hpp"

namespace foldray {

struct Aabb {
    Vec3 min;
    Vec3 max;
};

/// Bounding box of every object (and the spawn hand), grown by `margin` on each side.
Aabb scene_bounds(const Scene& scene, double margin = 1.0);

/// Representative point of a target: sphere/box/quad centre.
Vec3 shape_center(const Shape& shape);

struct ReachOptions {
    int max_folds = 2;
    double grid_step = 0.25;
    /// Defaults to scene_bounds(scene, 1.0).
    std::optional<Aabb> bounds;
    Hand hand = Hand::right;
};

struct ReachEntry {
    ObjectId target_id = 0;
    /// Absent when the target needs more than max_folds folds.
    std::optional<int> min_folds;
    /// Hand, each fold vertex, target centre. Empty when unreachable.
    std::vector<Vec3> witness;
};

/// Throws std::invalid_argument for an unknown target or non-positive grid step.
ReachEntry min_folds(const Scene& scene, ObjectId target_id, const ReachOptions& options);

/// One entry per target object, in scene order.
std::vector<ReachEntry> reachability(const Scene& scene, const ReachOptions& options);

}  // namespace foldray
