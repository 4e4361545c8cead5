#include "foldray/reach.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace foldray {

namespace {

void grow(Aabb& box, const Vec3& p) {
    box.min = {std::min(box.min.x, p.x), std::min(box.min.y, p.y), std::min(box.min.z, p.z)};
    box.max = {std::max(box.max.x, p.x), std::max(box.max.y, p.y), std::max(box.max.z, p.z)};
}

void grow(Aabb& box, const Shape& shape) {
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Sphere>) {
                const Vec3 r{s.radius, s.radius, s.radius};
                grow(box, s.center - r);
                grow(box, s.center + r);
            } else if constexpr (std::is_same_v<T, Box>) {
                for (int i = 0; i < 8; ++i) {
                    const Vec3 corner{(i & 1 ? 1.0 : -1.0) * s.half_extents.x, (i & 2 ? 1.0 : -1.0) * s.half_extents.y,
                                      (i & 4 ? 1.0 : -1.0) * s.half_extents.z};
                    grow(box, s.center + s.orientation.rotate(corner));
                }
            } else {
                for (int i = 0; i < 4; ++i) {
                    const Vec3 corner{(i & 1 ? 1.0 : -1.0) * s.half_width, (i & 2 ? 1.0 : -1.0) * s.half_height, 0.0};
                    grow(box, s.pose.apply(corner));
                }
            }
        },
        shape);
}

bool visible(const Scene& scene, const Vec3& a, const Vec3& b, const std::set<ObjectId>& ignore) {
    if (distance(a, b) < 1e-12) return true;
    return segment_visible(scene, a, b, ignore);
}

}  // namespace

Aabb scene_bounds(const Scene& scene, double margin) {
    const Vec3 hand = scene.spawn_hand_position(Hand::right);
    Aabb box{hand, hand};
    grow(box, scene.spawn_hand_position(Hand::left));
    for (const auto& o : scene.objects()) grow(box, o.shape);
    const Vec3 m{margin, margin, margin};
    return {box.min - m, box.max + m};
}

Vec3 shape_center(const Shape& shape) {
    return std::visit(
        [](const auto& s) -> Vec3 {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Quad>) {
                return s.pose.position;
            } else {
                return s.center;
            }
        },
        shape);
}

ReachEntry min_folds(const Scene& scene, ObjectId target_id, const ReachOptions& options) {
    const SceneObject* target = scene.find(target_id);
    if (target == nullptr) throw std::invalid_argument("unknown target id " + std::to_string(target_id));
    if (!(options.grid_step > 0.0)) throw std::invalid_argument("grid_step must be > 0");

    const Vec3 hand = scene.spawn_hand_position(options.hand);
    const Vec3 goal = shape_center(target->shape);
    const std::set<ObjectId> ignore_target{target_id};
    const std::set<ObjectId> none;

    ReachEntry entry{target_id, std::nullopt, {}};
    if (visible(scene, hand, goal, ignore_target)) {
        entry.min_folds = 0;
        entry.witness = {hand, goal};
        return entry;
    }
    if (options.max_folds < 1) return entry;

    // Grid nodes outside every solid.
    const Aabb bounds = options.bounds.value_or(scene_bounds(scene, 1.0));
    const double step = options.grid_step;
    const auto count = [&](double lo, double hi) { return static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1; };
    const long nx = count(bounds.min.x, bounds.max.x);
    const long ny = count(bounds.min.y, bounds.max.y);
    const long nz = count(bounds.min.z, bounds.max.z);
    std::vector<Vec3> nodes;
    for (long i = 0; i < nx; ++i) {
        for (long j = 0; j < ny; ++j) {
            for (long k = 0; k < nz; ++k) {
                const Vec3 p{bounds.min.x + i * step, bounds.min.y + j * step, bounds.min.z + k * step};
                const bool solid = std::any_of(scene.objects().begin(), scene.objects().end(),
                                               [&](const auto& o) { return contains_point(o.shape, p); });
                if (!solid) nodes.push_back(p);
            }
        }
    }

    // Nodes with a clear line to the goal: candidates for the last fold.
    std::vector<std::size_t> sees_goal;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (visible(scene, nodes[i], goal, ignore_target)) sees_goal.push_back(i);
    }

    // BFS by fold count; within a level each node keeps its shortest-length parent, so the
    // witness is the shortest polyline among those with the fewest folds.
    constexpr long kFromHand = -1;
    std::vector<long> parent(nodes.size(), kFromHand);
    std::vector<double> path_length(nodes.size(), kInfinity);
    std::vector<char> visited(nodes.size(), 0);

    const auto finish = [&](int folds, long last) {
        std::vector<Vec3> path;
        for (long v = last; v != kFromHand; v = parent[v]) path.push_back(nodes[v]);
        path.push_back(hand);
        std::reverse(path.begin(), path.end());
        path.push_back(goal);
        entry.min_folds = folds;
        entry.witness = std::move(path);
        return entry;
    };

    std::vector<std::size_t> frontier;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (visible(scene, hand, nodes[i], none)) {
            visited[i] = 1;
            path_length[i] = distance(hand, nodes[i]);
            frontier.push_back(i);
        }
    }
    {
        long best = -1;
        double best_len = kInfinity;
        for (const std::size_t b : sees_goal) {
            const double len = path_length[b] + distance(nodes[b], goal);
            if (visited[b] && len < best_len) {
                best = static_cast<long>(b);
                best_len = len;
            }
        }
        if (best >= 0) return finish(1, best);
    }

    for (int folds = 2; folds <= options.max_folds; ++folds) {
        // A frontier node that sees a goal-visible node closes a path with `folds` folds.
        long best_a = -1;
        long best_b = -1;
        double best_len = kInfinity;
        for (const std::size_t a : frontier) {
            for (const std::size_t b : sees_goal) {
                if (visited[b]) continue;
                const double len = path_length[a] + distance(nodes[a], nodes[b]) + distance(nodes[b], goal);
                if (len < best_len && visible(scene, nodes[a], nodes[b], none)) {
                    best_a = static_cast<long>(a);
                    best_b = static_cast<long>(b);
                    best_len = len;
                }
            }
        }
        if (best_b >= 0) {
            parent[best_b] = best_a;
            return finish(folds, best_b);
        }
        if (folds == options.max_folds) break;

        std::vector<std::size_t> next;
        for (std::size_t v = 0; v < nodes.size(); ++v) {
            if (visited[v]) continue;
            for (const std::size_t a : frontier) {
                const double len = path_length[a] + distance(nodes[a], nodes[v]);
                if (len < path_length[v] && visible(scene, nodes[a], nodes[v], none)) {
                    parent[v] = static_cast<long>(a);
                    path_length[v] = len;
                }
            }
            if (parent[v] != kFromHand) next.push_back(v);
        }
        for (const std::size_t v : next) visited[v] = 1;
        if (next.empty()) break;
        frontier = std::move(next);
    }
    return entry;
}

std::vector<ReachEntry> reachability(const Scene& scene, const ReachOptions& options) {
    std::vector<ReachEntry> out;
    for (const auto& o : scene.objects()) {
        if (o.selectable()) out.push_back(min_folds(scene, o.id, options));
    }
    return out;
}

}  // namespace foldray
