#include "foldray/folding.hpp"

#include <cmath>
#include <string>

namespace foldray {

void FoldingConfig::validate() const {
    const auto require_positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(name) + " must be > 0");
    };
    require_positive(epsilon, "epsilon");
    require_positive(vertical_fov, "vertical_fov");
    require_positive(aspect, "aspect");
    require_positive(near_plane, "near_plane");
    require_positive(window_half_size, "window_half_size");
    require_positive(window_distance, "window_distance");
    if (max_folds == 0) throw ConfigError("max_folds must be > 0");
    if (!(vertical_fov < std::numbers::pi)) throw ConfigError("vertical_fov must be < pi");
    if (!(camera_offset >= 0.0) || !std::isfinite(camera_offset)) throw ConfigError("camera_offset must be >= 0");
}

FoldChain create_fold(const FoldChain& chain, const Vec3& point, const Pose& head) {
    if (chain.full()) {
        throw ChainFullError("fold chain is full (" + std::to_string(chain.max_length()) + " folds)");
    }
    FoldChain next = chain;
    next.folds_.push_back({point, head.orientation});
    return next;
}

FoldChain pop_fold(const FoldChain& chain) {
    FoldChain next = chain;
    if (!next.folds_.empty()) next.folds_.pop_back();
    return next;
}

ViewportWindow window_pose(const Pose& head, const FoldingConfig& config) {
    // The quad's +Z is the head's back axis, so it faces the viewer; up matches the head.
    return {head.position + head.forward() * config.window_distance, head.orientation, config.window_half_size,
            config.window_distance};
}

std::optional<FoldCamera> fold_camera(const FoldChain& chain, const Pose& head, const FoldingConfig& config) {
    if (chain.empty()) return std::nullopt;
    Vec3 position = chain.back().position;
    if (config.camera_offset != 0.0) position += head.forward() * config.camera_offset;
    return FoldCamera{{position, head.orientation}, config.vertical_fov, config.aspect, config.near_plane};
}

Ray uv_to_camera_ray(double u, double v, const FoldCamera& cam) {
    if (!(std::abs(u) <= 1.0) || !(std::abs(v) <= 1.0)) {
        throw std::invalid_argument("window coordinates must lie in [-1, 1]");
    }
    const double tan_half = std::tan(cam.vertical_fov * 0.5);
    const Vec3 local{u * tan_half * cam.aspect, v * tan_half, -1.0};
    return Ray(cam.pose.position, cam.pose.orientation.rotate(normalize(local)));
}

std::optional<std::pair<double, double>> project_to_uv(const FoldCamera& cam, const Vec3& world) {
    const Vec3 local = cam.pose.apply_inverse(world);
    const double depth = -local.z;
    if (!(depth >= cam.near_plane)) return std::nullopt;
    const double tan_half = std::tan(cam.vertical_fov * 0.5);
    const double u = local.x / (depth * tan_half * cam.aspect);
    const double v = local.y / (depth * tan_half);
    if (std::abs(u) > 1.0 || std::abs(v) > 1.0) return std::nullopt;
    return std::make_pair(u, v);
}

std::optional<WindowRemap> remap_through_window(const Ray& physical, const Pose& head, const FoldChain& chain,
                                                const FoldingConfig& config) {
    const auto cam = fold_camera(chain, head, config);
    if (!cam) return std::nullopt;
    const ViewportWindow window = window_pose(head, config);
    const auto hit = intersect(physical, window.quad());
    if (!hit || !hit->uv) return std::nullopt;
    const auto [u, v] = *hit->uv;
    return WindowRemap{uv_to_camera_ray(u, v, *cam), u, v, hit->t, hit->point};
}

std::optional<Crossing> crossing_point(const Ray& main, const Ray& secondary, double epsilon) {
    const auto ca = closest_approach(main, secondary);
    if (!ca || ca->distance > epsilon || !(ca->t_a > 0.0) || !(ca->t_b > 0.0)) return std::nullopt;
    return Crossing{main.at(ca->t_a), ca->t_a};
}

HandRay trace_hand(const WorldInput& input, Hand hand, const FoldChain& chain, const FoldingConfig& config) {
    HandRay out{pose_ray(input.hand(hand)), std::nullopt, std::nullopt};
    if (chain.empty()) {
        out.effective = out.physical;
        return out;
    }
    out.remap = remap_through_window(out.physical, input.head, chain, config);
    if (out.remap) out.effective = out.remap->effective;
    return out;
}

std::optional<Ray> effective_main_ray(const WorldInput& input, const FoldChain& chain, const FoldingConfig& config) {
    return trace_hand(input, config.dominant_hand, chain, config).effective;
}

std::optional<Crossing> current_crossing(const Scene& scene, const WorldInput& input, const FoldChain& chain,
                                         const FoldingConfig& config) {
    const HandRay main = trace_hand(input, config.dominant_hand, chain, config);
    const HandRay secondary = trace_hand(input, config.secondary_hand(), chain, config);
    if (!main.effective || !secondary.effective) return std::nullopt;

    const auto physical = crossing_point(main.physical, secondary.physical, config.epsilon);
    if (!physical) return std::nullopt;

    Crossing crossing = *physical;
    if (!chain.empty()) {
        const auto ca = closest_approach(main.physical, secondary.physical);
        const double depth_main = physical->t_main - main.remap->t_window;
        const double depth_secondary = ca->t_b - secondary.remap->t_window;
        if (!(depth_main > 0.0) || !(depth_secondary > 0.0)) return std::nullopt;
        crossing = Crossing{main.effective->at(depth_main), depth_main};
    }

    const auto blocker = raycast_first(scene, *main.effective);
    if (blocker && !(crossing.t_main < blocker->t)) return std::nullopt;
    return crossing;
}

std::optional<ObjectId> select_target(const Scene& scene, const WorldInput& input, const FoldChain& chain,
                                      const FoldingConfig& config) {
    const auto ray = effective_main_ray(input, chain, config);
    if (!ray) return std::nullopt;
    const auto hit = raycast_first(scene, *ray);
    if (!hit) return std::nullopt;
    const SceneObject* obj = scene.find(hit->object_id);
    if (obj == nullptr || !obj->selectable()) return std::nullopt;
    return hit->object_id;
}

std::optional<Pose> teleport_destination(const Scene& scene, const WorldInput& input, const FoldChain& chain,
                                         const FoldingConfig& config) {
    const auto ray = effective_main_ray(input, chain, config);
    if (!ray) return std::nullopt;
    const auto hit = raycast_first(scene, *ray);
    if (!hit) return std::nullopt;
    return Pose{hit->point + hit->normal * kTeleportLift, input.head.orientation.yaw_only()};
}

}  // namespace foldray
