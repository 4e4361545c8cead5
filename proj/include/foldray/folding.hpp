#pragma once

// Folding rays: two controller rays are crossed to drop a fold point; a camera at the
// fold, slaved to the head orientation, is shown on a head-locked square window and
// the controller rays continue into the world through that window.

#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "foldray/geom.hpp"
#include "foldray/scene.hpp"

namespace foldray {

struct FoldingConfig {
    /// Max distance between the two rays for a crossing to register (m).
    double epsilon = 0.05;
    Hand dominant_hand = Hand::right;
    std::size_t max_folds = 8;
    double vertical_fov = std::numbers::pi / 3.0;
    double aspect = 1.0;
    double near_plane = 0.01;
    double window_half_size = 0.5;
    double window_distance = 1.5;
    /// Camera placement ahead of the fold point along the head forward (m).
    double camera_offset = 0.0;

    Hand secondary_hand() const { return dominant_hand == Hand::right ? Hand::left : Hand::right; }

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ChainFullError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FoldPoint {
    Vec3 position;
    UnitQuaternion created_head_orientation;

    bool operator==(const FoldPoint&) const = default;
};

class FoldChain {
public:
    explicit FoldChain(std::size_t max_length = 8) : max_length_(max_length) {}

    const std::vector<FoldPoint>& folds() const { return folds_; }
    std::size_t size() const { return folds_.size(); }
    bool empty() const { return folds_.empty(); }
    bool full() const { return folds_.size() >= max_length_; }
    std::size_t max_length() const { return max_length_; }
    const FoldPoint& back() const { return folds_.back(); }

    bool operator==(const FoldChain&) const = default;

private:
    friend FoldChain create_fold(const FoldChain&, const Vec3&, const Pose&);
    friend FoldChain pop_fold(const FoldChain&);

    std::vector<FoldPoint> folds_;
    std::size_t max_length_;
};

/// Appends a fold at `point`. Throws ChainFullError when the chain is at max length.
FoldChain create_fold(const FoldChain& chain, const Vec3& point, const Pose& head);
/// Drops the newest fold; no-op on an empty chain.
FoldChain pop_fold(const FoldChain& chain);

/// Head-locked square screen showing the current fold camera.
struct ViewportWindow {
    Vec3 center;
    UnitQuaternion orientation;
    double half_size = 0.5;
    double distance = 1.5;

    /// The screen as a scene quad; its +Z normal faces the viewer.
    Quad quad() const { return {{center, orientation}, half_size, half_size}; }
    Vec3 normal() const { return orientation.rotate({0.0, 0.0, 1.0}); }
    /// World point at window coordinates (u, v) in [-1, 1]^2.
    Vec3 point_at(double u, double v) const {
        return center + orientation.rotate({u * half_size, v * half_size, 0.0});
    }
};

ViewportWindow window_pose(const Pose& head, const FoldingConfig& config = {});

struct FoldCamera {
    Pose pose;
    double vertical_fov = std::numbers::pi / 3.0;
    double aspect = 1.0;
    double near_plane = 0.01;
};

/// Camera at the newest fold, oriented exactly as the head. Absent for an empty chain.
std::optional<FoldCamera> fold_camera(const FoldChain& chain, const Pose& head, const FoldingConfig& config = {});

/// Pinhole ray through window coordinates (u, v). Throws std::invalid_argument outside [-1, 1].
Ray uv_to_camera_ray(double u, double v, const FoldCamera& cam);

/// Inverse of uv_to_camera_ray: window coordinates at which `world` appears.
/// Absent when the point is behind the near plane or outside the frustum.
std::optional<std::pair<double, double>> project_to_uv(const FoldCamera& cam, const Vec3& world);

struct WindowRemap {
    Ray effective;
    double u = 0.0;
    double v = 0.0;
    /// Parameter along the physical ray where it meets the window.
    double t_window = 0.0;
    Vec3 window_point;
};

/// Sends a physical ray through the current window. Absent when it misses the screen
/// or the chain is empty.
std::optional<WindowRemap> remap_through_window(const Ray& physical, const Pose& head, const FoldChain& chain,
                                                const FoldingConfig& config = {});

struct Crossing {
    Vec3 point;
    double t_main = 0.0;
};

/// Point on `main` nearest `secondary` when the rays pass within epsilon at positive parameters.
std::optional<Crossing> crossing_point(const Ray& main, const Ray& secondary, double epsilon);

/// World-frame head and controller poses for one frame.
struct WorldInput {
    Pose head;
    Pose left;
    Pose right;

    const Pose& hand(Hand h) const { return h == Hand::left ? left : right; }
};

/// One controller's ray: the physical ray and, when folded, where it continues.
struct HandRay {
    Ray physical;
    std::optional<WindowRemap> remap;
    /// The ray that interacts with the scene, if any.
    std::optional<Ray> effective;
};

HandRay trace_hand(const WorldInput& input, Hand hand, const FoldChain& chain, const FoldingConfig& config = {});

std::optional<Ray> effective_main_ray(const WorldInput& input, const FoldChain& chain,
                                      const FoldingConfig& config = {});

/// Crossing that would become the next fold, in world coordinates on the effective main ray.
///
/// Unfolded, this is crossing_point of the two physical rays. Folded, both physical rays must
/// enter the window and meet beyond it; the crossing depth past the window is carried onto the
/// effective main ray. Either way the crossing must lie before the main ray's first scene hit.
std::optional<Crossing> current_crossing(const Scene& scene, const WorldInput& input, const FoldChain& chain,
                                         const FoldingConfig& config = {});

/// Target id hit first by the effective main ray; occluders, neutral objects and misses give nothing.
std::optional<ObjectId> select_target(const Scene& scene, const WorldInput& input, const FoldChain& chain,
                                      const FoldingConfig& config = {});

inline constexpr double kTeleportLift = 1e-3;

/// Landing pose for a teleport along the effective main ray: the first hit on any object,
/// lifted 1 mm along its normal, facing the head's current heading.
std::optional<Pose> teleport_destination(const Scene& scene, const WorldInput& input, const FoldChain& chain,
                                         const FoldingConfig& config = {});

}  // namespace foldray
