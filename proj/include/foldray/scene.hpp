#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "foldray/geom.hpp"

namespace foldray {

using ObjectId = std::int64_t;

enum class Role { occluder, target, neutral };

std::string_view to_string(Role role);

struct SceneObject {
    ObjectId id = 0;
    Shape shape;
    Role role = Role::neutral;
    std::string label;

    bool selectable() const { return role == Role::target; }
};

enum class Hand { left, right };

struct HandOffsets {
    Pose left{{-0.20, -0.25, -0.30}, {}};
    Pose right{{0.20, -0.25, -0.30}, {}};

    const Pose& of(Hand h) const { return h == Hand::left ? left : right; }
};

struct Hit {
    ObjectId object_id = 0;
    double t = 0.0;
    Vec3 point;
    Vec3 normal;
};

/// Malformed scene or trace text. `what()` carries the line/field context.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed document whose content breaks an invariant.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Immutable world: objects, the user's starting placement and controller rest offsets.
///
/// `spawn` is the initial tracking-space origin (the user's feet). The head rests
/// `eye_height` above it, and `hand_offsets` are relative to the head.
class Scene {
public:
    Scene() = default;
    Scene(std::vector<SceneObject> objects, Pose spawn, HandOffsets hand_offsets, double eye_height = 1.6);

    const std::vector<SceneObject>& objects() const { return objects_; }
    const Pose& spawn() const { return spawn_; }
    const HandOffsets& hand_offsets() const { return hand_offsets_; }
    double eye_height() const { return eye_height_; }

    const SceneObject* find(ObjectId id) const;

    /// Head pose at rest, in tracking space.
    Pose rest_head() const { return {{0.0, eye_height_, 0.0}, {}}; }
    /// World position of a controller at rest when the user stands at spawn.
    Vec3 spawn_hand_position(Hand hand) const;

    /// Canonical serialization (sorted keys, round-trip doubles). Whitespace in the source never matters.
    std::string canonical_json() const;
    /// Lowercase hex SHA-256 of canonical_json().
    std::string digest() const;

private:
    std::vector<SceneObject> objects_;
    Pose spawn_;
    HandOffsets hand_offsets_;
    double eye_height_ = 1.6;
};

Scene load_scene(std::string_view text);
Scene load_scene_file(const std::string& path);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Nearest hit with t < t_max. Equal t (within 1e-12) resolves to the lower id.
std::optional<Hit> raycast_first(const Scene& scene, const Ray& r, double t_max = kInfinity,
                                 const std::set<ObjectId>& ignore = {});

/// True iff nothing except ignored objects blocks p -> q (hits closer than |q - p| - 1e-6).
bool segment_visible(const Scene& scene, const Vec3& p, const Vec3& q, const std::set<ObjectId>& ignore = {});

}  // namespace foldray
