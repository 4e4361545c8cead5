#pragma once

// Value types for 3D placement and the analytic ray queries built on them.
// Right-handed, +Y up. Cameras and controllers look down their local -Z.

#include <cmath>
#include <optional>
#include <variant>

namespace foldray {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    constexpr bool operator==(const Vec3&) const = default;

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double length(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline double distance(const Vec3& a, const Vec3& b) { return length(a - b); }

/// Unit vector along v. Throws std::invalid_argument on a zero or non-finite vector.
Vec3 normalize(const Vec3& v);

inline constexpr Vec3 kForward{0.0, 0.0, -1.0};
inline constexpr Vec3 kUp{0.0, 1.0, 0.0};
inline constexpr Vec3 kRight{1.0, 0.0, 0.0};

/// Rotation stored as a unit quaternion (w, x, y, z).
class UnitQuaternion {
public:
    constexpr UnitQuaternion() = default;

    /// Normalizes the input; throws std::invalid_argument if its norm is zero or non-finite.
    UnitQuaternion(double w, double x, double y, double z);

    static UnitQuaternion identity() { return {}; }
    /// Right-hand rotation of `radians` about `axis` (need not be unit).
    static UnitQuaternion from_axis_angle(const Vec3& axis, double radians);
    /// Rotation about +Y. Positive yaw turns -Z toward -X.
    static UnitQuaternion from_yaw(double radians) { return from_axis_angle(kUp, radians); }
    /// Orientation whose -Z axis is `forward` and whose +Y axis is as close to `up` as possible.
    /// Falls back to +Z or +X as the up hint when forward is (anti)parallel to `up`.
    static UnitQuaternion look_rotation(const Vec3& forward, const Vec3& up = kUp);

    double w() const { return w_; }
    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }

    double norm() const { return std::sqrt(w_ * w_ + x_ * x_ + y_ * y_ + z_ * z_); }

    UnitQuaternion conjugate() const;
    UnitQuaternion operator*(const UnitQuaternion& rhs) const;
    Vec3 rotate(const Vec3& v) const;

    /// Yaw-only part: rotation about +Y that maps -Z to the horizontal projection of forward.
    UnitQuaternion yaw_only() const;

    bool operator==(const UnitQuaternion&) const = default;

private:
    struct Raw {};
    constexpr UnitQuaternion(Raw, double w, double x, double y, double z) : w_(w), x_(x), y_(y), z_(z) {}

    double w_ = 1.0;
    double x_ = 0.0;
    double y_ = 0.0;
    double z_ = 0.0;
};

enum class VectorKind { point, direction };

struct Pose {
    Vec3 position{};
    UnitQuaternion orientation{};

    Vec3 forward() const { return orientation.rotate(kForward); }
    Vec3 up() const { return orientation.rotate(kUp); }
    Vec3 right() const { return orientation.rotate(kRight); }

    /// Local-to-world map. Directions ignore the translation.
    Vec3 apply(const Vec3& v, VectorKind kind = VectorKind::point) const;
    /// World-to-local map, the inverse of apply().
    Vec3 apply_inverse(const Vec3& v, VectorKind kind = VectorKind::point) const;

    /// Composition: (*this) * local, i.e. `local` expressed in this pose's frame.
    Pose compose(const Pose& local) const;
    Pose inverse() const;

    bool operator==(const Pose&) const = default;
};

inline Vec3 pose_apply(const Pose& p, const Vec3& v, VectorKind kind) { return p.apply(v, kind); }

/// Half-line origin + t * direction, t >= 0. Direction is normalized on construction.
class Ray {
public:
    Ray(const Vec3& origin, const Vec3& direction);

    const Vec3& origin() const { return origin_; }
    const Vec3& direction() const { return direction_; }
    Vec3 at(double t) const { return origin_ + direction_ * t; }

    bool operator==(const Ray&) const = default;

private:
    Vec3 origin_;
    Vec3 direction_;
};

/// Ray from a pose along its forward axis.
inline Ray pose_ray(const Pose& p) { return Ray(p.position, p.forward()); }

struct Sphere {
    Vec3 center;
    double radius = 1.0;
    bool operator==(const Sphere&) const = default;
};

struct Box {
    Vec3 center;
    Vec3 half_extents{1.0, 1.0, 1.0};
    UnitQuaternion orientation{};
    bool operator==(const Box&) const = default;
};

/// Rectangle in the local XY plane of `pose`; its normal is the local +Z axis.
struct Quad {
    Pose pose;
    double half_width = 1.0;
    double half_height = 1.0;
    bool operator==(const Quad&) const = default;
};

using Shape = std::variant<Sphere, Box, Quad>;

/// Throws std::invalid_argument when a size parameter is not strictly positive and finite.
void validate_shape(const Shape& shape);

/// Strictly inside the solid (spheres and boxes). Quads have no interior.
bool contains_point(const Shape& shape, const Vec3& p);

struct ClosestApproach {
    double t_a = 0.0;
    double t_b = 0.0;
    double distance = 0.0;
};

inline constexpr double kParallelCutoff = 1e-12;
inline constexpr double kSelfHitEpsilon = 1e-9;

/// Mutually closest points of two forward half-lines. Absent for (anti)parallel rays.
std::optional<ClosestApproach> closest_approach(const Ray& a, const Ray& b);

struct SurfaceHit {
    double t = 0.0;
    Vec3 point;
    Vec3 normal;
    /// Local (u, v) in [-1, 1]^2, only for quads.
    std::optional<std::pair<double, double>> uv;
};

std::optional<SurfaceHit> intersect(const Ray& r, const Sphere& s);
std::optional<SurfaceHit> intersect(const Ray& r, const Box& b);
std::optional<SurfaceHit> intersect(const Ray& r, const Quad& q);
std::optional<SurfaceHit> intersect(const Ray& r, const Shape& s);

}  // namespace foldray
