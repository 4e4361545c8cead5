#include "foldray/geom.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace foldray {

Vec3 normalize(const Vec3& v) {
    const double len = length(v);
    if (!(len > 0.0) || !std::isfinite(len)) {
        throw std::invalid_argument("cannot normalize a zero or non-finite vector");
    }
    return v / len;
}

UnitQuaternion::UnitQuaternion(double w, double x, double y, double z) {
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw std::invalid_argument("quaternion norm must be positive and finite");
    }
    w_ = w / n;
    x_ = x / n;
    y_ = y / n;
    z_ = z / n;
}

UnitQuaternion UnitQuaternion::from_axis_angle(const Vec3& axis, double radians) {
    const Vec3 a = normalize(axis);
    const double s = std::sin(radians * 0.5);
    return UnitQuaternion(std::cos(radians * 0.5), a.x * s, a.y * s, a.z * s);
}

UnitQuaternion UnitQuaternion::look_rotation(const Vec3& forward, const Vec3& up) {
    const Vec3 f = normalize(forward);
    Vec3 hint = normalize(up);
    if (std::abs(dot(f, hint)) > 1.0 - 1e-9) {
        hint = std::abs(f.z) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
    }
    // Columns of the rotation matrix: local X, Y, Z in world.
    const Vec3 back = -f;
    const Vec3 right = normalize(cross(hint, back));
    const Vec3 upv = cross(back, right);

    const double m00 = right.x, m01 = upv.x, m02 = back.x;
    const double m10 = right.y, m11 = upv.y, m12 = back.y;
    const double m20 = right.z, m21 = upv.z, m22 = back.z;
    const double trace = m00 + m11 + m22;
    if (trace > 0.0) {
        const double s = std::sqrt(trace + 1.0) * 2.0;
        return UnitQuaternion(0.25 * s, (m21 - m12) / s, (m02 - m20) / s, (m10 - m01) / s);
    }
    if (m00 > m11 && m00 > m22) {
        const double s = std::sqrt(1.0 + m00 - m11 - m22) * 2.0;
        return UnitQuaternion((m21 - m12) / s, 0.25 * s, (m01 + m10) / s, (m02 + m20) / s);
    }
    if (m11 > m22) {
        const double s = std::sqrt(1.0 + m11 - m00 - m22) * 2.0;
        return UnitQuaternion((m02 - m20) / s, (m01 + m10) / s, 0.25 * s, (m12 + m21) / s);
    }
    const double s = std::sqrt(1.0 + m22 - m00 - m11) * 2.0;
    return UnitQuaternion((m10 - m01) / s, (m02 + m20) / s, (m12 + m21) / s, 0.25 * s);
}

UnitQuaternion UnitQuaternion::conjugate() const { return {Raw{}, w_, -x_, -y_, -z_}; }

UnitQuaternion UnitQuaternion::operator*(const UnitQuaternion& r) const {
    return UnitQuaternion(w_ * r.w_ - x_ * r.x_ - y_ * r.y_ - z_ * r.z_,
                          w_ * r.x_ + x_ * r.w_ + y_ * r.z_ - z_ * r.y_,
                          w_ * r.y_ - x_ * r.z_ + y_ * r.w_ + z_ * r.x_,
                          w_ * r.z_ + x_ * r.y_ - y_ * r.x_ + z_ * r.w_);
}

Vec3 UnitQuaternion::rotate(const Vec3& v) const {
    // v' = v + 2w (q x v) + 2 q x (q x v)
    const Vec3 q{x_, y_, z_};
    const Vec3 t = cross(q, v) * 2.0;
    return v + t * w_ + cross(q, t);
}

UnitQuaternion UnitQuaternion::yaw_only() const {
    const Vec3 f = rotate(kForward);
    const Vec3 flat{f.x, 0.0, f.z};
    if (length(flat) < 1e-12) {
        // Looking straight up or down: take the heading from the up vector instead.
        const Vec3 u = rotate(kUp);
        const Vec3 alt = f.y < 0.0 ? Vec3{u.x, 0.0, u.z} : Vec3{-u.x, 0.0, -u.z};
        if (length(alt) < 1e-12) return identity();
        return from_yaw(std::atan2(-alt.x, -alt.z));
    }
    return from_yaw(std::atan2(-flat.x, -flat.z));
}

Vec3 Pose::apply(const Vec3& v, VectorKind kind) const {
    const Vec3 r = orientation.rotate(v);
    return kind == VectorKind::point ? r + position : r;
}

Vec3 Pose::apply_inverse(const Vec3& v, VectorKind kind) const {
    const Vec3 local = kind == VectorKind::point ? v - position : v;
    return orientation.conjugate().rotate(local);
}

Pose Pose::compose(const Pose& local) const {
    return {apply(local.position), orientation * local.orientation};
}

Pose Pose::inverse() const {
    const UnitQuaternion inv = orientation.conjugate();
    return {inv.rotate(-position), inv};
}

Ray::Ray(const Vec3& origin, const Vec3& direction) : origin_(origin), direction_(normalize(direction)) {}

namespace {

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

void validate_shape(const Shape& shape) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Sphere>) {
                if (!positive(s.radius)) throw std::invalid_argument("sphere radius must be > 0");
            } else if constexpr (std::is_same_v<T, Box>) {
                if (!positive(s.half_extents.x) || !positive(s.half_extents.y) || !positive(s.half_extents.z)) {
                    throw std::invalid_argument("box half_extents must be > 0");
                }
            } else {
                if (!positive(s.half_width) || !positive(s.half_height)) {
                    throw std::invalid_argument("quad half_width/half_height must be > 0");
                }
            }
        },
        shape);
}

bool contains_point(const Shape& shape, const Vec3& p) {
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Sphere>) {
                const Vec3 d = p - s.center;
                return dot(d, d) < s.radius * s.radius;
            } else if constexpr (std::is_same_v<T, Box>) {
                const Vec3 l = s.orientation.conjugate().rotate(p - s.center);
                return std::abs(l.x) < s.half_extents.x && std::abs(l.y) < s.half_extents.y &&
                       std::abs(l.z) < s.half_extents.z;
            } else {
                return false;
            }
        },
        shape);
}

std::optional<ClosestApproach> closest_approach(const Ray& a, const Ray& b) {
    const Vec3& da = a.direction();
    const Vec3& db = b.direction();
    const double cos_ab = dot(da, db);
    if (std::abs(cos_ab) > 1.0 - kParallelCutoff) return std::nullopt;

    const Vec3 w0 = a.origin() - b.origin();
    const double d = dot(da, w0);
    const double e = dot(db, w0);
    const double denom = 1.0 - cos_ab * cos_ab;

    const auto eval = [&](double ta, double tb) {
        return ClosestApproach{ta, tb, distance(a.at(ta), b.at(tb))};
    };

    const double ta = (cos_ab * e - d) / denom;
    const double tb = (e - cos_ab * d) / denom;
    if (ta >= 0.0 && tb >= 0.0) return eval(ta, tb);

    // Constrained minimum lies on an edge of the feasible quadrant.
    const ClosestApproach on_a_origin = eval(0.0, std::max(0.0, e));
    const ClosestApproach on_b_origin = eval(std::max(0.0, -d), 0.0);
    if (on_a_origin.distance < on_b_origin.distance) return on_a_origin;
    if (on_b_origin.distance < on_a_origin.distance) return on_b_origin;
    // Tie: keep the candidate with the smaller parameter sum, then the smaller t_a.
    const double sum_a = on_a_origin.t_a + on_a_origin.t_b;
    const double sum_b = on_b_origin.t_a + on_b_origin.t_b;
    if (sum_a != sum_b) return sum_a < sum_b ? on_a_origin : on_b_origin;
    return on_a_origin.t_a <= on_b_origin.t_a ? on_a_origin : on_b_origin;
}

std::optional<SurfaceHit> intersect(const Ray& r, const Sphere& s) {
    const Vec3 oc = r.origin() - s.center;
    const double half_b = dot(oc, r.direction());
    const double c = dot(oc, oc) - s.radius * s.radius;
    const double disc = half_b * half_b - c;
    if (disc < 0.0) return std::nullopt;
    const double root = std::sqrt(disc);
    // Numerically stable pair of roots.
    const double q = half_b > 0.0 ? -half_b - root : -half_b + root;
    double t0 = q;
    double t1 = q != 0.0 ? c / q : 0.0;
    if (t0 > t1) std::swap(t0, t1);
    double t = t0;
    if (!(t > kSelfHitEpsilon)) {
        t = t1;
        if (!(t > kSelfHitEpsilon)) return std::nullopt;
    }
    const Vec3 p = r.at(t);
    return SurfaceHit{t, p, normalize(p - s.center), std::nullopt};
}

std::optional<SurfaceHit> intersect(const Ray& r, const Box& b) {
    const Vec3 o = b.orientation.conjugate().rotate(r.origin() - b.center);
    const Vec3 d = b.orientation.conjugate().rotate(r.direction());
    double t_near = -std::numeric_limits<double>::infinity();
    double t_far = std::numeric_limits<double>::infinity();
    int near_axis = -1;
    int far_axis = -1;
    double near_sign = 0.0;
    double far_sign = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        const double oi = o[axis];
        const double di = d[axis];
        const double h = b.half_extents[axis];
        if (di == 0.0) {
            if (oi < -h || oi > h) return std::nullopt;
            continue;
        }
        double t1 = (-h - oi) / di;
        double t2 = (h - oi) / di;
        double s1 = -1.0;
        double s2 = 1.0;
        if (t1 > t2) {
            std::swap(t1, t2);
            std::swap(s1, s2);
        }
        if (t1 > t_near) {
            t_near = t1;
            near_axis = axis;
            near_sign = s1;
        }
        if (t2 < t_far) {
            t_far = t2;
            far_axis = axis;
            far_sign = s2;
        }
        if (t_near > t_far) return std::nullopt;
    }
    double t = t_near;
    int axis = near_axis;
    double sign = near_sign;
    if (!(t > kSelfHitEpsilon)) {
        t = t_far;
        axis = far_axis;
        sign = far_sign;
        if (!(t > kSelfHitEpsilon) || !std::isfinite(t)) return std::nullopt;
    }
    Vec3 local_n{};
    if (axis == 0) local_n = {sign, 0.0, 0.0};
    if (axis == 1) local_n = {0.0, sign, 0.0};
    if (axis == 2) local_n = {0.0, 0.0, sign};
    return SurfaceHit{t, r.at(t), b.orientation.rotate(local_n), std::nullopt};
}

std::optional<SurfaceHit> intersect(const Ray& r, const Quad& q) {
    const Vec3 o = q.pose.apply_inverse(r.origin());
    const Vec3 d = q.pose.apply_inverse(r.direction(), VectorKind::direction);
    if (d.z == 0.0) return std::nullopt;
    const double t = -o.z / d.z;
    if (!(t > kSelfHitEpsilon) || !std::isfinite(t)) return std::nullopt;
    const double lx = o.x + d.x * t;
    const double ly = o.y + d.y * t;
    if (std::abs(lx) > q.half_width || std::abs(ly) > q.half_height) return std::nullopt;
    const Vec3 n = q.pose.forward() * -1.0;  // local +Z
    // Report the face the ray arrives at.
    const Vec3 facing = dot(n, r.direction()) < 0.0 ? n : -n;
    return SurfaceHit{t, r.at(t), facing, std::make_pair(lx / q.half_width, ly / q.half_height)};
}

std::optional<SurfaceHit> intersect(const Ray& r, const Shape& s) {
    return std::visit([&](const auto& shape) { return intersect(r, shape); }, s);
}

}  // namespace foldray
