#include "foldray/rig.hpp"

namespace foldray {

Rig::Rig(const Scene& scene, const FoldingConfig& config)
    : user_origin(scene.spawn()), head(scene.rest_head()), offsets_(scene.hand_offsets()), config_(config) {}

void Rig::look_along(const Vec3& world_dir) {
    const Vec3 local = user_origin.apply_inverse(world_dir, VectorKind::direction);
    head.orientation = UnitQuaternion::look_rotation(local);
}

void Rig::face_yaw(double radians) {
    head.orientation = user_origin.orientation.conjugate() * UnitQuaternion::from_yaw(radians);
}

Vec3 Rig::hand_world(Hand hand) const { return user_origin.apply(head.compose(offsets_.of(hand)).position); }

Pose Rig::aim(Hand hand, const Vec3& world_point) const {
    const Vec3 local_pos = head.compose(offsets_.of(hand)).position;
    const Vec3 world_dir = world_point - user_origin.apply(local_pos);
    const Vec3 local_dir = user_origin.apply_inverse(world_dir, VectorKind::direction);
    return {local_pos, UnitQuaternion::look_rotation(local_dir)};
}

Vec3 Rig::window_point(double u, double v) const { return window_pose(head_world(), config_).point_at(u, v); }

InputFrame Rig::frame(FrameSeq seq, const Pose& left, const Pose& right) const {
    InputFrame f;
    f.seq = seq;
    f.head = head;
    f.left = left;
    f.right = right;
    return f;
}

InputFrame Rig::cross_at(FrameSeq seq, const Vec3& world_point) const {
    return frame(seq, aim(Hand::left, world_point), aim(Hand::right, world_point));
}

InputFrame Rig::cross_through_window(FrameSeq seq, double u, double v, double depth) const {
    const Hand main = config_.dominant_hand;
    const Vec3 through = window_point(u, v);
    const Vec3 origin = hand_world(main);
    const Vec3 dir = normalize(through - origin);
    const Vec3 crossing = through + dir * depth;
    InputFrame f = cross_at(seq, crossing);
    // The dominant ray is aimed at the window point itself so the remap hits (u, v) exactly.
    (main == Hand::left ? f.left : f.right) = aim(main, through);
    return f;
}

InputFrame Rig::point_through_window(FrameSeq seq, double u, double v) const {
    return point_at(seq, window_point(u, v));
}

InputFrame Rig::point_at(FrameSeq seq, const Vec3& world_point) const {
    const Hand main = config_.dominant_hand;
    const Hand other = config_.secondary_hand();
    const Pose head_w = head_world();
    const Vec3 rest_dir = head_w.forward() + head_w.right() * (other == Hand::left ? -0.6 : 0.6);
    const Pose aimed = aim(main, world_point);
    const Pose resting = aim(other, hand_world(other) + rest_dir);
    return main == Hand::left ? frame(seq, aimed, resting) : frame(seq, resting, aimed);
}

InputFrame Rig::idle(FrameSeq seq) const {
    const Pose head_w = head_world();
    const Vec3 f = head_w.forward();
    const Vec3 r = head_w.right();
    return frame(seq, aim(Hand::left, hand_world(Hand::left) + f - r * 0.6),
                 aim(Hand::right, hand_world(Hand::right) + f + r * 0.6));
}

}  // namespace foldray
