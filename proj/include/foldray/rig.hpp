#pragma once

// Scripted-user helpers: build tracking-space InputFrames that aim controllers at world
// points. Used to author bundled traces and by tests that drive a session directly.

#include <vector>

#include "foldray/folding.hpp"
#include "foldray/scene.hpp"
#include "foldray/session.hpp"

namespace foldray {

class Rig {
public:
    Rig(const Scene& scene, const FoldingConfig& config = {});

    /// Current user origin (update after teleports).
    Pose user_origin;
    /// Head pose in tracking space.
    Pose head;

    /// Points the head so that its world forward is `world_dir`.
    void look_along(const Vec3& world_dir);
    /// Turns the head to the given world heading (yaw about +Y) with zero pitch.
    void face_yaw(double radians);

    /// Tracking-space hand pose at its rest offset from the head, aimed at a world point.
    Pose aim(Hand hand, const Vec3& world_point) const;
    /// World position of a hand at its rest offset.
    Vec3 hand_world(Hand hand) const;
    Pose head_world() const { return user_origin.compose(head); }

    /// World point on the current window at (u, v).
    Vec3 window_point(double u, double v) const;

    /// Hands aimed so the two physical rays cross at `world_point`.
    InputFrame cross_at(FrameSeq seq, const Vec3& world_point) const;
    /// Folded crossing: both rays go through the window and meet beyond it so that the
    /// crossing lands `depth` metres along the effective ray through window (u, v).
    InputFrame cross_through_window(FrameSeq seq, double u, double v, double depth) const;
    /// Dominant hand through window (u, v); secondary at rest pointing along the head forward.
    InputFrame point_through_window(FrameSeq seq, double u, double v) const;
    /// Dominant hand aimed at a world point; secondary at rest.
    InputFrame point_at(FrameSeq seq, const Vec3& world_point) const;
    /// Both hands pointing along the head forward, a little apart.
    InputFrame idle(FrameSeq seq) const;

private:
    InputFrame frame(FrameSeq seq, const Pose& left, const Pose& right) const;

    HandOffsets offsets_;
    FoldingConfig config_;
};

}  // namespace foldray
