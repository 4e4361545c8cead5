#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "foldray/folding.hpp"
#include "foldray/scene.hpp"

namespace foldray {

using FrameSeq = std::int64_t;

/// Edge flags: true only on the frame the button went down.
struct Buttons {
    bool trigger = false;
    bool primary = false;
    bool pop = false;
    bool teleport = false;

    bool operator==(const Buttons&) const = default;
};

/// Tracked poses for one frame, in tracking space (relative to the user origin).
struct InputFrame {
    FrameSeq seq = 0;
    Pose head;
    Pose left;
    Pose right;
    Buttons buttons;
};

struct FoldCreated {
    Vec3 position;
};
struct FoldPopped {};
struct SelectionMade {
    ObjectId object_id = 0;
};
struct SelectionAttemptFailed {};
struct Teleported {
    Pose pose;
    /// Folds discarded by the teleport.
    std::size_t cleared_folds = 0;
};

using EventPayload = std::variant<FoldCreated, FoldPopped, SelectionMade, SelectionAttemptFailed, Teleported>;

struct InteractionEvent {
    FrameSeq seq = 0;
    EventPayload payload;
};

struct WindowView {
    ViewportWindow window;
    FoldCamera camera;
};

struct RenderState {
    FrameSeq seq = 0;
    /// Hand, each fold, then the effective ray's end (first hit or 100 m).
    std::vector<Vec3> main_polyline;
    std::vector<Vec3> secondary_polyline;
    std::optional<Vec3> crossing_indicator;
    std::optional<WindowView> window;
    std::optional<ObjectId> hovered;
    std::size_t fold_count = 0;
};

inline constexpr double kRayRenderCap = 100.0;

struct SessionState {
    Pose user_origin;
    FoldChain chain;
    FoldingConfig config;
    std::optional<FrameSeq> last_seq;
};

class SequenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws ConfigError for an invalid config.
SessionState new_session(const Scene& scene, const FoldingConfig& config = {});

/// Head and controllers in world space for the given user origin.
WorldInput to_world(const Pose& user_origin, const InputFrame& frame);

struct StepResult {
    SessionState state;
    RenderState render;
    std::vector<InteractionEvent> events;
};

/// Advances one frame. Buttons resolve in priority pop > primary > trigger > teleport and
/// only the highest pressed one acts. Throws SequenceError if frame.seq does not increase.
StepResult step(const Scene& scene, const SessionState& state, const InputFrame& frame);

/// Owning wrapper for a live session over a shared scene.
class Session {
public:
    explicit Session(std::shared_ptr<const Scene> scene, const FoldingConfig& config = {});

    StepResult step(const InputFrame& frame);
    void reset();

    const SessionState& state() const { return state_; }
    const Scene& scene() const { return *scene_; }

private:
    std::shared_ptr<const Scene> scene_;
    FoldingConfig config_;
    SessionState state_;
};

}  // namespace foldray
