#include "foldray/session.hpp"

#include <string>

namespace foldray {

SessionState new_session(const Scene& scene, const FoldingConfig& config) {
    config.validate();
    return {scene.spawn(), FoldChain(config.max_folds), config, std::nullopt};
}

WorldInput to_world(const Pose& user_origin, const InputFrame& frame) {
    return {user_origin.compose(frame.head), user_origin.compose(frame.left), user_origin.compose(frame.right)};
}

namespace {

std::vector<Vec3> polyline(const Scene& scene, const HandRay& ray, const FoldChain& chain) {
    const Vec3 hand = ray.physical.origin();
    if (!ray.effective) return {hand, ray.physical.at(kRayRenderCap)};
    std::vector<Vec3> points{hand};
    for (const auto& f : chain.folds()) points.push_back(f.position);
    const auto hit = raycast_first(scene, *ray.effective, kRayRenderCap);
    points.push_back(hit ? hit->point : ray.effective->at(kRayRenderCap));
    return points;
}

RenderState render(const Scene& scene, const SessionState& state, const WorldInput& input, FrameSeq seq) {
    const FoldingConfig& cfg = state.config;
    const HandRay main = trace_hand(input, cfg.dominant_hand, state.chain, cfg);
    const HandRay secondary = trace_hand(input, cfg.secondary_hand(), state.chain, cfg);

    RenderState out;
    out.seq = seq;
    out.main_polyline = polyline(scene, main, state.chain);
    out.secondary_polyline = polyline(scene, secondary, state.chain);
    if (const auto c = current_crossing(scene, input, state.chain, cfg)) out.crossing_indicator = c->point;
    if (const auto cam = fold_camera(state.chain, input.head, cfg)) {
        out.window = WindowView{window_pose(input.head, cfg), *cam};
    }
    if (main.effective) {
        if (const auto hit = raycast_first(scene, *main.effective)) out.hovered = hit->object_id;
    }
    out.fold_count = state.chain.size();
    return out;
}

}  // namespace

StepResult step(const Scene& scene, const SessionState& state, const InputFrame& frame) {
    if (state.last_seq && frame.seq <= *state.last_seq) {
        throw SequenceError("frame seq " + std::to_string(frame.seq) + " does not follow " +
                            std::to_string(*state.last_seq));
    }
    StepResult result{state, {}, {}};
    SessionState& next = result.state;
    next.last_seq = frame.seq;
    const FoldingConfig& cfg = state.config;
    const WorldInput input = to_world(state.user_origin, frame);
    const auto emit = [&](EventPayload p) { result.events.push_back({frame.seq, std::move(p)}); };

    const Buttons& b = frame.buttons;
    if (b.pop) {
        if (!state.chain.empty()) {
            next.chain = pop_fold(state.chain);
            emit(FoldPopped{});
        }
    } else if (b.primary) {
        const auto crossing = current_crossing(scene, input, state.chain, cfg);
        if (crossing && !state.chain.full()) {
            next.chain = create_fold(state.chain, crossing->point, input.head);
            emit(FoldCreated{crossing->point});
        }
    } else if (b.trigger) {
        if (const auto id = select_target(scene, input, state.chain, cfg)) {
            emit(SelectionMade{*id});
        } else {
            emit(SelectionAttemptFailed{});
        }
    } else if (b.teleport) {
        if (const auto dest = teleport_destination(scene, input, state.chain, cfg)) {
            const std::size_t cleared = state.chain.size();
            next.user_origin = *dest;
            next.chain = FoldChain(cfg.max_folds);
            emit(Teleported{*dest, cleared});
        }
    }

    const WorldInput after = to_world(next.user_origin, frame);
    result.render = render(scene, next, after, frame.seq);
    return result;
}

Session::Session(std::shared_ptr<const Scene> scene, const FoldingConfig& config)
    : scene_(std::move(scene)), config_(config), state_(new_session(*scene_, config_)) {}

StepResult Session::step(const InputFrame& frame) {
    StepResult r = foldray::step(*scene_, state_, frame);
    state_ = r.state;
    return r;
}

void Session::reset() { state_ = new_session(*scene_, config_); }

}  // namespace foldray
