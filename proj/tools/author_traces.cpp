// Regenerates the bundled traces under data/traces from scripted rig motions.
//
//   author_traces <data-dir>
//
// Each trace is written, read back, and replayed; the tool fails if the replay does not
// produce the scripted event sequence.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "foldray/json_io.hpp"
#include "foldray/rig.hpp"
#include "foldray/session.hpp"

namespace {

using namespace foldray;

struct Script {
    std::string name;
    std::string scene;
    std::vector<std::string> expected_events;
};

InputFrame with(InputFrame f, bool Buttons::*button) {
    f.buttons.*button = true;
    return f;
}

std::vector<InputFrame> wall_room(const Scene& scene) {
    // Crossing above the wall, then look down at the sphere through the window.
    const Vec3 fold{0.0, 2.5, -2.5};
    const Vec3 target{0.0, 1.0, -5.0};
    Rig rig(scene);
    std::vector<InputFrame> t;
    t.push_back(rig.idle(1));
    t.push_back(rig.cross_at(2, fold));
    t.push_back(with(rig.cross_at(3, fold), &Buttons::primary));
    rig.look_along(target - fold);
    t.push_back(rig.idle(4));
    t.push_back(rig.point_through_window(5, 0.0, 0.0));
    t.push_back(with(rig.point_through_window(6, 0.0, 0.0), &Buttons::trigger));
    return t;
}

std::vector<InputFrame> wall_room_teleport(const Scene& scene) {
    const Vec3 fold{0.0, 2.5, -2.5};
    const Vec3 far_floor{1.5, 0.0, -6.5};
    const Vec3 target{0.0, 1.0, -5.0};
    Rig rig(scene);
    std::vector<InputFrame> t;
    t.push_back(rig.idle(1));
    t.push_back(with(rig.cross_at(2, fold), &Buttons::primary));
    rig.look_along(far_floor - fold);
    t.push_back(rig.point_through_window(3, 0.0, 0.0));
    t.push_back(with(rig.point_through_window(4, 0.0, 0.0), &Buttons::teleport));
    // Landed beyond the wall: the origin moved to the floor point, facing the old heading.
    rig.user_origin = Pose{far_floor + Vec3{0.0, kTeleportLift, 0.0}, rig.head_world().orientation.yaw_only()};
    rig.head = scene.rest_head();
    t.push_back(rig.idle(5));
    t.push_back(rig.point_at(6, target));
    t.push_back(with(rig.point_at(7, target), &Buttons::trigger));
    return t;
}

std::vector<InputFrame> open_room(const Scene& scene) {
    const Vec3 target{0.5, 1.2, -4.0};
    Rig rig(scene);
    std::vector<InputFrame> t;
    t.push_back(rig.idle(1));
    t.push_back(rig.point_at(2, target));
    t.push_back(with(rig.point_at(3, target), &Buttons::trigger));
    return t;
}

std::vector<InputFrame> u_maze(const Scene& scene) {
    // Over the low baffle, down into the gap under the high baffle, then up at the goal.
    const Vec3 first{0.0, 2.5, -4.0};
    const Vec3 second{0.0, 0.25, -5.5};
    const Vec3 goal{0.0, 2.4, -8.0};
    Rig rig(scene);
    std::vector<InputFrame> t;
    t.push_back(rig.idle(1));
    t.push_back(rig.cross_at(2, first));
    t.push_back(with(rig.cross_at(3, first), &Buttons::primary));
    rig.look_along(second - first);
    t.push_back(rig.idle(4));
    t.push_back(rig.cross_through_window(5, 0.0, 0.0, distance(first, second)));
    t.push_back(with(rig.cross_through_window(6, 0.0, 0.0, distance(first, second)), &Buttons::primary));
    rig.look_along(goal - second);
    t.push_back(rig.idle(7));
    t.push_back(rig.point_through_window(8, 0.0, 0.0));
    t.push_back(with(rig.point_through_window(9, 0.0, 0.0), &Buttons::trigger));
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: author_traces <data-dir>\n";
        return 2;
    }
    const std::string dir = argv[1];
    const std::vector<Script> scripts{
        {"wall_room", "wall_room", {"FoldCreated", "SelectionMade"}},
        {"wall_room_teleport", "wall_room", {"FoldCreated", "Teleported", "SelectionMade"}},
        {"open_room", "open_room", {"SelectionMade"}},
        {"u_maze", "u_maze", {"FoldCreated", "FoldCreated", "SelectionMade"}},
    };

    int failures = 0;
    for (const auto& s : scripts) {
        const Scene scene = load_scene_file(dir + "/scenes/" + s.scene + ".json");
        std::vector<InputFrame> frames;
        if (s.name == "wall_room") frames = wall_room(scene);
        if (s.name == "wall_room_teleport") frames = wall_room_teleport(scene);
        if (s.name == "open_room") frames = open_room(scene);
        if (s.name == "u_maze") frames = u_maze(scene);

        const std::string path = dir + "/traces/" + s.name + ".jsonl";
        {
            std::ofstream out(path);
            write_trace(out, frames);
        }

        SessionState state = new_session(scene);
        std::vector<std::string> got;
        for (const auto& f : read_trace_file(path)) {
            StepResult r = step(scene, state, f);
            for (const auto& e : r.events) {
                std::cout << s.name << ": " << event_line(e) << '\n';
                got.push_back(to_json(e)["event"].get<std::string>());
            }
            state = std::move(r.state);
        }
        if (got != s.expected_events) {
            std::cerr << s.name << ": unexpected event sequence\n";
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
