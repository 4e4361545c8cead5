#include <doctest.h>

#include "foldray/reach.hpp"
#include "foldray/session.hpp"
#include "support.hpp"

using namespace foldray;
using foldray::testing::scene_path;

namespace {

ReachEntry run(const std::string& name, ObjectId id, double grid, int max_folds = 2) {
    ReachOptions opts;
    opts.grid_step = grid;
    opts.max_folds = max_folds;
    return min_folds(load_scene_file(scene_path(name)), id, opts);
}

void check_witness(const Scene& scene, const ReachEntry& e) {
    REQUIRE(e.min_folds);
    REQUIRE(e.witness.size() == static_cast<std::size_t>(*e.min_folds) + 2);
    CHECK(distance(e.witness.front(), scene.spawn_hand_position(Hand::right)) < 1e-12);
    for (std::size_t i = 0; i + 1 < e.witness.size(); ++i) {
        const bool last = i + 2 == e.witness.size();
        const std::set<ObjectId> ignore = last ? std::set<ObjectId>{e.target_id} : std::set<ObjectId>{};
        CHECK(segment_visible(scene, e.witness[i], e.witness[i + 1], ignore));
    }
}

}  // namespace

TEST_CASE("min_folds on the bundled scenes") {
    const Scene open = load_scene_file(scene_path("open_room"));
    const Scene wall = load_scene_file(scene_path("wall_room"));
    const Scene maze = load_scene_file(scene_path("u_maze"));

    const auto o = run("open_room", 1, 0.25);
    CHECK(o.min_folds == std::optional<int>(0));
    check_witness(open, o);

    const auto w = run("wall_room", 2, 0.25);
    CHECK(w.min_folds == std::optional<int>(1));
    check_witness(wall, w);
    // The fold vertex clears the top of the wall (y = 2) in front of it.
    CHECK(w.witness[1].y > 2.0);
    CHECK(w.witness[1].z > -3.1);

    const auto m = run("u_maze", 9, 0.25);
    CHECK(m.min_folds == std::optional<int>(2));
    check_witness(maze, m);
}

TEST_CASE("min_folds reports unreachable above the fold budget") {
    const auto w = run("wall_room", 2, 0.25, 0);
    CHECK_FALSE(w.min_folds);
    CHECK(w.witness.empty());
    const auto m = run("u_maze", 9, 0.25, 1);
    CHECK_FALSE(m.min_folds);
}

TEST_CASE("min_folds is monotone as the grid refines") {
    const std::vector<std::pair<std::string, ObjectId>> cases{{"open_room", 1}, {"wall_room", 2}, {"u_maze", 9}};
    for (const auto& [name, id] : cases) {
        CAPTURE(name);
        const auto coarse = run(name, id, 0.5, 3);
        const auto fine = run(name, id, 0.25, 3);
        REQUIRE(fine.min_folds);
        if (coarse.min_folds) CHECK(*fine.min_folds <= *coarse.min_folds);
    }
}

TEST_CASE("min_folds errors") {
    const Scene s = load_scene_file(scene_path("wall_room"));
    CHECK_THROWS_AS(min_folds(s, 42, {}), std::invalid_argument);
    ReachOptions zero;
    zero.grid_step = 0;
    CHECK_THROWS_AS(min_folds(s, 2, zero), std::invalid_argument);
}

TEST_CASE("reachability lists every target") {
    const Scene s = load_scene_file(scene_path("four_markers"));
    const auto report = reachability(s, {});
    CHECK(report.size() == 4);
    for (const auto& e : report) CHECK(e.min_folds.has_value());
}

TEST_CASE("u_maze goal is not selectable with fewer than two folds") {
    const Scene scene = load_scene_file(scene_path("u_maze"));
    const Vec3 hand = scene.spawn_hand_position(Hand::right);
    constexpr std::size_t kDirs = 10000;

    // Zero folds: no direction from the hand first-hits the goal.
    for (std::size_t i = 0; i < kDirs; ++i) {
        const auto hit = raycast_first(scene, Ray(hand, foldray::testing::fibonacci_direction(i, kDirs)));
        if (hit) REQUIRE(hit->object_id != 9);
    }

    // One fold: any fold position on a clear segment from the hand, any camera direction.
    // Fold candidates are sampled along hand rays up to their first hit.
    const std::size_t kFoldRays = 400;
    std::size_t folds_tried = 0;
    for (std::size_t i = 0; i < kFoldRays; ++i) {
        const Ray r(hand, foldray::testing::fibonacci_direction(i, kFoldRays));
        const auto stop = raycast_first(scene, r);
        const double t_end = stop ? stop->t : 20.0;
        for (double t = 0.5; t < t_end - 0.05; t += 1.0) {
            ++folds_tried;
            const Vec3 fold = r.at(t);
            for (std::size_t k = 0; k < 2000; ++k) {
                const auto hit = raycast_first(scene, Ray(fold, foldray::testing::fibonacci_direction(k, 2000)));
                if (hit) REQUIRE(hit->object_id != 9);
            }
        }
    }
    CHECK(folds_tried > 200);
}
