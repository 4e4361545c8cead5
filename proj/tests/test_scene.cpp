#include <doctest.h>

#include <fstream>
#include <sstream>

#include "foldray/json_io.hpp"
#include "foldray/scene.hpp"
#include "support.hpp"

using namespace foldray;
using foldray::testing::Rng;
using foldray::testing::scene_path;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string error_of(const std::string& text) {
    try {
        load_scene(text);
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

const char* kSphere = R"({"kind":"sphere","center":[0,0,0],"radius":1})";

}  // namespace

TEST_CASE("load_scene: bundled wall_room") {
    const Scene s = load_scene_file(scene_path("wall_room"));
    REQUIRE(s.objects().size() == 3);
    const SceneObject* wall = s.find(1);
    const SceneObject* target = s.find(2);
    const SceneObject* floor = s.find(3);
    REQUIRE(wall);
    REQUIRE(target);
    REQUIRE(floor);
    CHECK(wall->role == Role::occluder);
    CHECK(std::holds_alternative<Box>(wall->shape));
    CHECK(target->role == Role::target);
    CHECK(target->selectable());
    CHECK(std::holds_alternative<Sphere>(target->shape));
    CHECK(floor->role == Role::neutral);
    CHECK_FALSE(floor->selectable());
    CHECK(s.spawn().position == Vec3{0, 0, 0});
    CHECK(distance(s.spawn().forward(), kForward) < 1e-12);
}

TEST_CASE("load_scene: every bundled scene parses") {
    for (const char* name : {"wall_room", "open_room", "u_maze", "four_markers"}) {
        CAPTURE(name);
        CHECK_NOTHROW(load_scene_file(scene_path(name)));
    }
}

TEST_CASE("load_scene: empty object list") {
    const Scene s = load_scene(R"({"spawn":{"position":[0,0,0],"orientation":[1,0,0,0]},"objects":[]})");
    CHECK(s.objects().empty());
    CHECK(s.hand_offsets().right.position == Vec3{0.2, -0.25, -0.3});
    CHECK(s.hand_offsets().left.position == Vec3{-0.2, -0.25, -0.3});
}

TEST_CASE("load_scene: duplicate id names the id") {
    const std::string doc = std::string(R"({"spawn":{"position":[0,0,0],"orientation":[1,0,0,0]},"objects":[)") +
                            R"({"id":3,"role":"target","label":"a","shape":)" + kSphere + "}," +
                            R"({"id":3,"role":"occluder","label":"b","shape":)" + kSphere + "}]}";
    CHECK_THROWS_AS(load_scene(doc), ValidationError);
    CHECK(error_of(doc).find("id 3") != std::string::npos);
}

TEST_CASE("load_scene: malformed and invalid documents") {
    CHECK_THROWS_AS(load_scene("{\"spawn\": "), ParseError);
    CHECK(error_of("{\n  \"spawn\": ]\n}").find("line 2") != std::string::npos);

    const std::string head = R"({"spawn":{"position":[0,0,0],"orientation":[1,0,0,0]},"objects":[)";
    CHECK_THROWS_AS(load_scene(head + R"({"id":1,"role":"target","label":"x","shape":{"kind":"sphere","center":[0,0,0],"radius":-1}}]})"),
                    ValidationError);
    CHECK_THROWS_AS(load_scene(head + R"({"id":1,"role":"boss","label":"x","shape":)" + kSphere + "}]}"),
                    ParseError);
    CHECK_THROWS_AS(load_scene(head + R"({"id":1,"role":"target","label":"x","shape":{"kind":"cone"}}]})"),
                    ParseError);
    CHECK_THROWS_AS(load_scene(head + R"({"id":-2,"role":"target","label":"x","shape":)" + kSphere + "}]}"),
                    ValidationError);
    // Far from unit norm is rejected; a slightly denormalized quaternion is accepted.
    CHECK_THROWS_AS(load_scene(R"({"spawn":{"position":[0,0,0],"orientation":[2,0,0,0]},"objects":[]})"),
                    ValidationError);
    CHECK_NOTHROW(load_scene(R"({"spawn":{"position":[0,0,0],"orientation":[1.0002,0,0,0]},"objects":[]})"));
}

TEST_CASE("raycast_first: wall_room from the spawn hand toward the target hits the wall") {
    const Scene s = load_scene_file(scene_path("wall_room"));
    const Vec3 hand = s.spawn_hand_position(Hand::right);
    const Vec3 target = std::get<Sphere>(s.find(2)->shape).center;
    const auto hit = raycast_first(s, Ray(hand, target - hand));
    REQUIRE(hit);
    CHECK(hit->object_id == 1);

    // The marching oracle confirms the wall is entered before the target.
    const Ray r(hand, target - hand);
    const auto wall_t = foldray::testing::marched_box_entry(r, std::get<Box>(s.find(1)->shape), 10.0);
    REQUIRE(wall_t);
    CHECK(std::abs(*wall_t - hit->t) < 1e-3);
    CHECK(*wall_t < distance(hand, target));
}

TEST_CASE("raycast_first: empty scene and concentric spheres") {
    const Scene empty({}, {}, {});
    Rng rng(5);
    for (int i = 0; i < 20; ++i) CHECK_FALSE(raycast_first(empty, Ray(rng.in_box(-5, 5), rng.unit())));

    const Scene nested({{1, Sphere{{0, 0, 0}, 0.5}, Role::target, "inner"}, {2, Sphere{{0, 0, 0}, 1.0}, Role::occluder, "outer"}},
                       {}, {});
    const auto hit = raycast_first(nested, Ray({-5, 0, 0}, {1, 0, 0}));
    REQUIRE(hit);
    CHECK(hit->object_id == 2);
    CHECK(hit->t == doctest::Approx(4.0));
}

TEST_CASE("raycast_first: t_max, ignore set and equal-t ties") {
    const Scene twins({{7, Sphere{{0, 0, -3}, 1.0}, Role::target, "a"}, {4, Sphere{{0, 0, -3}, 1.0}, Role::target, "b"}},
                      {}, {});
    const auto hit = raycast_first(twins, Ray({0, 0, 0}, {0, 0, -1}));
    REQUIRE(hit);
    CHECK(hit->object_id == 4);
    CHECK_FALSE(raycast_first(twins, Ray({0, 0, 0}, {0, 0, -1}), 1.5));
    const auto other = raycast_first(twins, Ray({0, 0, 0}, {0, 0, -1}), kInfinity, {4});
    REQUIRE(other);
    CHECK(other->object_id == 7);
}

TEST_CASE("segment_visible: wall_room cases") {
    const Scene s = load_scene_file(scene_path("wall_room"));
    const Vec3 hand = s.spawn_hand_position(Hand::right);
    const Vec3 target{0, 1, -5};
    CHECK_FALSE(segment_visible(s, hand, target, {2}));
    CHECK(segment_visible(s, {0, 2.5, -2.5}, target, {2}));
    // Targets occlude unless ignored.
    CHECK_FALSE(segment_visible(s, {0, 2.5, -2.5}, target, {}));

    const Scene empty({}, {}, {});
    CHECK(segment_visible(empty, {1, 1, 1}, {1, 1, 1.001}, {}));
}

TEST_CASE("segment_visible is symmetric") {
    const Scene s = load_scene_file(scene_path("u_maze"));
    Rng rng(21);
    int blocked = 0;
    for (int i = 0; i < 2000; ++i) {
        const Vec3 p{rng.uniform(-1.4, 1.4), rng.uniform(0.1, 2.9), rng.uniform(-8.9, 0.9)};
        const Vec3 q{rng.uniform(-1.4, 1.4), rng.uniform(0.1, 2.9), rng.uniform(-8.9, 0.9)};
        const bool inside_any = std::any_of(s.objects().begin(), s.objects().end(), [&](const auto& o) {
            return contains_point(o.shape, p) || contains_point(o.shape, q);
        });
        if (inside_any) continue;
        const bool pq = segment_visible(s, p, q, {});
        CHECK(pq == segment_visible(s, q, p, {}));
        if (!pq) ++blocked;
    }
    CHECK(blocked > 100);
}

TEST_CASE("digest: stable, whitespace-insensitive, content-sensitive") {
    const std::string text = slurp(scene_path("wall_room"));
    const std::string d1 = load_scene(text).digest();
    CHECK(d1.size() == 64);
    CHECK(load_scene_file(scene_path("wall_room")).digest() == d1);

    nlohmann::json doc = nlohmann::json::parse(text);
    CHECK(load_scene(doc.dump()).digest() == d1);
    CHECK(load_scene(doc.dump(7)).digest() == d1);

    for (auto& o : doc["objects"]) {
        if (o["shape"]["kind"] == "sphere") o["shape"]["radius"] = o["shape"]["radius"].get<double>() + 1e-9;
    }
    CHECK(load_scene(doc.dump()).digest() != d1);
}

TEST_CASE("digest does not depend on object order") {
    nlohmann::json doc = nlohmann::json::parse(slurp(scene_path("u_maze")));
    const std::string d = load_scene(doc.dump()).digest();
    std::reverse(doc["objects"].begin(), doc["objects"].end());
    CHECK(load_scene(doc.dump()).digest() == d);
}

TEST_CASE("scene round trips through its canonical form") {
    for (const char* name : {"wall_room", "open_room", "u_maze", "four_markers"}) {
        const Scene s = load_scene_file(scene_path(name));
        const Scene again = load_scene(s.canonical_json());
        CHECK(again.digest() == s.digest());
    }
}
