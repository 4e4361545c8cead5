#include "foldray/scene.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "foldray/json_io.hpp"

namespace foldray {

std::string_view to_string(Role role) {
    switch (role) {
        case Role::occluder: return "occluder";
        case Role::target: return "target";
        case Role::neutral: return "neutral";
    }
    return "neutral";
}

Scene::Scene(std::vector<SceneObject> objects, Pose spawn, HandOffsets hand_offsets, double eye_height)
    : objects_(std::move(objects)), spawn_(spawn), hand_offsets_(hand_offsets), eye_height_(eye_height) {
    std::set<ObjectId> seen;
    for (const auto& obj : objects_) {
        if (obj.id < 0) throw ValidationError("object id " + std::to_string(obj.id) + ": ids must be non-negative");
        if (!seen.insert(obj.id).second) {
            throw ValidationError("object id " + std::to_string(obj.id) + ": duplicate id");
        }
        try {
            validate_shape(obj.shape);
        } catch (const std::invalid_argument& e) {
            throw ValidationError("object id " + std::to_string(obj.id) + ": " + e.what());
        }
    }
    if (!(eye_height_ > 0.0) || !std::isfinite(eye_height_)) throw ValidationError("eye_height must be > 0");
}

const SceneObject* Scene::find(ObjectId id) const {
    const auto it = std::find_if(objects_.begin(), objects_.end(), [id](const auto& o) { return o.id == id; });
    return it == objects_.end() ? nullptr : &*it;
}

Vec3 Scene::spawn_hand_position(Hand hand) const {
    return spawn_.compose(rest_head()).compose(hand_offsets_.of(hand)).position;
}

std::string Scene::canonical_json() const {
    nlohmann::json doc;
    doc["spawn"] = to_json(spawn_);
    doc["hand_offsets"] = {{"left", to_json(hand_offsets_.left)}, {"right", to_json(hand_offsets_.right)}};
    doc["eye_height"] = eye_height_;
    auto objects = nlohmann::json::array();
    std::vector<const SceneObject*> sorted;
    for (const auto& o : objects_) sorted.push_back(&o);
    std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) { return a->id < b->id; });
    for (const auto* o : sorted) objects.push_back(to_json(*o));
    doc["objects"] = std::move(objects);
    return doc.dump();
}

std::string Scene::digest() const {
    const std::string canon = canonical_json();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(canon.data(), canon.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    std::string hex;
    hex.reserve(len * 2);
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

Scene load_scene(std::string_view text) {
    const nlohmann::json doc = parse_json_document(text);
    return scene_from_json(doc);
}

Scene load_scene_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open scene file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return load_scene(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

std::optional<Hit> raycast_first(const Scene& scene, const Ray& r, double t_max, const std::set<ObjectId>& ignore) {
    std::optional<Hit> best;
    for (const auto& obj : scene.objects()) {
        if (!ignore.empty() && ignore.count(obj.id)) continue;
        const auto h = intersect(r, obj.shape);
        if (!h || !(h->t < t_max)) continue;
        if (!best || h->t <= best->t - 1e-12 || (std::abs(h->t - best->t) < 1e-12 && obj.id < best->object_id)) {
            best = Hit{obj.id, h->t, h->point, h->normal};
        }
    }
    return best;
}

bool segment_visible(const Scene& scene, const Vec3& p, const Vec3& q, const std::set<ObjectId>& ignore) {
    const double len = distance(p, q);
    const Ray r(p, q - p);
    return !raycast_first(scene, r, len - 1e-6, ignore).has_value();
}

}  // namespace foldray
