#include "foldray/json_io.hpp"

#include <fstream>
#include <sstream>

namespace foldray {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
    throw ParseError("field '" + field + "': " + what);
}

const json& require(const json& j, const char* key, const std::string& field) {
    if (!j.is_object()) field_error(field, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) field_error(field.empty() ? key : field + "." + key, "missing");
    return *it;
}

double number(const json& j, const std::string& field) {
    if (!j.is_number()) field_error(field, "expected a number");
    return j.get<double>();
}

bool boolean(const json& j, const std::string& field) {
    if (!j.is_boolean()) field_error(field, "expected true or false");
    return j.get<bool>();
}

std::string join(const std::string& a, const char* b) { return a.empty() ? std::string(b) : a + "." + b; }

std::pair<int, int> line_column(std::string_view text, std::size_t byte) {
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

template <class Json>
Json vec_json(const Vec3& v) {
    return Json::array({v.x, v.y, v.z});
}

template <class Json>
Json pose_json(const Pose& p) {
    Json out = Json::object();
    out["position"] = vec_json<Json>(p.position);
    out["orientation"] = Json::array({p.orientation.w(), p.orientation.x(), p.orientation.y(), p.orientation.z()});
    return out;
}

Role role_from_json(const json& j, const std::string& field) {
    if (!j.is_string()) field_error(field, "expected a string");
    const auto s = j.get<std::string>();
    if (s == "occluder") return Role::occluder;
    if (s == "target") return Role::target;
    if (s == "neutral") return Role::neutral;
    field_error(field, "unknown role '" + s + "'");
}

Shape shape_from_json(const json& j, const std::string& field) {
    const json& kind_j = require(j, "kind", field);
    if (!kind_j.is_string()) field_error(join(field, "kind"), "expected a string");
    const auto kind = kind_j.get<std::string>();
    if (kind == "sphere") {
        return Sphere{vec3_from_json(require(j, "center", field), join(field, "center")),
                      number(require(j, "radius", field), join(field, "radius"))};
    }
    if (kind == "box") {
        Box b{vec3_from_json(require(j, "center", field), join(field, "center")),
              vec3_from_json(require(j, "half_extents", field), join(field, "half_extents")), {}};
        if (j.contains("orientation")) b.orientation = quaternion_from_json(j["orientation"], join(field, "orientation"));
        return b;
    }
    if (kind == "quad") {
        return Quad{pose_from_json(require(j, "pose", field), join(field, "pose")),
                    number(require(j, "half_width", field), join(field, "half_width")),
                    number(require(j, "half_height", field), join(field, "half_height"))};
    }
    field_error(join(field, "kind"), "unknown shape kind '" + kind + "'");
}

}  // namespace

json parse_json_document(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": invalid JSON");
    }
}

json to_json(const Vec3& v) { return vec_json<json>(v); }

json to_json(const UnitQuaternion& q) { return json::array({q.w(), q.x(), q.y(), q.z()}); }

json to_json(const Pose& p) { return pose_json<json>(p); }

json to_json(const Shape& s) {
    return std::visit(
        [](const auto& shape) -> json {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, Sphere>) {
                return {{"kind", "sphere"}, {"center", to_json(shape.center)}, {"radius", shape.radius}};
            } else if constexpr (std::is_same_v<T, Box>) {
                return {{"kind", "box"},
                        {"center", to_json(shape.center)},
                        {"half_extents", to_json(shape.half_extents)},
                        {"orientation", to_json(shape.orientation)}};
            } else {
                return {{"kind", "quad"},
                        {"pose", to_json(shape.pose)},
                        {"half_width", shape.half_width},
                        {"half_height", shape.half_height}};
            }
        },
        s);
}

json to_json(const SceneObject& o) {
    return {{"id", o.id}, {"role", std::string(to_string(o.role))}, {"label", o.label}, {"shape", to_json(o.shape)}};
}

Vec3 vec3_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 3) field_error(field, "expected [x, y, z]");
    return {number(j[0], field + "[0]"), number(j[1], field + "[1]"), number(j[2], field + "[2]")};
}

UnitQuaternion quaternion_from_json(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 4) field_error(field, "expected [w, x, y, z]");
    const double w = number(j[0], field + "[0]");
    const double x = number(j[1], field + "[1]");
    const double y = number(j[2], field + "[2]");
    const double z = number(j[3], field + "[3]");
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    if (!(std::abs(n - 1.0) <= 1e-3)) {
        throw ValidationError("field '" + field + "': quaternion norm " + std::to_string(n) + " is not unit");
    }
    return UnitQuaternion(w, x, y, z);
}

Pose pose_from_json(const json& j, const std::string& field) {
    return {vec3_from_json(require(j, "position", field), join(field, "position")),
            quaternion_from_json(require(j, "orientation", field), join(field, "orientation"))};
}

Scene scene_from_json(const json& doc) {
    if (!doc.is_object()) throw ParseError("scene document must be a JSON object");
    const Pose spawn = pose_from_json(require(doc, "spawn", ""), "spawn");

    HandOffsets offsets;
    if (doc.contains("hand_offsets")) {
        const json& h = doc["hand_offsets"];
        offsets.left = pose_from_json(require(h, "left", "hand_offsets"), "hand_offsets.left");
        offsets.right = pose_from_json(require(h, "right", "hand_offsets"), "hand_offsets.right");
    }
    double eye_height = 1.6;
    if (doc.contains("eye_height")) eye_height = number(doc["eye_height"], "eye_height");

    const json& objs = require(doc, "objects", "");
    if (!objs.is_array()) field_error("objects", "expected an array");
    std::vector<SceneObject> objects;
    objects.reserve(objs.size());
    for (std::size_t i = 0; i < objs.size(); ++i) {
        const std::string field = "objects[" + std::to_string(i) + "]";
        const json& o = objs[i];
        const json& id_j = require(o, "id", field);
        if (!id_j.is_number_integer()) field_error(field + ".id", "expected an integer");
        SceneObject obj;
        obj.id = id_j.get<ObjectId>();
        try {
            obj.role = role_from_json(require(o, "role", field), field + ".role");
            if (o.contains("label")) {
                if (!o["label"].is_string()) field_error(field + ".label", "expected a string");
                obj.label = o["label"].get<std::string>();
            }
            obj.shape = shape_from_json(require(o, "shape", field), field + ".shape");
        } catch (const ValidationError& e) {
            throw ValidationError("object id " + std::to_string(obj.id) + ": " + e.what());
        }
        objects.push_back(std::move(obj));
    }
    return Scene(std::move(objects), spawn, offsets, eye_height);
}

ordered_json scene_message(const Scene& scene) {
    ordered_json msg;
    msg["type"] = "scene";
    auto objects = ordered_json::array();
    for (const auto& o : scene.objects()) objects.push_back(ordered_json::parse(to_json(o).dump()));
    msg["objects"] = std::move(objects);
    msg["spawn"] = pose_json<ordered_json>(scene.spawn());
    msg["eye_height"] = scene.eye_height();
    msg["hand_offsets"] = {{"left", pose_json<ordered_json>(scene.hand_offsets().left)},
                           {"right", pose_json<ordered_json>(scene.hand_offsets().right)}};
    return msg;
}

InputFrame input_frame_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("input frame must be a JSON object");
    InputFrame f;
    const json& seq = require(j, "seq", "");
    if (!seq.is_number_integer()) field_error("seq", "expected an integer");
    f.seq = seq.get<FrameSeq>();
    f.head = pose_from_json(require(j, "head", ""), "head");
    f.left = pose_from_json(require(j, "left", ""), "left");
    f.right = pose_from_json(require(j, "right", ""), "right");
    const json& b = require(j, "buttons", "");
    f.buttons.trigger = boolean(require(b, "trigger", "buttons"), "buttons.trigger");
    f.buttons.primary = boolean(require(b, "primary", "buttons"), "buttons.primary");
    f.buttons.pop = boolean(require(b, "pop", "buttons"), "buttons.pop");
    f.buttons.teleport = boolean(require(b, "teleport", "buttons"), "buttons.teleport");
    return f;
}

ordered_json to_json(const InputFrame& f) {
    ordered_json j;
    j["seq"] = f.seq;
    j["head"] = pose_json<ordered_json>(f.head);
    j["left"] = pose_json<ordered_json>(f.left);
    j["right"] = pose_json<ordered_json>(f.right);
    j["buttons"] = {{"trigger", f.buttons.trigger},
                    {"primary", f.buttons.primary},
                    {"pop", f.buttons.pop},
                    {"teleport", f.buttons.teleport}};
    return j;
}

ordered_json to_json(const InteractionEvent& e) {
    ordered_json j;
    j["seq"] = e.seq;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, FoldCreated>) {
                j["event"] = "FoldCreated";
                j["position"] = vec_json<ordered_json>(p.position);
            } else if constexpr (std::is_same_v<T, FoldPopped>) {
                j["event"] = "FoldPopped";
            } else if constexpr (std::is_same_v<T, SelectionMade>) {
                j["event"] = "SelectionMade";
                j["object_id"] = p.object_id;
            } else if constexpr (std::is_same_v<T, SelectionAttemptFailed>) {
                j["event"] = "SelectionAttemptFailed";
            } else {
                j["event"] = "Teleported";
                j["pose"] = pose_json<ordered_json>(p.pose);
                j["cleared_folds"] = p.cleared_folds;
            }
        },
        e.payload);
    return j;
}

std::string event_line(const InteractionEvent& e) { return to_json(e).dump(); }

ordered_json to_json(const RenderState& r) {
    const auto points = [](const std::vector<Vec3>& pts) {
        auto arr = ordered_json::array();
        for (const auto& p : pts) arr.push_back(vec_json<ordered_json>(p));
        return arr;
    };
    ordered_json j;
    j["seq"] = r.seq;
    j["main_polyline"] = points(r.main_polyline);
    j["secondary_polyline"] = points(r.secondary_polyline);
    j["crossing_indicator"] = r.crossing_indicator ? vec_json<ordered_json>(*r.crossing_indicator) : ordered_json();
    if (r.window) {
        ordered_json w;
        w["center"] = vec_json<ordered_json>(r.window->window.center);
        const auto& q = r.window->window.orientation;
        w["orientation"] = ordered_json::array({q.w(), q.x(), q.y(), q.z()});
        w["half_size"] = r.window->window.half_size;
        w["distance"] = r.window->window.distance;
        w["camera"] = {{"pose", pose_json<ordered_json>(r.window->camera.pose)},
                       {"vertical_fov", r.window->camera.vertical_fov},
                       {"aspect", r.window->camera.aspect},
                       {"near_plane", r.window->camera.near_plane}};
        j["window"] = std::move(w);
    } else {
        j["window"] = nullptr;
    }
    j["hovered"] = r.hovered ? ordered_json(*r.hovered) : ordered_json();
    j["fold_count"] = r.fold_count;
    return j;
}

std::vector<InputFrame> read_trace(std::istream& in) {
    std::vector<InputFrame> frames;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            frames.push_back(input_frame_from_json(parse_json_document(line)));
        } catch (const ParseError& e) {
            throw ParseError("trace line " + std::to_string(line_no) + ": " + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError("trace line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return frames;
}

std::vector<InputFrame> read_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open trace file '" + path + "'");
    try {
        return read_trace(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_trace(std::ostream& out, const std::vector<InputFrame>& frames) {
    for (const auto& f : frames) out << to_json(f).dump() << '\n';
}

}  // namespace foldray
