#pragma once

// JSON mapping for scene documents, trace lines, event logs and render messages.

#include <istream>
#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "foldray/scene.hpp"
#include "foldray/session.hpp"

namespace foldray {

/// Parses one JSON document. Syntax errors become ParseError with line and column.
nlohmann::json parse_json_document(std::string_view text);

nlohmann::json to_json(const Vec3& v);
nlohmann::json to_json(const UnitQuaternion& q);
nlohmann::json to_json(const Pose& p);
nlohmann::json to_json(const Shape& s);
nlohmann::json to_json(const SceneObject& o);

Vec3 vec3_from_json(const nlohmann::json& j, const std::string& field);
/// Accepts quaternions within 1e-3 of unit norm and normalizes them; rejects the rest.
UnitQuaternion quaternion_from_json(const nlohmann::json& j, const std::string& field);
Pose pose_from_json(const nlohmann::json& j, const std::string& field);

Scene scene_from_json(const nlohmann::json& doc);

/// `{"type":"scene", ...}` message describing the world for a viewer.
nlohmann::ordered_json scene_message(const Scene& scene);

InputFrame input_frame_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const InputFrame& frame);

/// One event-log record: `{"seq":..,"event":..,...payload}`.
nlohmann::ordered_json to_json(const InteractionEvent& e);
std::string event_line(const InteractionEvent& e);

nlohmann::ordered_json to_json(const RenderState& r);

/// Reads a line-delimited trace. Blank lines are skipped; errors name the 1-based line.
std::vector<InputFrame> read_trace(std::istream& in);
std::vector<InputFrame> read_trace_file(const std::string& path);
void write_trace(std::ostream& out, const std::vector<InputFrame>& frames);

}  // namespace foldray
