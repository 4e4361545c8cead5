// foldray: trace replay, reachability oracle, scene digest and live session server.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>

#include "foldray/json_io.hpp"
#include "foldray/reach.hpp"
#include "foldray/scene.hpp"
#include "foldray/serve.hpp"
#include "foldray/session.hpp"

namespace {

using namespace foldray;

int run_trace(const std::string& scene_path, const std::string& trace_path, const std::string& out_path,
              const FoldingConfig& config) {
    const Scene scene = load_scene_file(scene_path);
    const auto frames = read_trace_file(trace_path);

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw std::runtime_error("cannot write '" + out_path + "'");
    }
    std::ostream& out = out_path.empty() ? std::cout : file;

    SessionState state = new_session(scene, config);
    std::vector<ObjectId> selections;
    for (const auto& f : frames) {
        StepResult r = step(scene, state, f);
        for (const auto& e : r.events) {
            out << event_line(e) << '\n' << std::flush;
            if (const auto* s = std::get_if<SelectionMade>(&e.payload)) selections.push_back(s->object_id);
        }
        state = std::move(r.state);
    }

    std::cerr << "frames: " << frames.size() << "\nselections:";
    for (const auto id : selections) std::cerr << ' ' << id;
    std::cerr << "\nfinal folds: " << state.chain.size() << '\n';
    return 0;
}

int reach(const std::string& scene_path, int max_folds, double grid, const std::string& format) {
    const Scene scene = load_scene_file(scene_path);
    ReachOptions opts;
    opts.max_folds = max_folds;
    opts.grid_step = grid;
    const auto report = reachability(scene, opts);

    if (format == "table") {
        std::cout << std::left << std::setw(8) << "target" << std::setw(16) << "label" << std::setw(12) << "min_folds"
                  << "witness\n";
        for (const auto& e : report) {
            std::cout << std::setw(8) << e.target_id << std::setw(16) << scene.find(e.target_id)->label
                      << std::setw(12) << (e.min_folds ? std::to_string(*e.min_folds) : "unreachable");
            for (const auto& p : e.witness) {
                std::cout << '(' << p.x << ", " << p.y << ", " << p.z << ") ";
            }
            std::cout << '\n';
        }
        return 0;
    }
    for (const auto& e : report) {
        nlohmann::ordered_json j;
        j["target_id"] = e.target_id;
        j["label"] = scene.find(e.target_id)->label;
        j["min_folds"] = e.min_folds ? nlohmann::ordered_json(*e.min_folds) : nlohmann::ordered_json();
        auto w = nlohmann::ordered_json::array();
        for (const auto& p : e.witness) w.push_back({p.x, p.y, p.z});
        j["witness"] = std::move(w);
        std::cout << j.dump() << '\n';
    }
    return 0;
}

int serve(const std::string& scene_path, int port, const FoldingConfig& config) {
    auto scene = std::make_shared<const Scene>(load_scene_file(scene_path));
    Server server(scene, config, static_cast<std::uint16_t>(port));
    std::cerr << "foldray serving " << scene_path << " on ws://127.0.0.1:" << server.port() << '\n';
    server.run();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Folding-ray selection engine"};
    app.require_subcommand(1);

    std::string scene_path;
    FoldingConfig config;
    std::string hand = "right";

    const auto add_session_flags = [&](CLI::App* cmd) {
        cmd->add_option("--epsilon", config.epsilon, "Crossing threshold in metres")->capture_default_str();
        cmd->add_option("--max-folds-per-chain", config.max_folds, "Fold chain capacity")->capture_default_str();
        cmd->add_option("--hand", hand, "Dominant hand")->check(CLI::IsMember({"left", "right"}))->capture_default_str();
    };

    auto* run_cmd = app.add_subcommand("run", "Replay a trace and print the event log");
    std::string trace_path;
    std::string out_path;
    run_cmd->add_option("--scene", scene_path, "Scene JSON")->required();
    run_cmd->add_option("--trace", trace_path, "Trace JSONL")->required();
    run_cmd->add_option("--out", out_path, "Write events here instead of stdout");
    add_session_flags(run_cmd);

    auto* reach_cmd = app.add_subcommand("reach", "Minimum folds needed per target");
    int max_folds = 2;
    double grid = 0.25;
    std::string format = "json";
    reach_cmd->add_option("--scene", scene_path, "Scene JSON")->required();
    reach_cmd->add_option("--max-folds", max_folds, "Largest fold count searched")->capture_default_str();
    reach_cmd->add_option("--grid", grid, "Grid step in metres")->check(CLI::PositiveNumber)->capture_default_str();
    reach_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "table"}))->capture_default_str();

    auto* digest_cmd = app.add_subcommand("digest", "Content digest of a scene");
    digest_cmd->add_option("--scene", scene_path, "Scene JSON")->required();

    auto* serve_cmd = app.add_subcommand("serve", "Serve live sessions over WebSocket");
    int port = 8765;
    serve_cmd->add_option("--scene", scene_path, "Scene JSON")->required();
    serve_cmd->add_option("--port", port, "TCP port (0 picks one)")->check(CLI::Range(0, 65535))->capture_default_str();
    add_session_flags(serve_cmd);

    CLI11_PARSE(app, argc, argv);
    config.dominant_hand = hand == "left" ? Hand::left : Hand::right;

    try {
        if (*run_cmd) return run_trace(scene_path, trace_path, out_path, config);
        if (*reach_cmd) return reach(scene_path, max_folds, grid, format);
        if (*digest_cmd) {
            std::cout << load_scene_file(scene_path).digest() << '\n';
            return 0;
        }
        if (*serve_cmd) return serve(scene_path, port, config);
    } catch (const std::exception& e) {
        std::cerr << "foldray: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
