#pragma once

// Live session service: one fresh Session per WebSocket connection, one JSON message per
// text frame.
//
//   client -> server  {"type":"input","frame":{...}}   {"type":"reset"}
//   server -> client  {"type":"scene",...} once on connect
//                     {"type":"event",...} per interaction event, then
//                     {"type":"render",...} once per input frame
//                     {"type":"error","message":...} before closing on a bad message

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "foldray/folding.hpp"
#include "foldray/scene.hpp"
#include "foldray/session.hpp"

namespace foldray {

struct MessageResult {
    std::vector<std::string> replies;
    bool close = false;
};

/// Transport-free handling of one client message against a connection's session.
MessageResult handle_message(Session& session, std::string_view message);

/// First message sent on every connection.
std::string hello_message(const Scene& scene);

class Server {
public:
    /// Binds immediately; port 0 picks a free port. Throws std::runtime_error on bind failure.
    Server(std::shared_ptr<const Scene> scene, const FoldingConfig& config, std::uint16_t port,
           const std::string& address = "127.0.0.1");
    ~Server();

    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    std::uint16_t port() const;

    /// Serves on the calling thread until stop().
    void run();
    /// Serves on a background thread.
    void start();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    std::thread thread_;
};

}  // namespace foldray
