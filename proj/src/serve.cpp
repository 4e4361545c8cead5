#include "foldray/serve.hpp"

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <deque>

#include "foldray/json_io.hpp"

namespace foldray {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

std::string hello_message(const Scene& scene) { return scene_message(scene).dump(); }

namespace {

std::string error_message(const std::string& what) {
    nlohmann::ordered_json j;
    j["type"] = "error";
    j["message"] = what;
    return j.dump();
}

}  // namespace

MessageResult handle_message(Session& session, std::string_view message) {
    MessageResult out;
    try {
        const nlohmann::json msg = parse_json_document(message);
        if (!msg.is_object() || !msg.contains("type") || !msg["type"].is_string()) {
            throw ParseError("message needs a string \"type\"");
        }
        const std::string type = msg["type"].get<std::string>();
        if (type == "reset") {
            session.reset();
            return out;
        }
        if (type != "input") throw ParseError("unknown message type '" + type + "'");
        if (!msg.contains("frame")) throw ParseError("input message without \"frame\"");

        const StepResult r = session.step(input_frame_from_json(msg["frame"]));
        for (const auto& e : r.events) {
            nlohmann::ordered_json j;
            j["type"] = "event";
            j.update(to_json(e));
            out.replies.push_back(j.dump());
        }
        nlohmann::ordered_json render;
        render["type"] = "render";
        render.update(to_json(r.render));
        out.replies.push_back(render.dump());
    } catch (const std::exception& e) {
        out.replies.push_back(error_message(e.what()));
        out.close = true;
    }
    return out;
}

namespace {

class Connection : public std::enable_shared_from_this<Connection> {
public:
    Connection(tcp::socket socket, std::shared_ptr<const Scene> scene, const FoldingConfig& config)
        : ws_(std::move(socket)), session_(std::move(scene), config) {}

    void run() {
        ws_.async_accept([self = shared_from_this()](beast::error_code ec) {
            if (ec) return;
            self->send(hello_message(self->session_.scene()));
            self->read();
        });
    }

private:
    void read() {
        ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) return;
            const std::string text = beast::buffers_to_string(self->buffer_.data());
            self->buffer_.consume(self->buffer_.size());
            MessageResult r = handle_message(self->session_, text);
            for (auto& reply : r.replies) self->send(std::move(reply));
            if (r.close) {
                self->closing_ = true;
                if (self->queue_.empty()) self->close();
                return;
            }
            self->read();
        });
    }

    void send(std::string message) {
        queue_.push_back(std::move(message));
        if (queue_.size() == 1) write();
    }

    void write() {
        ws_.text(true);
        ws_.async_write(asio::buffer(queue_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) return;
            self->queue_.pop_front();
            if (!self->queue_.empty()) {
                self->write();
            } else if (self->closing_) {
                self->close();
            }
        });
    }

    void close() {
        ws_.async_close(websocket::close_code::policy_error, [self = shared_from_this()](beast::error_code) {});
    }

    websocket::stream<beast::tcp_stream> ws_;
    beast::flat_buffer buffer_;
    std::deque<std::string> queue_;
    Session session_;
    bool closing_ = false;
};

}  // namespace

struct Server::Impl {
    asio::io_context ioc;
    tcp::acceptor acceptor{ioc};
    std::shared_ptr<const Scene> scene;
    FoldingConfig config;

    void accept() {
        acceptor.async_accept(asio::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
            if (ec) return;
            std::make_shared<Connection>(std::move(socket), scene, config)->run();
            accept();
        });
    }
};

Server::Server(std::shared_ptr<const Scene> scene, const FoldingConfig& config, std::uint16_t port,
               const std::string& address)
    : impl_(std::make_unique<Impl>()) {
    config.validate();
    impl_->scene = std::move(scene);
    impl_->config = config;
    beast::error_code ec;
    const tcp::endpoint endpoint{asio::ip::make_address(address, ec), port};
    if (ec) throw std::runtime_error("bad address '" + address + "': " + ec.message());
    auto& acc = impl_->acceptor;
    acc.open(endpoint.protocol(), ec);
    if (!ec) acc.set_option(asio::socket_base::reuse_address(true), ec);
    if (!ec) acc.bind(endpoint, ec);
    if (!ec) acc.listen(asio::socket_base::max_listen_connections, ec);
    if (ec) throw std::runtime_error("cannot bind " + address + ":" + std::to_string(port) + ": " + ec.message());
    impl_->accept();
}

Server::~Server() { stop(); }

std::uint16_t Server::port() const { return impl_->acceptor.local_endpoint().port(); }

void Server::run() { impl_->ioc.run(); }

void Server::start() {
    thread_ = std::thread([this] { impl_->ioc.run(); });
}

void Server::stop() {
    impl_->ioc.stop();
    if (thread_.joinable()) thread_.join();
}

}  // namespace foldray
