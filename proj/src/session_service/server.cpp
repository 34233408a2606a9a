#include "cooking_code/server.hpp"

#include <atomic>
#include <chrono>
#include <deque>
#include <iostream>
#include <thread>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

namespace cooking_code {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

class Connection : public std::enable_shared_from_this<Connection> {
public:
    Connection(tcp::socket socket, const GameConfig& config, ProfileStore& store, std::string id)
        : ws_(std::move(socket)),
          timer_(ws_.get_executor()),
          session_(config, store_hooks(store), std::move(id)),
          interval_(config.tick_interval_ms),
          live_(!config.headless) {}

    void start() {
        ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        ws_.async_accept([self = shared_from_this()](beast::error_code ec) {
            if (ec) return;
            self->send(self->session_.start());
            self->read();
            if (self->live_) self->schedule_tick();
        });
    }

private:
    void read() {
        ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) {
                self->closed_ = true;
                self->timer_.cancel();
                return;
            }
            const std::string line = beast::buffers_to_string(self->buffer_.data());
            self->buffer_.consume(self->buffer_.size());
            self->send(self->session_.handle_line(line));
            self->read();
        });
    }

    void schedule_tick() {
        timer_.expires_after(std::chrono::milliseconds(interval_));
        timer_.async_wait([self = shared_from_this()](beast::error_code ec) {
            if (ec || self->closed_) return;
            self->send(self->session_.advance_clock(1));
            self->schedule_tick();
        });
    }

    void send(const std::vector<ServerEvent>& events) {
        for (const auto& e : events) outbox_.push_back(e.dump());
        if (!writing_) write_next();
    }

    void write_next() {
        if (outbox_.empty() || closed_) {
            writing_ = false;
            return;
        }
        writing_ = true;
        ws_.text(true);
        ws_.async_write(asio::buffer(outbox_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
            self->outbox_.pop_front();
            if (ec) {
                self->closed_ = true;
                self->writing_ = false;
                return;
            }
            self->write_next();
        });
    }

    websocket::stream<beast::tcp_stream> ws_;
    asio::steady_timer timer_;
    beast::flat_buffer buffer_;
    Session session_;
    std::deque<std::string> outbox_;
    int interval_;
    bool live_;
    bool writing_ = false;
    bool closed_ = false;
};

}  // namespace

struct SessionServer::Impl {
    explicit Impl(ServerOptions opts)
        : options(std::move(opts)), store(options.data_dir), acceptor(ioc) {
        const tcp::endpoint endpoint(asio::ip::make_address(options.address), options.port);
        acceptor.open(endpoint.protocol());
        acceptor.set_option(asio::socket_base::reuse_address(true));
        acceptor.bind(endpoint);
        acceptor.listen();
    }

    void accept() {
        acceptor.async_accept(asio::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
            if (ec) return;
            const std::string id = "s-" + std::to_string(++next_id);
            std::make_shared<Connection>(std::move(socket), options.config, store, id)->start();
            accept();
        });
    }

    ServerOptions options;
    ProfileStore store;
    asio::io_context ioc;
    tcp::acceptor acceptor;
    std::atomic<long> next_id{0};
};

SessionServer::SessionServer(ServerOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}

SessionServer::~SessionServer() { stop(); }

unsigned short SessionServer::port() const { return impl_->acceptor.local_endpoint().port(); }

void SessionServer::run() {
    impl_->accept();
    std::vector<std::thread> extra;
    for (int i = 1; i < impl_->options.threads; ++i) extra.emplace_back([this] { impl_->ioc.run(); });
    impl_->ioc.run();
    for (auto& t : extra) t.join();
}

void SessionServer::stop() {
    if (impl_) impl_->ioc.stop();
}

int serve_stdio(const GameConfig& config, ProfileStore& store, std::istream& in, std::ostream& out) {
    Session session(config, store_hooks(store), "stdio");
    auto emit = [&out](const std::vector<ServerEvent>& events) {
        for (const auto& e : events) out << e.dump() << '\n';
        out.flush();
    };
    emit(session.start());
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        emit(session.handle_line(line));
    }
    return 0;
}

}  // namespace cooking_code
