#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>

#include "cooking_code/session.hpp"

namespace cooking_code {

struct ServerOptions {
    std::string address = "127.0.0.1";
    unsigned short port = 8080;  // 0 picks a free port
    GameConfig config;
    std::filesystem::path data_dir = ProfileStore::directory_from_env();
    int threads = 1;
};

/// WebSocket endpoint: one text frame per command in, one per event out.
/// Every connection gets its own Session; the profile store is shared.
class SessionServer {
public:
    explicit SessionServer(ServerOptions options);
    ~SessionServer();
    SessionServer(const SessionServer&) = delete;
    SessionServer& operator=(const SessionServer&) = delete;

    // Bound port, valid after construction.
    unsigned short port() const;
    // Blocks until stop().
    void run();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// The same protocol over newline-delimited stdin/stdout, one session.
int serve_stdio(const GameConfig& config, ProfileStore& store, std::istream& in, std::ostream& out);

}  // namespace cooking_code
