#include "cooking_code/profile_store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cooking_code/checksum.hpp"

namespace cooking_code {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string errno_text(const std::string& what, const fs::path& path) {
    return what + " '" + path.string() + "': " + std::strerror(errno);
}

class Fd {
public:
    explicit Fd(int fd) : fd_(fd) {}
    Fd(const Fd&) = delete;
    Fd& operator=(const Fd&) = delete;
    ~Fd() {
        if (fd_ >= 0) ::close(fd_);
    }
    int get() const { return fd_; }

private:
    int fd_;
};

void write_all(int fd, const char* data, std::size_t size, const fs::path& path) {
    while (size > 0) {
        const ssize_t n = ::write(fd, data, size);
        if (n < 0) {
            if (errno == EINTR) continue;
            throw StoreError(StoreErrorKind::Io, errno_text("write failed", path));
        }
        data += n;
        size -= static_cast<std::size_t>(n);
    }
}

void sync_directory(const fs::path& dir) {
    Fd fd(::open(dir.c_str(), O_RDONLY | O_DIRECTORY));
    if (fd.get() >= 0) ::fsync(fd.get());
}

}  // namespace

bool valid_player_id(std::string_view id) {
    return !id.empty() && id.size() <= 64 && std::all_of(id.begin(), id.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '-';
    });
}

json profile_to_json(const PlayerProfile& profile) {
    return {{"player_id", profile.player_id},
            {"stats", stats_to_json(profile.stats)},
            {"created_at", profile.created_at},
            {"updated_at", profile.updated_at}};
}

PlayerProfile profile_from_json(const json& doc) {
    PlayerProfile profile;
    profile.player_id = doc.at("player_id").get<std::string>();
    profile.stats = stats_from_json(doc.at("stats"));
    profile.created_at = doc.at("created_at").get<long long>();
    profile.updated_at = doc.at("updated_at").get<long long>();
    return profile;
}

ProfileStore::ProfileStore(fs::path directory) : directory_(std::move(directory)) {}

fs::path ProfileStore::directory_from_env() {
    if (const char* dir = std::getenv("COOKING_CODE_DATA_DIR"); dir && *dir) return dir;
    return "cooking_code_data";
}

fs::path ProfileStore::path_for(const std::string& player_id) const { return directory_ / (player_id + ".json"); }

std::mutex& ProfileStore::lock_for(const std::string& player_id) {
    std::lock_guard guard(locks_guard_);
    auto& slot = locks_[player_id];
    if (!slot) slot = std::make_unique<std::mutex>();
    return *slot;
}

std::string ProfileStore::encode(const PlayerProfile& profile) {
    ordered_json doc = ordered_json::parse(profile_to_json(profile).dump());
    const std::string body = doc.dump();
    doc["checksum"] = crc32_tag(body);
    return doc.dump() + "\n";
}

PlayerProfile ProfileStore::decode(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw StoreError(StoreErrorKind::Corrupt, std::string("profile is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("checksum") || !doc.at("checksum").is_string())
        throw StoreError(StoreErrorKind::Corrupt, "profile has no checksum");
    const std::string stored = doc.at("checksum").get<std::string>();
    doc.erase("checksum");
    if (crc32_tag(doc.dump()) != stored) throw StoreError(StoreErrorKind::Corrupt, "profile checksum mismatch");
    try {
        return profile_from_json(json::parse(doc.dump()));
    } catch (const std::exception& e) {
        throw StoreError(StoreErrorKind::Corrupt, std::string("profile schema error: ") + e.what());
    }
}

void ProfileStore::save(const PlayerProfile& profile) {
    if (!valid_player_id(profile.player_id))
        throw StoreError(StoreErrorKind::InvalidId, "invalid player id '" + profile.player_id + "'");
    std::lock_guard guard(lock_for(profile.player_id));

    std::error_code ec;
    fs::create_directories(directory_, ec);
    if (ec) throw StoreError(StoreErrorKind::Io, "cannot create '" + directory_.string() + "': " + ec.message());

    const std::string bytes = encode(profile);
    const fs::path final_path = path_for(profile.player_id);
    const fs::path temp_path = directory_ / (profile.player_id + ".json.tmp");
    {
        Fd fd(::open(temp_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644));
        if (fd.get() < 0) throw StoreError(StoreErrorKind::Io, errno_text("cannot open", temp_path));
        std::size_t written = 0;
        while (written < bytes.size()) {
            const std::size_t n = std::min(chunk_size_, bytes.size() - written);
            write_all(fd.get(), bytes.data() + written, n, temp_path);
            written += n;
            if (fault_hook_) fault_hook_(SaveStage::Writing, written);
        }
        if (::fsync(fd.get()) != 0) throw StoreError(StoreErrorKind::Io, errno_text("fsync failed", temp_path));
    }
    if (fault_hook_) fault_hook_(SaveStage::BeforeRename, bytes.size());
    if (::rename(temp_path.c_str(), final_path.c_str()) != 0)
        throw StoreError(StoreErrorKind::Io, errno_text("rename failed", final_path));
    sync_directory(directory_);
    if (fault_hook_) fault_hook_(SaveStage::AfterRename, bytes.size());
}

bool ProfileStore::exists(const std::string& player_id) const {
    return valid_player_id(player_id) && fs::exists(path_for(player_id));
}

PlayerProfile ProfileStore::load(const std::string& player_id) const {
    if (!valid_player_id(player_id))
        throw StoreError(StoreErrorKind::InvalidId, "invalid player id '" + player_id + "'");
    const fs::path path = path_for(player_id);
    std::error_code ec;
    if (!fs::exists(path, ec)) {
        if (ec) throw StoreError(StoreErrorKind::Io, "cannot stat '" + path.string() + "': " + ec.message());
        throw StoreError(StoreErrorKind::NotFound, "no profile for '" + player_id + "'");
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StoreError(StoreErrorKind::Io, errno_text("cannot read", path));
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw StoreError(StoreErrorKind::Io, errno_text("read failed", path));
    PlayerProfile profile = decode(buffer.str());
    if (profile.player_id != player_id)
        throw StoreError(StoreErrorKind::Corrupt, "profile file belongs to '" + profile.player_id + "'");
    return profile;
}

}  // namespace cooking_code
