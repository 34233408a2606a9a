#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "cooking_code/progression.hpp"

namespace cooking_code {

struct PlayerProfile {
    std::string player_id;
    PlayerStats stats;
    long long created_at = 0;  // unix seconds
    long long updated_at = 0;
    friend bool operator==(const PlayerProfile&, const PlayerProfile&) = default;
};

nlohmann::json profile_to_json(const PlayerProfile& profile);
PlayerProfile profile_from_json(const nlohmann::json& doc);

enum class StoreErrorKind { NotFound, Io, Corrupt, InvalidId };

class StoreError : public std::runtime_error {
public:
    StoreError(StoreErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    StoreErrorKind kind() const noexcept { return kind_; }

private:
    StoreErrorKind kind_;
};

// Points in a save where a fault hook runs. Throwing from the hook abandons
// the save at that point, as a crash would.
enum class SaveStage {
    Writing,       // after each chunk reaches the temp file
    BeforeRename,  // temp file complete and synced
    AfterRename,
};

/// One checksummed JSON file per player. Writes go to a temp file that is
/// synced and renamed over the old profile, so a reader sees either the old
/// or the new file in full.
class ProfileStore {
public:
    using FaultHook = std::function<void(SaveStage stage, std::size_t bytes_written)>;

    explicit ProfileStore(std::filesystem::path directory);
    // COOKING_CODE_DATA_DIR, or ./cooking_code_data when unset.
    static std::filesystem::path directory_from_env();

    void save(const PlayerProfile& profile);
    PlayerProfile load(const std::string& player_id) const;
    bool exists(const std::string& player_id) const;

    const std::filesystem::path& directory() const noexcept { return directory_; }
    std::filesystem::path path_for(const std::string& player_id) const;

    void set_fault_hook(FaultHook hook) { fault_hook_ = std::move(hook); }
    void set_chunk_size(std::size_t bytes) { chunk_size_ = bytes == 0 ? 1 : bytes; }

    // Serialized file contents, checksum included.
    static std::string encode(const PlayerProfile& profile);
    static PlayerProfile decode(const std::string& text);  // throws StoreError(Corrupt)

private:
    std::mutex& lock_for(const std::string& player_id);

    std::filesystem::path directory_;
    FaultHook fault_hook_;
    std::size_t chunk_size_ = 4096;
    std::mutex locks_guard_;
    std::map<std::string, std::unique_ptr<std::mutex>> locks_;
};

bool valid_player_id(std::string_view id);

}  // namespace cooking_code
