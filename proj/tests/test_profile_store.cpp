#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <fstream>

#include <nlohmann/json.hpp>

#include "cooking_code/checksum.hpp"
#include "cooking_code/profile_store.hpp"
#include "support.hpp"

using namespace cooking_code;

namespace {

PlayerProfile profile(const std::string& id, int version) {
    const OrderAst order = parse(testing::fig2_text());
    GradeReport r;
    r.score_delta = 15;
    PlayerStats stats = begin_day({}, 0);
    for (int n = 0; n < version; ++n) stats = record_grade(r, order, std::move(stats), default_catalog(), {0, n}).stats;
    return {id, stats, 1'700'000'000, 1'700'000'000 + version};
}

struct Crash {};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("save then load round-trips") {
    testing::TempDir dir;
    ProfileStore store(dir.path());
    const PlayerProfile p = profile("ana_01", 3);
    store.save(p);
    CHECK(store.exists("ana_01"));
    CHECK(store.load("ana_01") == p);
    CHECK(ProfileStore::decode(ProfileStore::encode(p)) == p);

    const std::string text = slurp(store.path_for("ana_01"));
    const auto doc = nlohmann::ordered_json::parse(text);
    CHECK(std::prev(doc.end()).key() == "checksum");
    CHECK(doc.at("checksum").get<std::string>().rfind("crc32:", 0) == 0);
}

TEST_CASE("load errors are distinct") {
    testing::TempDir dir;
    ProfileStore store(dir.path());
    try {
        (void)store.load("nobody");
        FAIL("expected NotFound");
    } catch (const StoreError& e) {
        CHECK(e.kind() == StoreErrorKind::NotFound);
    }
    try {
        (void)store.load("../etc");
        FAIL("expected InvalidId");
    } catch (const StoreError& e) {
        CHECK(e.kind() == StoreErrorKind::InvalidId);
    }

    store.save(profile("bea", 1));
    std::string text = slurp(store.path_for("bea"));
    const auto pos = text.find("\"xp\":15");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 7, "\"xp\":99");
    std::ofstream(store.path_for("bea"), std::ios::binary | std::ios::trunc) << text;
    try {
        (void)store.load("bea");
        FAIL("expected Corrupt");
    } catch (const StoreError& e) {
        CHECK(e.kind() == StoreErrorKind::Corrupt);
    }

    std::ofstream(store.path_for("bea"), std::ios::binary | std::ios::trunc) << text.substr(0, text.size() / 2);
    CHECK_THROWS_AS(store.load("bea"), StoreError);

    // A file where the data directory should be: I/O, not corruption.
    const auto blocked = dir.path() / "blocked";
    std::ofstream(blocked) << "x";
    ProfileStore broken(blocked);
    try {
        broken.save(profile("bea", 1));
        FAIL("expected Io");
    } catch (const StoreError& e) {
        CHECK(e.kind() == StoreErrorKind::Io);
    }
}

TEST_CASE("interrupted saves leave the old or the new profile") {
    testing::TempDir dir;
    ProfileStore store(dir.path());
    store.set_chunk_size(32);
    store.save(profile("cleo", 0));
    SplitMix64 rng(2024);
    PlayerProfile last = profile("cleo", 0);
    int kept_old = 0;
    int took_new = 0;
    for (int n = 1; n <= 100; ++n) {
        const PlayerProfile next = profile("cleo", n);
        const auto size = ProfileStore::encode(next).size();
        const auto stage = rng.below(3);
        const auto cut = 1 + rng.below(size / 32 + 1);
        std::size_t chunks = 0;
        store.set_fault_hook([&](SaveStage s, std::size_t) {
            if (s == SaveStage::Writing && stage == 0 && ++chunks == cut) throw Crash{};
            if (s == SaveStage::BeforeRename && stage == 1) throw Crash{};
            if (s == SaveStage::AfterRename && stage == 2) throw Crash{};
        });
        try {
            store.save(next);
        } catch (const Crash&) {
        }
        store.set_fault_hook({});
        const PlayerProfile loaded = store.load("cleo");
        if (loaded == next) {
            ++took_new;
            last = next;
        } else {
            REQUIRE(loaded == last);
            ++kept_old;
        }
    }
    CHECK(kept_old > 0);
    CHECK(took_new > 0);
}

TEST_CASE("a process killed mid-save never leaves a torn profile") {
    testing::TempDir dir;
    ProfileStore store(dir.path());
    store.set_chunk_size(16);
    store.save(profile("dani", 0));
    for (int n = 1; n <= 20; ++n) {
        const PlayerProfile next = profile("dani", n);
        const pid_t pid = ::fork();
        REQUIRE(pid >= 0);
        if (pid == 0) {
            const std::size_t cut = static_cast<std::size_t>(n) * 7;
            store.set_fault_hook([cut](SaveStage s, std::size_t written) {
                if ((s == SaveStage::Writing && written >= cut) || s == SaveStage::BeforeRename) ::_exit(9);
            });
            store.save(next);
            ::_exit(0);
        }
        int status = 0;
        ::waitpid(pid, &status, 0);
        CHECK(WIFEXITED(status));
        const PlayerProfile loaded = store.load("dani");
        CHECK(loaded == profile("dani", 0));
    }
    store.save(profile("dani", 5));
    CHECK(store.load("dani") == profile("dani", 5));
}

TEST_CASE("checksum tag") {
    // zlib crc32 of "123456789" is cbf43926.
    CHECK(crc32_tag("123456789") == "crc32:cbf43926");
    CHECK(crc32_tag("") == "crc32:00000000");
}

TEST_CASE("player ids") {
    CHECK(valid_player_id("ana-01_X"));
    CHECK_FALSE(valid_player_id(""));
    CHECK_FALSE(valid_player_id("a/b"));
    CHECK_FALSE(valid_player_id(std::string(65, 'a')));
}
