#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cooking_code/cli.hpp"
#include "cooking_code/replay.hpp"
#include "support.hpp"

using namespace cooking_code;
using nlohmann::json;

namespace {

const std::string kBin = COOKING_CODE_BIN;
const std::string kData = COOKING_CODE_DATA;

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Run run(const std::string& args, const testing::TempDir& dir, const std::string& env = "") {
    const auto err_path = dir.path() / "stderr.txt";
    const std::string cmd = env + " " + kBin + " " + args + " 2>" + err_path.string();
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    Run r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_path);
    return r;
}

std::vector<json> lines(const std::string& text) {
    std::vector<json> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(json::parse(line));
    return out;
}

std::string write(const testing::TempDir& dir, const std::string& name, const std::string& text) {
    const auto p = dir.path() / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
}

const std::string kFig2Config = kData + "/config/fig2.json";
const std::string kFig2Script = kData + "/scripts/fig2_correct.script";
const std::string kAssembly = kData + "/scripts/fig2_assembly.stations";

}  // namespace

TEST_CASE("simulate: shipped conditional script") {
    testing::TempDir dir;
    const Run r = run("simulate --config " + kFig2Config + " --script " + kFig2Script + " --seed 7", dir);
    REQUIRE(r.code == 0);
    const auto events = lines(r.out);
    REQUIRE_FALSE(events.empty());
    CHECK(events.back().at("type") == "day_summary");
    CHECK(events.back().at("day_score") == 15);
    CHECK(r.err.empty());

    // Same bytes as the library path.
    cli::SimulateOptions options;
    options.common.config_path = kFig2Config;
    options.common.seed = 7;
    options.script_path = kFig2Script;
    std::ostringstream out, err;
    CHECK(cli::simulate(options, out, err) == 0);
    CHECK(out.str() == r.out);

    // And the same as feeding the script to a Session by hand.
    GameConfig config = load_game_config(kFig2Config);
    config.seed = 7;
    Session session(config);
    auto manual = session.start();
    for (const auto& line : cli::read_action_script(kFig2Script)) {
        auto e = session.handle_line(line);
        manual.insert(manual.end(), e.begin(), e.end());
    }
    CHECK(event_stream_text(manual) == r.out);

    CHECK(run("simulate --config " + kFig2Config + " --script " + kFig2Script + " --seed 7", dir).out == r.out);
}

TEST_CASE("simulate: record and replay") {
    testing::TempDir dir;
    const std::string log = (dir.path() / "session.log").string();
    const Run r = run("simulate --config " + kFig2Config + " --script " + kFig2Script + " --record " + log, dir);
    REQUIRE(r.code == 0);
    const Run replayed = run("replay --log " + log, dir);
    CHECK(replayed.code == 0);
    CHECK(replayed.out == r.out);

    std::string text = slurp(log);
    text.replace(text.find("\"seed\":7"), 8, "\"seed\":9");
    const std::string bad = write(dir, "tampered.log", text);
    const Run rejected = run("replay --log " + bad, dir);
    CHECK(rejected.code == cli::kExitReplayMismatch);
    CHECK(rejected.out.empty());
}

TEST_CASE("simulate: edge cases and exit codes") {
    testing::TempDir dir;
    const Run empty = run("simulate --script " + write(dir, "empty.script", ""), dir);
    CHECK(empty.code == 0);
    const auto events = lines(empty.out);
    REQUIRE(events.size() == 2);
    CHECK(events[0].at("type") == "session_started");
    CHECK(events[1].at("type") == "day_started");

    const Run unknown = run("simulate --script " +
                                write(dir, "bad.script", R"({"seq":1,"type":"grab","ingredient":"tomate"})" "\n"),
                            dir);
    CHECK(unknown.code == cli::kExitScript);
    CHECK_FALSE(unknown.err.empty());
    CHECK(unknown.out.empty());

    const Run gap = run("simulate --script " + write(dir, "gap.script", "{\"seq\":1,\"type\":\"place\"}\n"
                                                                         "{\"seq\":3,\"type\":\"place\"}\n"),
                        dir);
    CHECK(gap.code == cli::kExitScript);

    const Run config = run("simulate --config " + write(dir, "bad.json", R"({"cook_ticks":-1})") + " --script " +
                               kFig2Script,
                           dir);
    CHECK(config.code == cli::kExitConfig);

    CHECK(run("simulate", dir).code == cli::kExitUsage);
    CHECK(run("bake", dir).code == cli::kExitUsage);
}

TEST_CASE("generate-orders") {
    testing::TempDir dir;
    const Run a = run("generate-orders --difficulty 1 --count 10 --seed 42", dir);
    const Run b = run("generate-orders --difficulty 1 --count 10 --seed 42", dir);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto corpus = lines(a.out);
    CHECK(corpus.size() == 10);
    CHECK(a.out.find("\"if\"") == std::string::npos);
    CHECK(a.out.find("\"repeat\"") == std::string::npos);

    SplitMix64 rng(42);
    for (const auto& doc : corpus)
        CHECK(doc == ast_to_json(*generate_order(Difficulty(1), EngineConfig::default_inventory(), rng)));

    const Run level2 = run("generate-orders --difficulty 2 --count 50 --seed 1", dir);
    CHECK(level2.out.find("\"repeat\"") == std::string::npos);
    CHECK(run("generate-orders --difficulty 1 --count 0", dir).code == cli::kExitUsage);
    CHECK(run("generate-orders --difficulty 5 --count 3", dir).code == cli::kExitUsage);
    const std::string no_bread = write(dir, "inv.json", R"({"pan_inferior":0,"carne":4})");
    CHECK(run("generate-orders --difficulty 1 --count 3 --inventory " + no_bread, dir).code != 0);
}

TEST_CASE("validate") {
    testing::TempDir dir;
    const std::string order = write(dir, "fig4.order", testing::fig4_text());
    const std::string two = write(dir, "two.json", R"([{"ingredient":"pan_inferior"},
        {"ingredient":"carne","cook":"cooked"},{"ingredient":"carne","cook":"cooked"},{"ingredient":"pan_superior"}])");
    const std::string one = write(dir, "one.json", R"([{"ingredient":"pan_inferior"},
        {"ingredient":"carne","cook":"cooked"},{"ingredient":"pan_superior"}])");

    const Run good = run("validate --order " + order + " --stack " + two, dir);
    CHECK(good.code == 0);
    CHECK(lines(good.out).at(0).at("category") == "correct");

    const Run single = run("validate --order " + order + " --stack " + one + " --lang en", dir);
    CHECK(single.code == 4);
    const GradeRequest request{parse(testing::fig4_text()), EngineConfig::default_inventory(),
                               stack_from_json(json::parse(slurp(one)))};
    CHECK(lines(single.out).at(0) == report_to_json(grade(request, Language::English)));

    const std::string ast = write(dir, "fig4.json", ast_to_json(parse(testing::fig4_text())).dump());
    CHECK(run("validate --order " + ast + " --stack " + two, dir).code == 0);

    const Run malformed = run("validate --order " + write(dir, "bad.order", "PONER pan_inferior\nSI HAY") +
                                  " --stack " + two,
                              dir);
    CHECK(malformed.code == 1);
    CHECK(malformed.err.find("line 2") != std::string::npos);

    const std::string fig2 = write(dir, "fig2.order", testing::fig2_text());
    const std::string no_cheese = write(dir, "snap.json", R"({"pan_inferior":3,"pan_superior":3,"carne":3})");
    const std::string plain = write(dir, "plain.json", R"([{"ingredient":"pan_inferior"},
        {"ingredient":"carne","cook":"cooked"},{"ingredient":"pan_superior"}])");
    CHECK(run("validate --order " + fig2 + " --stack " + plain + " --snapshot " + no_cheese, dir).code == 0);
    const Run branch = run("validate --order " + fig2 + " --stack " + plain, dir);
    CHECK(branch.code == 4);
    CHECK(lines(branch.out).at(0).at("category") == "wrong_conditional_branch");
}

TEST_CASE("layout-cost") {
    testing::TempDir dir;
    const Run both = run("layout-cost --layout tray_front --layout tray_side --script " + kAssembly, dir);
    REQUIRE(both.code == 0);
    const auto out = lines(both.out);
    REQUIRE(out.size() == 3);
    const double front = out[0].at("travel_cost").get<double>();
    const double side = out[1].at("travel_cost").get<double>();
    CHECK(front < side);
    CHECK(out[2].at("delta").get<double>() == doctest::Approx(side - front).epsilon(1e-12));
    CHECK(front == travel_cost(cli::read_station_script(kAssembly), layout_preset("tray_front")));

    const Run single = run("layout-cost --layout tray_front --script " + write(dir, "one.stations", "plate\n"), dir);
    CHECK(lines(single.out).at(0).at("travel_cost") == 0.0);
    CHECK(run("layout-cost --layout tray_top --script " + kAssembly, dir).code == cli::kExitUsage);
    CHECK(run("layout-cost --layout tray_front --script " + write(dir, "x.stations", "freezer\n"), dir).code ==
          cli::kExitUsage);
}

TEST_CASE("shipped data matches the built-in presets") {
    for (const std::string name : {"tray_front", "tray_side"})
        CHECK(cli::resolve_layout(kData + "/layouts/" + name + ".json") == layout_preset(name));
    const GameConfig shipped = load_game_config(kData + "/config/default.json");
    CHECK(game_config_to_json(shipped) == game_config_to_json(GameConfig{}));
    CHECK(catalog_from_json(json::parse(slurp(kData + "/achievements.json"))) == default_catalog());
}

TEST_CASE("serve --stdio speaks the same protocol") {
    testing::TempDir dir;
    const std::string input = write(dir, "in.ndjson", slurp(kFig2Script));
    const Run r = run("serve --stdio --config " + kFig2Config + " < " + input, dir,
                      "COOKING_CODE_DATA_DIR=" + (dir.path() / "profiles").string());
    CHECK(r.code == 0);
    const auto events = lines(r.out);
    CHECK(events.back().at("day_score") == 15);
    CHECK(std::filesystem::exists(dir.path() / "profiles" / "fig2_player.json"));
}
