#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cooking_code/cli.hpp"

using namespace cooking_code;

namespace {

struct SharedFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string lang;
};

void add_shared(CLI::App* cmd, SharedFlags& flags) {
    cmd->add_option("--config", flags.config, "game config JSON")->check(CLI::ExistingFile);
    cmd->add_option("--seed", flags.seed, "64-bit seed");
    cmd->add_option("--lang", flags.lang, "es or en")->check(CLI::IsMember({"es", "en"}));
}

cli::CommonOptions common(const SharedFlags& flags) {
    cli::CommonOptions out;
    if (!flags.config.empty()) out.config_path = flags.config;
    out.seed = flags.seed;
    if (!flags.lang.empty()) out.language = language_from_code(flags.lang);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cooking_code: headless kitchen, graders and session server"};
    app.require_subcommand(1);

    SharedFlags shared;

    cli::SimulateOptions sim;
    std::string record;
    auto* simulate = app.add_subcommand("simulate", "run an action script through one in-process session");
    add_shared(simulate, shared);
    simulate->add_option("--script", sim.script_path, "one command JSON per line")->required();
    simulate->add_option("--record", record, "write a replayable session log here");

    cli::GenerateOptions gen;
    std::string inventory;
    auto* generate = app.add_subcommand("generate-orders", "print generated orders as JSON ASTs");
    add_shared(generate, shared);
    generate->add_option("--difficulty", gen.difficulty, "level 1..3")->required();
    generate->add_option("--count", gen.count, "number of orders")->required();
    generate->add_option("--inventory", inventory, "snapshot JSON")->check(CLI::ExistingFile);

    cli::ValidateOptions val;
    std::string snapshot;
    auto* validate = app.add_subcommand("validate", "grade a stack against an order");
    add_shared(validate, shared);
    validate->add_option("--order", val.order_path, "order text or JSON AST")->required();
    validate->add_option("--stack", val.stack_path, "delivered stack JSON")->required();
    validate->add_option("--snapshot", snapshot, "inventory snapshot JSON");

    cli::LayoutCostOptions lay;
    auto* layout = app.add_subcommand("layout-cost", "travel distance of a station script");
    layout->add_option("--layout", lay.layouts, "preset name or layout JSON; give two to compare")->required();
    layout->add_option("--script", lay.script_path, "one station per line")->required();

    cli::ServeOptions srv;
    auto* serve = app.add_subcommand("serve", "run the session server");
    add_shared(serve, shared);
    serve->add_option("--port", srv.port, "listen port (0 picks one)");
    serve->add_option("--address", srv.address, "listen address");
    serve->add_flag("--stdio", srv.stdio, "speak the protocol on stdin/stdout instead");

    cli::ReplayOptions rep;
    auto* replay = app.add_subcommand("replay", "re-run a recorded session log");
    replay->add_option("--log", rep.log_path, "session log")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kExitUsage;
    }

    if (simulate->parsed()) {
        sim.common = common(shared);
        if (!record.empty()) sim.record_path = record;
        return cli::simulate(sim, std::cout, std::cerr);
    }
    if (generate->parsed()) {
        gen.common = common(shared);
        if (!inventory.empty()) gen.inventory_path = inventory;
        return cli::generate_orders(gen, std::cout, std::cerr);
    }
    if (validate->parsed()) {
        val.common = common(shared);
        if (!snapshot.empty()) val.snapshot_path = snapshot;
        return cli::validate(val, std::cout, std::cerr);
    }
    if (layout->parsed()) return cli::layout_cost(lay, std::cout, std::cerr);
    if (serve->parsed()) {
        srv.common = common(shared);
        return cli::serve(srv, std::cin, std::cout, std::cerr);
    }
    if (replay->parsed()) return cli::replay(rep, std::cout, std::cerr);
    return cli::kExitUsage;
}
