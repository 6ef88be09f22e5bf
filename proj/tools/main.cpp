#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

namespace fs = std::filesystem;
using namespace qgravcli;

namespace {

#ifndef QGRAV_DEFAULT_PRESET_DIR
#define QGRAV_DEFAULT_PRESET_DIR ""
#endif

fs::path preset_path(const std::string& name) {
    std::vector<fs::path> roots;
    if (const char* env = std::getenv("QGRAV_PRESET_DIR")) roots.emplace_back(env);
    if (*QGRAV_DEFAULT_PRESET_DIR) roots.emplace_back(QGRAV_DEFAULT_PRESET_DIR);
    roots.emplace_back("presets");
    for (const fs::path& root : roots) {
        const fs::path candidate = root / (name + ".ini");
        if (fs::exists(candidate)) return candidate;
    }
    throw ConfigError("preset '" + name + "' not found (set QGRAV_PRESET_DIR)");
}

struct Cli {
    std::string config_file;
    std::string preset;
    CommonOptions opt;

    Config load() const {
        if (!config_file.empty() && !preset.empty())
            throw ConfigError("give either a config file or --preset, not both");
        if (!preset.empty()) return Config::parse_file(preset_path(preset).string());
        if (!config_file.empty()) return Config::parse_file(config_file);
        return Config::parse_string("", "<defaults>");
    }
};

void add_common(CLI::App* cmd, Cli& cli) {
    cmd->add_option("config", cli.config_file, "config file (INI with unit suffixes)");
    cmd->add_option("--preset,-p", cli.preset, "named preset (e.g. ce-450, ce-1000)");
    cmd->add_option("--out,-o", cli.opt.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--tolerance", cli.opt.tolerance,
                    "truncation tolerance (default: library 1e-12)");
    cmd->add_option("--seed", cli.opt.seed, "reserved; no stochastic paths yet");
    cmd->add_option_function<std::string>(
           "--convention",
           [&cli](const std::string& v) {
               if (v == "half")
                   cli.opt.convention = 0;
               else if (v == "unhalved")
                   cli.opt.convention = 1;
               else
                   throw CLI::ValidationError("--convention must be half or unhalved");
           },
           "composed-generator convention (half|unhalved)")
        ->default_str("half");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"gravitational Kerr-effect metrology workbench"};
    app.require_subcommand(1);

    Cli cli;
    int (*run)(Config, const CommonOptions&) = nullptr;

    CLI::App* qfim = app.add_subcommand("qfim", "Fisher-information sweeps and bounds");
    add_common(qfim, cli);
    qfim->callback([&] { run = cmd_qfim; });

    CLI::App* mz = app.add_subcommand("mz", "interferometer outcome tables and CFI");
    add_common(mz, cli);
    mz->callback([&] { run = cmd_mz; });

    CLI::App* coupling = app.add_subcommand("coupling", "self-interaction strength");
    add_common(coupling, cli);
    coupling->callback([&] { run = cmd_coupling; });

    CLI::App* power = app.add_subcommand("power", "power budgets and feasibility");
    add_common(power, cli);
    power->callback([&] { run = cmd_power; });

    CLI::App* thg = app.add_subcommand("thg", "third-harmonic sensitivity scaling");
    add_common(thg, cli);
    thg->callback([&] { run = cmd_thg; });

    CLI::App* cumulants = app.add_subcommand("cumulants", "quadrature cumulants");
    add_common(cumulants, cli);
    cumulants->callback([&] { run = cmd_cumulants; });

    CLI11_PARSE(app, argc, argv);

    try {
        return run(cli.load(), cli.opt);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const CliError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
