#ifndef QGRAV_CLI_COMMANDS_HPP
#define QGRAV_CLI_COMMANDS_HPP

#include <string>

#include "config.hpp"

namespace qgravcli {

// Library failure surfaced by a command, already mapped to an exit code
// (3 for numerical-tolerance failures, 2 for anything configuration-shaped).
struct CliError : std::runtime_error {
    CliError(const std::string& msg, int code) : std::runtime_error(msg), exit_code(code) {}
    int exit_code;
};

struct CommonOptions {
    std::string out_dir = "out";
    double tolerance = 0.0; // 0 = library default (1e-12)
    int convention = 0;     // 0 half, 1 unhalved
    long seed = 0;          // reserved; no stochastic paths yet
};

// Each command consumes its config schema (strict), writes its reports
// under out_dir, prints a short deterministic summary on stdout and
// returns the process exit code.
int cmd_qfim(Config cfg, const CommonOptions& opt);
int cmd_mz(Config cfg, const CommonOptions& opt);
int cmd_coupling(Config cfg, const CommonOptions& opt);
int cmd_power(Config cfg, const CommonOptions& opt);
int cmd_thg(Config cfg, const CommonOptions& opt);
int cmd_cumulants(Config cfg, const CommonOptions& opt);

} // namespace qgravcli

#endif
