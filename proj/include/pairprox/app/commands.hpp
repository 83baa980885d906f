#pragma once

// Subcommand bodies. Each returns the process exit code and writes
// human-readable output to `out` and diagnostics to `err`.

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace pairprox::app {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitMaxIter = 2,
    kExitSolver = 3,
    kExitHypothesis = 4,
    kExitNotMonotone = 5,
    kExitInconclusive = 6,
};

/// `out_dir` overrides output.dir from the config.
int cmd_solve(const std::filesystem::path& config, const std::optional<std::filesystem::path>& out_dir,
              std::ostream& out, std::ostream& err);

struct KernelOptions {
    std::filesystem::path matrix;
    std::string method;
    std::optional<std::filesystem::path> a1;
    std::filesystem::path out;
    double replacement = 1.0;
    bool unchecked = false;
};

int cmd_kernel(const KernelOptions& opts, std::ostream& out, std::ostream& err);

int cmd_certify(const std::filesystem::path& a, const std::filesystem::path& b, std::ostream& out,
                std::ostream& err);

int cmd_reproduce(const std::string& target, const std::filesystem::path& out_dir, bool plot, std::ostream& out,
                  std::ostream& err);

/// Accepts a trace CSV (uses err_to_ref when every row has it, else residual)
/// or a plain single-column series.
int cmd_rate(const std::filesystem::path& trace, std::ostream& out, std::ostream& err);

}  // namespace pairprox::app
