#pragma once

// JSON run configuration for `pairprox solve`. Schema in README.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "pairprox/operators.hpp"
#include "pairprox/solvers.hpp"

namespace pairprox::app {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct KernelChoice {
    enum class Type { matrix, identity, construct };
    Type type = Type::identity;
    std::filesystem::path file;  // matrix
    std::string method;          // construct: perturbation | symmetric | factored
    std::filesystem::path a1;    // construct/perturbation
    double replacement = 1.0;
    bool unchecked = false;
};

struct OutputOptions {
    std::optional<std::filesystem::path> dir;
    bool csv = true;
    bool report = true;
    bool plot = false;
};

struct RunConfig {
    Operator problem;
    std::optional<Vec> reference;
    std::string problem_label;
    KernelChoice kernel;
    SolverConfig solver;
    OutputOptions output;
    std::uint64_t seed = 0;
};

/// Relative paths inside the file resolve against the file's directory.
/// Throws ConfigError (and IoError for unreadable referenced files).
[[nodiscard]] RunConfig load_run_config(const std::filesystem::path& path);
[[nodiscard]] RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir);

/// May throw HypothesisViolated for a checked perturbation construction.
[[nodiscard]] KernelSpec build_kernel(const KernelChoice& choice, const Operator& problem);

[[nodiscard]] Schedule schedule_from_json_text(const std::string& json_text);

}  // namespace pairprox::app
