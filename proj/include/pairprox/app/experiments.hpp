#pragma once

// Built-in reproduction targets for the two worked examples and their schedule sweeps.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pairprox/operators.hpp"
#include "pairprox/solvers.hpp"

namespace pairprox::app {

[[nodiscard]] Mat example1_kernel_v1();
[[nodiscard]] Mat example1_kernel_v2();

/// Root of the Example-2 operator refined by damped Newton from its approximate location.
[[nodiscard]] Vec example2_reference();

/// Reference point for a builtin problem, if it has one.
[[nodiscard]] std::optional<Vec> builtin_reference(const std::string& name);

inline constexpr double kReproduceTol = 1e-12;
inline constexpr std::size_t kReproduceMaxIter = 200;
/// Threshold used for the iterations-to column of comparison.csv.
inline constexpr double kComparisonTarget = 1e-6;

struct MemberConfig {
    std::string id;
    Operator problem;
    KernelSpec kernel;
    SolverConfig solver;
};

struct MemberResult {
    std::string id;
    std::optional<IterateTrace> trace;
    std::string error;  // empty on success
    std::optional<std::size_t> iterations_to_target;
    double final_error = 0.0;
};

[[nodiscard]] const std::vector<std::string>& reproduce_targets();
/// Throws PreconditionError for an unknown target.
[[nodiscard]] std::vector<MemberConfig> reproduce_members(const std::string& target);
/// Runs members concurrently; results come back in input order.
[[nodiscard]] std::vector<MemberResult> run_members(const std::vector<MemberConfig>& members);

/// Writes <id>.csv per member, comparison.csv and summary.txt into out_dir.
/// Returns the results. Solver errors are recorded per member.
std::vector<MemberResult> run_reproduce(const std::string& target, const std::filesystem::path& out_dir,
                                        bool plot = false);

[[nodiscard]] std::string comparison_csv(const std::vector<MemberResult>& results);

}  // namespace pairprox::app
