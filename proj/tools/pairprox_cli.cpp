#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "pairprox/app/commands.hpp"
#include "pairprox/app/experiments.hpp"

int main(int argc, char** argv) {
    using namespace pairprox::app;
    CLI::App app{"pairprox: inclusion solvers built on monotone operator pairs"};
    app.require_subcommand(1);

    std::string config, out_dir;
    auto* solve = app.add_subcommand("solve", "run the inertial warped-resolvent method from a JSON config");
    solve->add_option("--config", config, "config file")->required();
    solve->add_option("--out", out_dir, "output directory (overrides output.dir)");

    KernelOptions kopts;
    std::string kernel_matrix, kernel_out, a1;
    auto* kernel = app.add_subcommand("kernel", "construct a kernel B making (A, B) a monotone pair");
    kernel->add_option("--matrix", kernel_matrix, "matrix CSV")->required();
    kernel->add_option("--method", kopts.method, "perturbation | symmetric | factored")
        ->required()
        ->check(CLI::IsMember({"perturbation", "symmetric", "factored"}));
    kernel->add_option("--a1", a1, "perturbation matrix CSV");
    kernel->add_option("--out", kernel_out, "output CSV")->required();
    kernel->add_option("--replacement", kopts.replacement, "value replacing zero spectral entries");
    kernel->add_flag("--unchecked", kopts.unchecked, "skip the perturbation hypothesis check");

    std::string cert_a, cert_b;
    auto* certify = app.add_subcommand("certify", "decide monotonicity of the linear pair (A, B)");
    certify->add_option("--a", cert_a, "A matrix CSV")->required();
    certify->add_option("--b", cert_b, "B matrix CSV")->required();

    std::string target, repro_out;
    bool plot = false;
    auto* reproduce = app.add_subcommand("reproduce", "run a built-in experiment");
    reproduce->add_option("target", target, "target name")->required()->check(CLI::IsMember(reproduce_targets()));
    reproduce->add_option("--out", repro_out, "output directory")->required();
    reproduce->add_flag("--plot", plot, "also write an SVG plot");

    std::string rate_trace;
    auto* rate = app.add_subcommand("rate", "fit a linear convergence rate");
    rate->add_option("--trace", rate_trace, "trace CSV or single-column series")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    if (*solve) {
        std::optional<std::filesystem::path> dir;
        if (!out_dir.empty()) dir = out_dir;
        return cmd_solve(config, dir, std::cout, std::cerr);
    }
    if (*kernel) {
        kopts.matrix = kernel_matrix;
        kopts.out = kernel_out;
        if (!a1.empty()) kopts.a1 = a1;
        return cmd_kernel(kopts, std::cout, std::cerr);
    }
    if (*certify) return cmd_certify(cert_a, cert_b, std::cout, std::cerr);
    if (*reproduce) return cmd_reproduce(target, repro_out, plot, std::cout, std::cerr);
    return cmd_rate(rate_trace, std::cout, std::cerr);
}
