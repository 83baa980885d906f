#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <sys/wait.h>

#include "pairprox/app/commands.hpp"
#include "pairprox/app/config.hpp"
#include "pairprox/app/experiments.hpp"
#include "pairprox/app/trace_csv.hpp"
#include "pairprox/csv.hpp"
#include "pairprox/solvers.hpp"

using namespace pairprox;
using namespace pairprox::app;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("pairprox_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        write_matrix_csv(dir_ / "a1.csv", Mat{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
        write_vector_csv(dir_ / "b1.csv", Vec{14, 32, 50});
        write_matrix_csv(dir_ / "v1.csv", Mat{{2, 2, 3}, {4, 5, 6}, {7, 8, 9}});
        write_matrix_csv(dir_ / "e11.csv", Mat{{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
        write_matrix_csv(dir_ / "eye.csv", Mat::identity(3));
        write_matrix_csv(dir_ / "zero2.csv", Mat(2, 2));
        write_vector_csv(dir_ / "ones2.csv", Vec{1, 1});
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path config(const std::string& name, const std::string& json) {
        write_text_file(dir_ / name, json);
        return dir_ / name;
    }

    int solve(const fs::path& cfg, const std::string& out = "out") {
        out_.str("");
        err_.str("");
        return cmd_solve(cfg, dir_ / out, out_, err_);
    }

    fs::path dir_;
    std::ostringstream out_, err_;
};

const char* kFirstExample = R"({
  "problem": {"type": "affine", "A": "a1.csv", "b": "b1.csv"},
  "kernel": {"type": "matrix", "file": "v1.csv"},
  "schedules": {"gamma": {"kind": "offset_inverse", "a": 0.1, "b": 0.3, "c": 10},
                "alpha": {"kind": "capped_ramp", "cap": 0.3, "c": 10}},
  "init": {"x0": [-0.5, -0.5, -0.5], "x1": [0.7, 0.7, 0.7]},
  "tolerances": {"step": 1e-12, "residual": 1e-12},
  "max_iter": 500,
  "reference": [1, 2, 3],
  "output": {"plot": true}
})";

int run_binary(const std::string& args) {
    const std::string cmd = std::string(PAIRPROX_CLI) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_F(CliTest, SolveFirstExampleWritesArtifacts) {
    EXPECT_EQ(solve(config("c.json", kFirstExample)), kExitOk) << err_.str();
    const std::string csv = read_text_file(dir_ / "out" / "trace.csv");
    const auto rows = parse_trace_csv(csv);
    ASSERT_FALSE(rows.empty());
    EXPECT_LE(rows.back().residual, 1e-9);
    // the limit lies on the solution line but not at (1,2,3)
    ASSERT_TRUE(rows.back().err_to_ref.has_value());
    EXPECT_NEAR(*rows.back().err_to_ref, 0.4086, 1e-3);
    const std::string report = read_text_file(dir_ / "out" / "report.txt");
    for (const char* key : {"termination: ", "schedules_valid: true", "schedule_theory_satisfied: true", "rho_hat: ",
                            "pair_status: not_monotone", "dist_to_solution_set: "}) {
        EXPECT_NE(report.find(key), std::string::npos) << key;
    }
    EXPECT_TRUE(fs::exists(dir_ / "out" / "trace.svg"));
}

TEST_F(CliTest, SolveTraceRoundTripsExactly) {
    const auto cfg = load_run_config(config("c.json", kFirstExample));
    const auto trace = gippa_run(cfg.problem, build_kernel(cfg.kernel, cfg.problem), cfg.solver);
    ASSERT_EQ(solve(dir_ / "c.json"), kExitOk);
    const auto rows = parse_trace_csv(read_text_file(dir_ / "out" / "trace.csv"));
    ASSERT_EQ(rows.size(), trace.iterations());
    const auto errs = trace.errors_to_reference();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].n, trace.records[i].n);
        EXPECT_EQ(rows[i].step_gap, trace.records[i].step_gap);
        EXPECT_EQ(rows[i].v_gap, trace.records[i].v_gap);
        EXPECT_EQ(rows[i].residual, trace.records[i].residual);
        EXPECT_EQ(*rows[i].err_to_ref, errs[i]);
    }
}

TEST_F(CliTest, SolveSingularEverywhereIsSolverError) {
    const auto c = config("c.json", R"({
      "problem": {"type": "affine", "A": "zero2.csv", "b": "ones2.csv"},
      "kernel": {"type": "matrix", "file": "zero2.csv"},
      "schedules": {"gamma": 1, "alpha": 0},
      "init": {"x0": [0, 0], "x1": [0, 0]}
    })");
    EXPECT_EQ(solve(c), kExitSolver);
    EXPECT_NE(err_.str().find("solver error"), std::string::npos);
}

TEST_F(CliTest, SolveStartingAtZeroStopsAfterOneIteration) {
    const auto c = config("c.json", R"({
      "problem": {"type": "builtin", "name": "example1"},
      "kernel": {"type": "matrix", "file": "v1.csv"},
      "schedules": {"gamma": 0.5, "alpha": 0.2},
      "init": {"x0": [1, 2, 3], "x1": [1, 2, 3]}
    })");
    EXPECT_EQ(solve(c), kExitOk);
    const auto rows = parse_trace_csv(read_text_file(dir_ / "out" / "trace.csv"));
    EXPECT_EQ(rows.size(), 1u);
}

TEST_F(CliTest, SolveIterationCapGivesExitTwo) {
    const auto c = config("c.json", R"({
      "problem": {"type": "builtin", "name": "example2"},
      "kernel": {"type": "identity"},
      "schedules": {"gamma": 0.01, "alpha": 0},
      "init": {"x0": [2, -2, 1], "x1": [1.5, -1.5, 0.5]},
      "max_iter": 3
    })");
    EXPECT_EQ(solve(c), kExitMaxIter);
    EXPECT_EQ(parse_trace_csv(read_text_file(dir_ / "out" / "trace.csv")).size(), 3u);
}

TEST_F(CliTest, SolveConfigErrors) {
    EXPECT_EQ(solve(config("bad.json", "{ not json")), kExitConfig);
    EXPECT_EQ(solve(dir_ / "missing.json"), kExitConfig);
    EXPECT_EQ(solve(config("nofile.json", R"({"problem": {"type": "affine", "A": "nope.csv", "b": "b1.csv"},
      "schedules": {"gamma": 1, "alpha": 0}, "init": {"x0": [0,0,0], "x1": [0,0,0]}})")),
              kExitConfig);
    EXPECT_EQ(solve(config("dims.json", R"({"problem": {"type": "affine", "A": "a1.csv", "b": "b1.csv"},
      "schedules": {"gamma": 1, "alpha": 0}, "init": {"x0": [0,0], "x1": [0,0,0]}})")),
              kExitConfig);
    EXPECT_EQ(solve(config("kind.json", R"({"problem": {"type": "builtin", "name": "example1"},
      "schedules": {"gamma": {"kind": "wavy"}, "alpha": 0}, "init": {"x0": [0,0,0], "x1": [0,0,0]}})")),
              kExitConfig);
    EXPECT_EQ(solve(config("neg.json", R"({"problem": {"type": "builtin", "name": "example1"},
      "schedules": {"gamma": -1, "alpha": 0}, "init": {"x0": [0,0,0], "x1": [0,0,0]}})")),
              kExitConfig);
}

TEST_F(CliTest, SolveWithViolatedPerturbationHypothesis) {
    const auto c = config("c.json", R"({
      "problem": {"type": "affine", "A": "a1.csv", "b": "b1.csv"},
      "kernel": {"type": "construct", "method": "perturbation", "a1": "e11.csv"},
      "schedules": {"gamma": 1, "alpha": 0},
      "init": {"x0": [0, 0, 0], "x1": [0, 0, 0]}
    })");
    EXPECT_EQ(solve(c), kExitHypothesis);
    EXPECT_NE(err_.str().find("witness"), std::string::npos);
}

TEST_F(CliTest, KernelFactoredOnRankDeficientMatrix) {
    std::ostringstream out, err;
    KernelOptions o{dir_ / "a1.csv", "factored", std::nullopt, dir_ / "k.csv"};
    EXPECT_EQ(cmd_kernel(o, out, err), kExitOk);
    EXPECT_NE(out.str().find("status: monotone"), std::string::npos);
    const Mat b = read_matrix_csv(dir_ / "k.csv");
    EXPECT_GT(std::abs(det(b)), 1e-10);
    const std::string meta = read_text_file(dir_ / "k.csv.meta");
    EXPECT_EQ(meta.rfind("provenance=factored;tau=", 0), 0u);
}

TEST_F(CliTest, KernelSymmetricDiagonal) {
    write_matrix_csv(dir_ / "d.csv", Mat{{2, 0}, {0, 0}});
    std::ostringstream out, err;
    EXPECT_EQ(cmd_kernel({dir_ / "d.csv", "symmetric", std::nullopt, dir_ / "k.csv"}, out, err), kExitOk);
    EXPECT_LE(norm_max(read_matrix_csv(dir_ / "k.csv") - Mat{{2, 0}, {0, 1}}), 1e-15);
}

TEST_F(CliTest, KernelPerturbationViolation) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_kernel({dir_ / "a1.csv", "perturbation", dir_ / "e11.csv", dir_ / "k.csv"}, out, err),
              kExitHypothesis);
    EXPECT_NE(out.str().find("witness: ("), std::string::npos);
    EXPECT_FALSE(fs::exists(dir_ / "k.csv"));
    KernelOptions forced{dir_ / "a1.csv", "perturbation", dir_ / "e11.csv", dir_ / "k.csv"};
    forced.unchecked = true;
    EXPECT_EQ(cmd_kernel(forced, out, err), kExitOk);
}

TEST_F(CliTest, KernelRejectsNonSquare) {
    write_matrix_csv(dir_ / "r.csv", Mat(2, 3));
    std::ostringstream out, err;
    EXPECT_EQ(cmd_kernel({dir_ / "r.csv", "factored", std::nullopt, dir_ / "k.csv"}, out, err), kExitConfig);
}

TEST_F(CliTest, CertifyExitCodes) {
    std::ostringstream out, err;
    EXPECT_EQ(cmd_certify(dir_ / "eye.csv", dir_ / "eye.csv", out, err), kExitOk);
    out.str("");
    EXPECT_EQ(cmd_certify(dir_ / "a1.csv", dir_ / "v1.csv", out, err), kExitNotMonotone);
    EXPECT_NE(out.str().find("witness: "), std::string::npos);
    EXPECT_EQ(cmd_certify(dir_ / "a1.csv", dir_ / "zero2.csv", out, err), kExitConfig);
    EXPECT_EQ(cmd_certify(dir_ / "nope.csv", dir_ / "eye.csv", out, err), kExitConfig);
}

TEST_F(CliTest, RateOfGeometricSeries) {
    std::string s;
    for (int n = 0; n < 30; ++n) s += format_double(std::pow(0.5, n)) + "\n";
    write_text_file(dir_ / "g.csv", s);
    std::ostringstream out, err;
    EXPECT_EQ(cmd_rate(dir_ / "g.csv", out, err), kExitOk);
    EXPECT_NE(out.str().find("rho_hat: 0.5\n"), std::string::npos) << out.str();
    write_text_file(dir_ / "short.csv", "1\n0.5\n");
    EXPECT_EQ(cmd_rate(dir_ / "short.csv", out, err), kExitConfig);
}

TEST_F(CliTest, RateReadsTraceCsv) {
    ASSERT_EQ(solve(config("c.json", R"({
      "problem": {"type": "builtin", "name": "example2"},
      "kernel": {"type": "matrix", "file": "diag.csv"},
      "schedules": {"gamma": 0.5, "alpha": {"kind": "capped_ramp", "cap": 0.3, "c": 10}},
      "init": {"x0": [2, -2, 1], "x1": [1.5, -1.5, 0.5]},
      "tolerances": {"step": 1e-12, "residual": 1e-12}
    })")),
              kExitConfig);  // diag.csv does not exist yet
    write_matrix_csv(dir_ / "diag.csv", Mat{{-1, 0, 0}, {0, 5, 0}, {0, 0, 9}});
    ASSERT_EQ(solve(dir_ / "c.json"), kExitOk) << err_.str();
    std::ostringstream out, err;
    EXPECT_EQ(cmd_rate(dir_ / "out" / "trace.csv", out, err), kExitOk);
    EXPECT_NE(out.str().find("rho_hat: 0."), std::string::npos);
}

TEST_F(CliTest, ReproduceIsByteDeterministic) {
    std::ostringstream out, err;
    for (const auto& target : reproduce_targets()) {
        ASSERT_EQ(cmd_reproduce(target, dir_ / "r1" / target, false, out, err), kExitOk) << target;
        ASSERT_EQ(cmd_reproduce(target, dir_ / "r2" / target, false, out, err), kExitOk) << target;
        for (const auto& e : fs::directory_iterator(dir_ / "r1" / target)) {
            const auto other = dir_ / "r2" / target / e.path().filename();
            EXPECT_EQ(read_text_file(e.path()), read_text_file(other)) << e.path();
        }
    }
}

TEST_F(CliTest, ReproduceWritesComparison) {
    std::ostringstream out, err;
    ASSERT_EQ(cmd_reproduce("figure3a", dir_ / "f", true, out, err), kExitOk);
    const std::string cmp = read_text_file(dir_ / "f" / "comparison.csv");
    EXPECT_EQ(cmp.rfind("config_id,iterations_to_1e-6,final_error\nalpha-0,", 0), 0u);
    EXPECT_TRUE(fs::exists(dir_ / "f" / "alpha-ramp.csv"));
    EXPECT_TRUE(fs::exists(dir_ / "f" / "summary.txt"));
    EXPECT_TRUE(fs::exists(dir_ / "f" / "figure3a.svg"));
    EXPECT_EQ(cmd_reproduce("figure9", dir_ / "x", false, out, err), kExitConfig);
}

TEST_F(CliTest, BinaryExitCodes) {
    const std::string d = dir_.string();
    EXPECT_EQ(run_binary("certify --a " + d + "/eye.csv --b " + d + "/eye.csv"), 0);
    EXPECT_EQ(run_binary("certify --a " + d + "/a1.csv --b " + d + "/v1.csv"), 5);
    EXPECT_EQ(run_binary("kernel --matrix " + d + "/a1.csv --method perturbation --a1 " + d + "/e11.csv --out " + d +
                         "/k.csv"),
              4);
    EXPECT_EQ(run_binary("reproduce nonsense --out " + d + "/x"), 1);
    EXPECT_EQ(run_binary("--help"), 0);
    write_text_file(dir_ / "c.json", kFirstExample);
    EXPECT_EQ(run_binary("solve --config " + d + "/c.json --out " + d + "/bin_out"), 0);
}
