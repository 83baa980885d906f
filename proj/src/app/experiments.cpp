#include "pairprox/app/experiments.hpp"

#include <cstdio>
#include <future>

#include "pairprox/app/plot.hpp"
#include "pairprox/app/trace_csv.hpp"
#include "pairprox/csv.hpp"
#include "pairprox/diagnostics.hpp"
#include "pairprox/errors.hpp"

namespace pairprox::app {
namespace {

Schedule decaying_gamma() { return Schedule::offset_inverse(0.1, 0.3, 10.0); }
Schedule ramp_alpha() { return Schedule::capped_ramp(0.3, 10.0); }

SolverConfig base_config(Vec x0, Vec x1, std::optional<Vec> reference) {
    SolverConfig cfg;
    cfg.tol_step = kReproduceTol;
    cfg.tol_residual = kReproduceTol;
    cfg.max_iter = kReproduceMaxIter;
    cfg.x0 = std::move(x0);
    cfg.x1 = std::move(x1);
    cfg.reference = std::move(reference);
    return cfg;
}

SolverConfig example1_config() {
    return base_config(Vec{-0.5, -0.5, -0.5}, Vec{0.7, 0.7, 0.7}, Vec{1.0, 2.0, 3.0});
}

SolverConfig example2_config() {
    return base_config(Vec{2.0, -2.0, 1.0}, Vec{1.5, -1.5, 0.5}, example2_reference());
}

MemberConfig example1_member(std::string id, Schedule gamma, Schedule alpha) {
    SolverConfig cfg = example1_config();
    cfg.gamma = gamma;
    cfg.alpha = alpha;
    return {std::move(id), example1_operator(), KernelSpec::user(example1_kernel_v1()), std::move(cfg)};
}

MemberConfig example2_member(std::string id, Schedule gamma, Schedule alpha) {
    SolverConfig cfg = example2_config();
    cfg.gamma = gamma;
    cfg.alpha = alpha;
    return {std::move(id), example2_operator(), KernelSpec::user(Mat{{-1, 0, 0}, {0, 5, 0}, {0, 0, 9}}),
            std::move(cfg)};
}

std::vector<std::pair<std::string, Schedule>> alpha_sweep() {
    return {{"alpha-0", Schedule::constant(0.0)},
            {"alpha-0.1", Schedule::constant(0.1)},
            {"alpha-0.3", Schedule::constant(0.3)},
            {"alpha-0.5", Schedule::constant(0.5)},
            {"alpha-ramp", ramp_alpha()}};
}

MemberResult run_one(const MemberConfig& m) {
    MemberResult r;
    r.id = m.id;
    try {
        r.trace = gippa_run(m.problem, m.kernel, m.solver);
    } catch (const Error& e) {
        r.error = e.what();
        return r;
    }
    const auto errs = r.trace->errors_to_reference();
    if (!errs.empty()) {
        for (std::size_t i = 0; i < errs.size(); ++i) {
            if (errs[i] <= kComparisonTarget) {
                r.iterations_to_target = i + 1;
                break;
            }
        }
        r.final_error = errs.back();
    } else if (!r.trace->records.empty()) {
        r.final_error = r.trace->records.back().residual;
    }
    return r;
}

}  // namespace

Mat example1_kernel_v1() { return Mat{{2, 2, 3}, {4, 5, 6}, {7, 8, 9}}; }
Mat example1_kernel_v2() { return Mat{{1, 0, 0}, {0, 0, 0}, {0, 0, 0}}; }

Vec example2_reference() {
    static const Vec root = [] {
        const auto trace = newton_run(example2_operator(), Vec{-0.06, -0.195, -0.164}, 1.0, 1e-14, 100);
        return trace.last_iterate();
    }();
    return root;
}

std::optional<Vec> builtin_reference(const std::string& name) {
    if (name == "example1") return Vec{1.0, 2.0, 3.0};
    if (name == "example2") return example2_reference();
    return std::nullopt;
}

const std::vector<std::string>& reproduce_targets() {
    static const std::vector<std::string> names{"example1-v1", "example1-v2", "example2", "figure1a",
                                                "figure1b",    "figure3a",    "figure3b"};
    return names;
}

std::vector<MemberConfig> reproduce_members(const std::string& target) {
    std::vector<MemberConfig> out;
    if (target == "example1-v1") {
        out.push_back(example1_member("example1-v1", decaying_gamma(), ramp_alpha()));
    } else if (target == "example1-v2") {
        MemberConfig m = example1_member("example1-v2", decaying_gamma(), ramp_alpha());
        m.kernel = KernelSpec::user(example1_kernel_v2());
        out.push_back(std::move(m));
    } else if (target == "example2") {
        out.push_back(example2_member("example2", Schedule::constant(0.5), ramp_alpha()));
    } else if (target == "figure1a") {
        for (auto& [id, a] : alpha_sweep()) out.push_back(example1_member(id, decaying_gamma(), a));
    } else if (target == "figure1b") {
        out.push_back(example1_member("gamma-0.1", Schedule::constant(0.1), ramp_alpha()));
        out.push_back(example1_member("gamma-decay", decaying_gamma(), ramp_alpha()));
        out.push_back(example1_member("gamma-0.5", Schedule::constant(0.5), ramp_alpha()));
        out.push_back(example1_member("gamma-1", Schedule::constant(1.0), ramp_alpha()));
    } else if (target == "figure3a") {
        for (auto& [id, a] : alpha_sweep()) out.push_back(example2_member(id, Schedule::constant(0.5), a));
    } else if (target == "figure3b") {
        for (double g : {0.1, 0.5, 1.0, 2.0}) {
            char id[32];
            std::snprintf(id, sizeof id, "gamma-%g", g);
            out.push_back(example2_member(id, Schedule::constant(g), ramp_alpha()));
        }
    } else {
        throw PreconditionError("unknown reproduce target '" + target + "'");
    }
    return out;
}

std::vector<MemberResult> run_members(const std::vector<MemberConfig>& members) {
    std::vector<std::future<MemberResult>> futures;
    futures.reserve(members.size());
    for (const auto& m : members) futures.push_back(std::async(std::launch::async, run_one, std::cref(m)));
    std::vector<MemberResult> out;
    out.reserve(members.size());
    for (auto& f : futures) out.push_back(f.get());
    return out;
}

std::string comparison_csv(const std::vector<MemberResult>& results) {
    std::string out = "config_id,iterations_to_1e-6,final_error\n";
    for (const auto& r : results) {
        out += r.id + ',';
        if (r.iterations_to_target) out += std::to_string(*r.iterations_to_target);
        out += ',';
        if (r.error.empty()) out += format_double(r.final_error);
        out += '\n';
    }
    return out;
}

std::vector<MemberResult> run_reproduce(const std::string& target, const std::filesystem::path& out_dir,
                                        bool plot) {
    const auto members = reproduce_members(target);
    auto results = run_members(members);

    std::string summary = "target: " + target + "\n";
    std::vector<PlotSeries> series;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        if (!r.error.empty()) {
            summary += r.id + ": error: " + r.error + "\n";
            continue;
        }
        write_text_file(out_dir / (r.id + ".csv"), trace_to_csv(*r.trace));
        summary += r.id + ": iterations=" + std::to_string(r.trace->iterations()) +
                   " termination=" + to_string(r.trace->termination) +
                   " final_error=" + format_double(r.final_error);
        if (const auto* aff = std::get_if<AffineOperator>(&members[i].problem)) {
            summary += " dist_to_solution_set=" +
                       format_double(distance_to_solution_set(aff->a, aff->b, r.trace->last_iterate()));
        }
        summary += "\n";
        for (const auto& w : r.trace->warnings) summary += r.id + ": warning: " + w + "\n";
        series.push_back({r.id, r.trace->errors_to_reference()});
    }
    write_text_file(out_dir / "comparison.csv", comparison_csv(results));
    write_text_file(out_dir / "summary.txt", summary);
    if (plot) write_text_file(out_dir / (target + ".svg"), render_log_plot(series, target, "err_to_ref"));
    return results;
}

}  // namespace pairprox::app
