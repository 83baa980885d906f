#include "pairprox/app/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "pairprox/app/config.hpp"
#include "pairprox/app/experiments.hpp"
#include "pairprox/app/plot.hpp"
#include "pairprox/app/trace_csv.hpp"
#include "pairprox/csv.hpp"
#include "pairprox/diagnostics.hpp"
#include "pairprox/errors.hpp"
#include "pairprox/pairs.hpp"

namespace pairprox::app {
namespace {

std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string vec_text(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += format_double(v[i]);
    }
    return s + ")";
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

void print_certificate(std::ostream& out, const PairCertificate& c) {
    out << "status: " << to_string(c.status) << '\n';
    out << "method: " << to_string(c.method) << '\n';
    out << "lambda_min: " << format_double(c.lambda_min) << '\n';
    out << "scale: " << format_double(c.scale) << '\n';
    if (c.status == PairStatus::strongly_monotone) out << "beta: " << format_double(c.beta) << '\n';
    if (c.witness) out << "witness: " << vec_text(*c.witness) << '\n';
}

std::string solve_report(const RunConfig& cfg, const KernelSpec& kernel, const IterateTrace& trace) {
    std::ostringstream r;
    r << "problem: " << cfg.problem_label << '\n';
    r << "seed: " << cfg.seed << '\n';
    r << "kernel: " << to_string(kernel.provenance) << '\n';
    r << "termination: " << to_string(trace.termination) << '\n';
    r << "iterations: " << trace.iterations() << '\n';
    r << "final_iterate: " << vec_text(trace.last_iterate()) << '\n';
    if (!trace.records.empty()) {
        r << "final_residual: " << format_double(trace.records.back().residual) << '\n';
        r << "final_step_gap: " << format_double(trace.records.back().step_gap) << '\n';
        r << "final_v_gap: " << format_double(trace.records.back().v_gap) << '\n';
    }
    const auto errs = trace.errors_to_reference();
    if (!errs.empty()) r << "final_err_to_ref: " << format_double(errs.back()) << '\n';

    const auto v = validate_schedules(cfg.solver);
    r << "gamma_schedule: " << cfg.solver.gamma.describe() << '\n';
    r << "alpha_schedule: " << cfg.solver.alpha.describe() << '\n';
    r << "schedules_valid: " << yes_no(v.valid) << '\n';
    r << "alpha_nondecreasing: " << yes_no(v.alpha_nondecreasing) << '\n';
    r << "alpha_sup: " << format_double(v.alpha_cap) << '\n';
    r << "gamma_inf: " << format_double(v.gamma_inf) << '\n';
    r << "schedule_theory_satisfied: " << yes_no(v.theory_satisfied) << '\n';

    std::vector<double> series = errs;
    const char* series_name = "err_to_ref";
    if (series.empty()) {
        series_name = "residual";
        for (const auto& rec : trace.records) series.push_back(rec.residual);
    }
    try {
        const RateFit fit = estimate_linear_rate(series);
        r << "rate_series: " << series_name << '\n';
        r << "rho_hat: " << format_double(fit.rho_hat) << '\n';
        r << "rate_r_squared: " << format_double(fit.r_squared) << '\n';
        r << "rate_window: " << fit.window_begin << '-' << fit.window_end << '\n';
    } catch (const NonPositive&) {
        r << "rho_hat: unavailable\n";
    }

    if (const auto* aff = std::get_if<AffineOperator>(&cfg.problem)) {
        const PairCertificate c = certify_linear_pair(aff->a, kernel.b);
        r << "pair_status: " << to_string(c.status) << '\n';
        r << "pair_lambda_min: " << format_double(c.lambda_min) << '\n';
        r << "dist_to_solution_set: " << format_double(distance_to_solution_set(aff->a, aff->b, trace.last_iterate()))
          << '\n';
    }
    CertificateReport certs;
    if (!trace.records.empty()) certs.summability = check_summability(trace, kernel);
    r << certs.to_text();
    for (const auto& w : trace.warnings) r << "warning: " << w << '\n';
    return r.str();
}

}  // namespace

int cmd_solve(const std::filesystem::path& config, const std::optional<std::filesystem::path>& out_dir,
              std::ostream& out, std::ostream& err) {
    std::optional<RunConfig> cfg;
    std::optional<KernelSpec> kernel;
    try {
        cfg = load_run_config(config);
        kernel = build_kernel(cfg->kernel, cfg->problem);
    } catch (const HypothesisViolated& e) {
        err << "error: " << e.what() << "\nwitness: " << vec_text(Vec(e.witness())) << '\n';
        return kExitHypothesis;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }
    const auto dir = out_dir ? out_dir : cfg->output.dir;
    if (!dir) {
        err << "config error: no output directory (use --out or output.dir)\n";
        return kExitConfig;
    }

    IterateTrace trace;
    try {
        trace = gippa_run(cfg->problem, *kernel, cfg->solver);
    } catch (const ScheduleInvalid& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        err << "solver error: " << e.what() << '\n';
        return kExitSolver;
    }

    try {
        if (cfg->output.csv) write_text_file(*dir / "trace.csv", trace_to_csv(trace));
        if (cfg->output.report) write_text_file(*dir / "report.txt", solve_report(*cfg, *kernel, trace));
        if (cfg->output.plot) {
            std::vector<PlotSeries> s{{"err_to_ref", trace.errors_to_reference()}};
            if (s[0].values.empty()) {
                s[0].label = "residual";
                for (const auto& r : trace.records) s[0].values.push_back(r.residual);
            }
            write_text_file(*dir / "trace.svg", render_log_plot(s, cfg->problem_label, s[0].label));
        }
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kExitConfig;
    }
    for (const auto& w : trace.warnings) err << "warning: " << w << '\n';
    out << "termination: " << to_string(trace.termination) << '\n';
    out << "iterations: " << trace.iterations() << '\n';
    out << "final_iterate: " << vec_text(trace.last_iterate()) << '\n';
    return trace.termination == Termination::max_iter ? kExitMaxIter : kExitOk;
}

int cmd_kernel(const KernelOptions& opts, std::ostream& out, std::ostream& err) {
    try {
        const Mat a = read_matrix_csv(opts.matrix);
        if (!a.is_square()) {
            err << "error: matrix must be square\n";
            return kExitConfig;
        }
        KernelSpec k = KernelSpec::identity(a.rows());
        if (opts.method == "symmetric") {
            k = construct_kernel_symmetric(a, opts.replacement);
        } else if (opts.method == "factored") {
            k = construct_kernel_factored(a, opts.replacement);
        } else if (opts.method == "perturbation") {
            if (!opts.a1) {
                err << "error: --a1 is required for the perturbation method\n";
                return kExitConfig;
            }
            const Mat a1 = read_matrix_csv(*opts.a1);
            if (a1.rows() != a.rows() || a1.cols() != a.cols()) {
                err << "error: a1 must have the shape of the matrix\n";
                return kExitConfig;
            }
            k = construct_kernel_perturbation(a, a1, opts.unchecked ? CheckMode::unchecked : CheckMode::checked);
        } else {
            err << "error: unknown method '" << opts.method << "'\n";
            return kExitConfig;
        }
        write_matrix_csv(opts.out, k.b);
        std::filesystem::path meta = opts.out;
        meta += ".meta";
        write_text_file(meta, std::string("provenance=") + to_string(k.provenance) + ";tau=" + format_double(k.tau) +
                                  ";replacement=" + format_double(k.replacement) + "\n");
        out << "kernel: " << opts.out.string() << '\n';
        out << "provenance: " << to_string(k.provenance) << '\n';
        out << "det: " << format_double(det(k.b)) << '\n';
        print_certificate(out, certify_linear_pair(a, k.b));
        return kExitOk;
    } catch (const HypothesisViolated& e) {
        err << "hypothesis violated: " << e.what() << '\n';
        out << "witness: " << vec_text(Vec(e.witness())) << '\n';
        out << "value: " << format_double(e.value()) << '\n';
        return kExitHypothesis;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitSolver;
    }
}

int cmd_certify(const std::filesystem::path& a_path, const std::filesystem::path& b_path, std::ostream& out,
                std::ostream& err) {
    try {
        const Mat a = read_matrix_csv(a_path);
        const Mat b = read_matrix_csv(b_path);
        if (!a.is_square() || a.rows() != b.rows() || a.cols() != b.cols()) {
            err << "error: A and B must be square of the same size\n";
            return kExitConfig;
        }
        const PairCertificate c = certify_linear_pair(a, b);
        print_certificate(out, c);
        switch (c.status) {
            case PairStatus::monotone:
            case PairStatus::strongly_monotone: return kExitOk;
            case PairStatus::not_monotone: return kExitNotMonotone;
            case PairStatus::inconclusive: return kExitInconclusive;
        }
        return kExitInconclusive;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitSolver;
    }
}

int cmd_reproduce(const std::string& target, const std::filesystem::path& out_dir, bool plot, std::ostream& out,
                  std::ostream& err) {
    const auto& names = reproduce_targets();
    if (std::find(names.begin(), names.end(), target) == names.end()) {
        err << "error: unknown target '" << target << "'\n";
        return kExitConfig;
    }
    try {
        const auto results = run_reproduce(target, out_dir, plot);
        bool failed = false;
        for (const auto& r : results) {
            if (!r.error.empty()) {
                failed = true;
                err << r.id << ": solver error: " << r.error << '\n';
                continue;
            }
            out << r.id << ": iterations=" << r.trace->iterations() << " final_error=" << short_num(r.final_error)
                << '\n';
        }
        return failed ? kExitSolver : kExitOk;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kExitConfig;
    }
}

int cmd_rate(const std::filesystem::path& trace, std::ostream& out, std::ostream& err) {
    std::vector<double> series;
    try {
        const std::string text = read_text_file(trace);
        if (text.rfind(kTraceHeader, 0) == 0) {
            const auto rows = parse_trace_csv(text);
            bool all_err = !rows.empty();
            for (const auto& r : rows) all_err = all_err && r.err_to_ref.has_value();
            for (const auto& r : rows) series.push_back(all_err ? *r.err_to_ref : r.residual);
        } else {
            for (const auto& row : parse_csv_numbers(text)) {
                if (row.size() != 1) throw IoError("rate: expected a single column of numbers");
                series.push_back(row[0]);
            }
        }
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kExitConfig;
    }
    try {
        const RateFit fit = estimate_linear_rate(series);
        out << "rho_hat: " << short_num(fit.rho_hat) << '\n';
        out << "r_squared: " << short_num(fit.r_squared) << '\n';
        out << "window: " << fit.window_begin << '-' << fit.window_end << '\n';
        return kExitOk;
    } catch (const NonPositive& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }
}

}  // namespace pairprox::app
