#include "pairprox/app/config.hpp"

#include <json.hpp>

#include "pairprox/csv.hpp"
#include "pairprox/errors.hpp"
#include "pairprox/app/experiments.hpp"
#include "pairprox/pairs.hpp"

namespace pairprox::app {
namespace {

using nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

const json& require(const json& obj, const char* key, const char* where) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ConfigError(std::string(where) + ": missing key '" + key + "'");
    }
    return obj.at(key);
}

double number(const json& obj, const char* key, const char* where) {
    const json& v = require(obj, key, where);
    if (!v.is_number()) throw ConfigError(std::string(where) + "." + key + ": expected a number");
    return v.get<double>();
}

Vec vector_from(const json& v, const char* where) {
    if (!v.is_array() || v.empty()) throw ConfigError(std::string(where) + ": expected a non-empty array");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(std::string(where) + ": non-numeric entry");
        out.push_back(e.get<double>());
    }
    return Vec(std::move(out));
}

Schedule schedule_from(const json& s, const char* where) {
    if (s.is_number()) return Schedule::constant(s.get<double>());
    const std::string kind = require(s, "kind", where).get<std::string>();
    if (kind == "constant") return Schedule::constant(number(s, "value", where));
    if (kind == "offset_inverse") return Schedule::offset_inverse(number(s, "a", where), number(s, "b", where), number(s, "c", where));
    if (kind == "capped_ramp") return Schedule::capped_ramp(number(s, "cap", where), number(s, "c", where));
    throw ConfigError(std::string(where) + ": unknown schedule kind '" + kind + "'");
}

}  // namespace

Schedule schedule_from_json_text(const std::string& json_text) {
    try {
        return schedule_from(json::parse(json_text), "schedule");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("schedule: ") + e.what());
    }
}

RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        const json& problem = require(root, "problem", "config");
        const std::string type = require(problem, "type", "problem").get<std::string>();

        std::optional<Operator> op;
        std::optional<Vec> reference;
        std::string label;
        if (type == "affine") {
            Mat a = read_matrix_csv(resolve(base_dir, require(problem, "A", "problem").get<std::string>()));
            Vec b = read_vector_csv(resolve(base_dir, require(problem, "b", "problem").get<std::string>()));
            try {
                op.emplace(AffineOperator(std::move(a), std::move(b)));
            } catch (const DimensionMismatch& e) {
                throw ConfigError(std::string("problem: ") + e.what());
            }
            label = "affine";
        } else if (type == "builtin") {
            label = require(problem, "name", "problem").get<std::string>();
            try {
                op.emplace(builtin_operator(label));
            } catch (const PreconditionError& e) {
                throw ConfigError(e.what());
            }
            reference = builtin_reference(label);
        } else {
            throw ConfigError("problem.type must be 'affine' or 'builtin'");
        }

        RunConfig cfg{*op, reference, label, {}, {}, {}, 0};
        const std::size_t n = dimension(cfg.problem);
        if (root.contains("reference")) cfg.reference = vector_from(root.at("reference"), "reference");

        if (root.contains("kernel")) {
            const json& k = root.at("kernel");
            const std::string kt = require(k, "type", "kernel").get<std::string>();
            if (kt == "identity") {
                cfg.kernel.type = KernelChoice::Type::identity;
            } else if (kt == "matrix") {
                cfg.kernel.type = KernelChoice::Type::matrix;
                cfg.kernel.file = resolve(base_dir, require(k, "file", "kernel").get<std::string>());
            } else if (kt == "construct") {
                cfg.kernel.type = KernelChoice::Type::construct;
                cfg.kernel.method = require(k, "method", "kernel").get<std::string>();
                if (cfg.kernel.method != "perturbation" && cfg.kernel.method != "symmetric" &&
                    cfg.kernel.method != "factored") {
                    throw ConfigError("kernel.method must be perturbation, symmetric or factored");
                }
                if (cfg.kernel.method == "perturbation") {
                    cfg.kernel.a1 = resolve(base_dir, require(k, "a1", "kernel").get<std::string>());
                }
                if (k.contains("replacement")) cfg.kernel.replacement = number(k, "replacement", "kernel");
                if (k.contains("unchecked")) cfg.kernel.unchecked = k.at("unchecked").get<bool>();
            } else {
                throw ConfigError("kernel.type must be identity, matrix or construct");
            }
        }

        const json& sched = require(root, "schedules", "config");
        cfg.solver.gamma = schedule_from(require(sched, "gamma", "schedules"), "schedules.gamma");
        cfg.solver.alpha = schedule_from(require(sched, "alpha", "schedules"), "schedules.alpha");

        const json& init = require(root, "init", "config");
        cfg.solver.x0 = vector_from(require(init, "x0", "init"), "init.x0");
        cfg.solver.x1 = vector_from(require(init, "x1", "init"), "init.x1");
        if (cfg.solver.x0.size() != n || cfg.solver.x1.size() != n) {
            throw ConfigError("init: x0 and x1 must have the problem dimension " + std::to_string(n));
        }
        if (cfg.reference && cfg.reference->size() != n) throw ConfigError("reference: wrong dimension");

        if (root.contains("tolerances")) {
            const json& t = root.at("tolerances");
            if (t.contains("step")) cfg.solver.tol_step = number(t, "step", "tolerances");
            if (t.contains("residual")) cfg.solver.tol_residual = number(t, "residual", "tolerances");
            if (t.contains("inner")) cfg.solver.inner.tol = number(t, "inner", "tolerances");
        }
        if (root.contains("max_iter")) {
            const json& m = root.at("max_iter");
            if (!m.is_number_integer() || m.get<long long>() < 1) throw ConfigError("max_iter must be a positive integer");
            cfg.solver.max_iter = m.get<std::size_t>();
        }
        if (!(cfg.solver.tol_step > 0.0) || !(cfg.solver.tol_residual > 0.0)) {
            throw ConfigError("tolerances must be > 0");
        }
        if (root.contains("output")) {
            const json& o = root.at("output");
            if (o.contains("dir")) cfg.output.dir = resolve(base_dir, o.at("dir").get<std::string>());
            if (o.contains("csv")) cfg.output.csv = o.at("csv").get<bool>();
            if (o.contains("report")) cfg.output.report = o.at("report").get<bool>();
            if (o.contains("plot")) cfg.output.plot = o.at("plot").get<bool>();
        }
        if (root.contains("seed")) cfg.seed = root.at("seed").get<std::uint64_t>();
        cfg.solver.reference = cfg.reference;
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const NonFinite& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

RunConfig load_run_config(const std::filesystem::path& path) {
    return parse_run_config(read_text_file(path), path.parent_path());
}

KernelSpec build_kernel(const KernelChoice& choice, const Operator& problem) {
    const std::size_t n = dimension(problem);
    switch (choice.type) {
        case KernelChoice::Type::identity: return KernelSpec::identity(n);
        case KernelChoice::Type::matrix: {
            Mat b = read_matrix_csv(choice.file);
            if (b.rows() != n || b.cols() != n) throw ConfigError("kernel matrix must be n x n");
            return KernelSpec::user(std::move(b));
        }
        case KernelChoice::Type::construct: {
            const auto* aff = std::get_if<AffineOperator>(&problem);
            if (!aff) throw ConfigError("kernel construction needs an affine problem matrix");
            if (choice.method == "symmetric") return construct_kernel_symmetric(aff->a, choice.replacement);
            if (choice.method == "factored") return construct_kernel_factored(aff->a, choice.replacement);
            Mat a1 = read_matrix_csv(choice.a1);
            if (a1.rows() != n || a1.cols() != n) throw ConfigError("kernel.a1 must be n x n");
            return construct_kernel_perturbation(aff->a, a1,
                                                 choice.unchecked ? CheckMode::unchecked : CheckMode::checked);
        }
    }
    throw ConfigError("unknown kernel type");
}

}  // namespace pairprox::app
