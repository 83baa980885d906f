#include "pairprox/trace.hpp"

#include "pairprox/errors.hpp"

namespace pairprox {

const char* to_string(Termination t) noexcept {
    switch (t) {
        case Termination::step_gap: return "step_gap";
        case Termination::residual: return "residual";
        case Termination::max_iter: return "max_iter";
    }
    return "unknown";
}

const Vec& IterateTrace::last_iterate() const {
    if (records.empty()) throw PreconditionError("IterateTrace: empty trace");
    return records.back().x_next;
}

std::vector<Vec> IterateTrace::iterates() const {
    std::vector<Vec> xs;
    if (records.empty()) return xs;
    xs.reserve(records.size() + 2);
    xs.push_back(x0);
    for (const auto& r : records) xs.push_back(r.x);
    xs.push_back(records.back().x_next);
    return xs;
}

std::vector<double> IterateTrace::errors_to_reference() const {
    std::vector<double> errs;
    if (!reference) return errs;
    errs.reserve(records.size());
    for (const auto& r : records) errs.push_back(norm2(r.x_next - *reference));
    return errs;
}

}  // namespace pairprox
