#pragma once

#include <cmath>
#include <random>

#include "pairprox/linalg.hpp"

namespace pairprox::detail {

using Rng = std::mt19937_64;

inline Vec uniform_in_box(Rng& rng, const Vec& lower, const Vec& upper) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vec x(lower.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = lower[i] + (upper[i] - lower[i]) * unit(rng);
    return x;
}

// Uniform in the closed Euclidean ball: Gaussian direction, radius r * u^(1/n).
inline Vec uniform_in_ball(Rng& rng, const Vec& center, double radius) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const std::size_t n = center.size();
    Vec d(n);
    double nd = 0.0;
    while (nd == 0.0) {
        for (std::size_t i = 0; i < n; ++i) d[i] = gauss(rng);
        nd = norm2(d);
    }
    const double r = radius * std::pow(unit(rng), 1.0 / static_cast<double>(n));
    return center + (r / nd) * d;
}

}  // namespace pairprox::detail
