#pragma once

#include <random>

#include "tetra/spectral.hpp"

namespace tetra::testing {

inline std::mt19937_64& rng()
{
    static std::mt19937_64 gen(20240917);
    return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline SpectralField random_field(int L)
{
    SpectralField u(L);
    for (auto& c : u.coeffs())
        c = uniform(-1.0, 1.0);
    return u;
}

inline double max_abs_diff(const SpectralField& a, const SpectralField& b)
{
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

} // namespace tetra::testing
