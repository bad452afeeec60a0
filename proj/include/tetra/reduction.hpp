#pragma once

// Liapunov-Schmidt reduction at the l = 3 tetrahedral kernel.
//
// With F(λ, ψ) = a1(λ) ψ + a2 ψ^2 + a3 ψ^3 + ..., a1(λ*) = -12 and
// L = -Δ - 12, the expansion ψ = ε Y* + ε^2 ψ2 + ..., λ = λ* + ε λ1 + ε^2 λ2
// gives
//   O(ε^2):  L ψ2 + a1' λ1 Y* + a2 (Y*)^2 = 0
//   O(ε^3):  <., Y*>  ->  a1' λ2 + 2 a2 <(Y*)^2, ψ2> + a3 <(Y*)^2, (Y*)^2> = 0
// where a1' = ∂λ∂ψF(λ*, 0). The mass-constrained model drops the mean of
// every source term.

#include <cmath>
#include <string>

#include "tetra/errors.hpp"
#include "tetra/models.hpp"
#include "tetra/spectral.hpp"

namespace tetra {

inline constexpr double kKernelTolerance = 1e-11;
inline constexpr double kLambda1Tolerance = 1e-12;

/// Inverse of L = -Δ - 12 on the complement of the degree-3 eigenspace.
/// Degree-3 coefficients of the result are zero.
inline SpectralField apply_L_inverse(const SpectralField& rhs)
{
    SpectralField out(rhs.band_limit());
    for (int l = 0; l <= rhs.band_limit(); ++l) {
        const auto src = rhs.degree(l);
        auto dst = out.degree(l);
        if (l == 3) {
            for (double c : src)
                if (std::abs(c) > kKernelTolerance)
                    throw SolvabilityError("apply_L_inverse: right-hand side has a kernel component " +
                                               std::to_string(c),
                                           c);
            continue;
        }
        const double eig = static_cast<double>(l * (l + 1) - 12);
        for (std::size_t k = 0; k < src.size(); ++k)
            dst[k] = src[k] / eig;
    }
    return out;
}

struct ReductionResult {
    double lambdaStar = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    SpectralField psi2;
    /// Floating spectral coefficients of (Y*)^2.
    SpectralField weights;
    ModelSpec model;
    /// ∬ (Y*)^3 and ∬ (Y*)^4 as used by the projections.
    double cubicIntegral = 0.0;
    double quarticIntegral = 0.0;
};

inline ReductionResult reduce(const ModelSpec& spec, int L = 12)
{
    if (L < 6)
        throw DimensionError("reduce: band limit must be at least 6 to hold (Y*)^2");
    spec.validate();
    const TaylorData td = taylor_data(spec);

    const auto grid = build_grid(L, 2.0);
    const SphericalTransform tr(grid, L);
    const SpectralField Y = tetra_harmonic(L);
    GridField ySquared = tr.synthesize(Y);
    ySquared.apply([](double v) { return v * v; });
    const SpectralField Y2 = tr.analyze(ySquared);

    ReductionResult res;
    res.model = spec;
    res.lambdaStar = td.lambdaStar;
    res.weights = Y2;
    res.cubicIntegral = inner(Y2, Y);
    res.quarticIntegral = inner(Y2, Y2);

    // O(ε^2) projected on Y*: a1' λ1 ||Y*||^2 + a2 ∬(Y*)^3 = 0
    res.lambda1 = -td.a2 * res.cubicIntegral / td.dA1dLambda;
    if (!(std::abs(res.lambda1) < kLambda1Tolerance))
        throw NumericalFailure("reduce: first-order correction lambda1 = " + std::to_string(res.lambda1) +
                               " is not zero; basis convention is broken");

    SpectralField rhs = -(td.dA1dLambda * res.lambda1 * Y + td.a2 * Y2);
    if (td.massConstrained)
        rhs[HarmonicIndex{0, 0, Parity::cosine}] = 0.0;
    res.psi2 = apply_L_inverse(rhs);

    // O(ε^3) projected on Y*
    res.lambda2 = -(td.a3 * res.quarticIntegral + 2.0 * td.a2 * inner(Y2, res.psi2)) / td.dA1dLambda;
    return res;
}

} // namespace tetra
