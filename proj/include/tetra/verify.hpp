#pragma once

// Physics checks on solved fields: stationarity of the Euler flow, the
// rotating-frame traveling wave, the Gauss constraint and the location of
// the vortex centres.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "tetra/models.hpp"
#include "tetra/spectral.hpp"

namespace tetra {

/// ‖J(ψ, Δψ)‖ / (‖ψ‖ ‖Δψ‖), zero for ψ = 0.
inline double check_stationarity(const SpectralField& psi, const std::shared_ptr<const Grid>& grid)
{
    const SpectralField lap = laplacian(psi);
    const double scale = psi.norm() * lap.norm();
    if (scale == 0.0)
        return 0.0;
    return jacobian_bracket(psi, lap, grid).l2_norm() / scale;
}

inline double check_stationarity(const SpectralField& psi)
{
    return check_stationarity(psi, build_grid(std::max(psi.band_limit(), 1), 2.0));
}

/// u(φ + s, θ) in coefficient space.
inline SpectralField shift_longitude(const SpectralField& u, double s)
{
    SpectralField out = u;
    for (int l = 1; l <= u.band_limit(); ++l)
        for (int m = 1; m <= l; ++m) {
            const auto ic = flat_index({l, m, Parity::cosine});
            const auto is = flat_index({l, m, Parity::sine});
            const double c = std::cos(m * s), sn = std::sin(m * s);
            out[ic] = u[ic] * c + u[is] * sn;
            out[is] = u[is] * c - u[ic] * sn;
        }
    return out;
}

/// ∂φ u in coefficient space.
inline SpectralField dphi(const SpectralField& u)
{
    SpectralField out(u.band_limit());
    for (int l = 1; l <= u.band_limit(); ++l)
        for (int m = 1; m <= l; ++m) {
            const auto ic = flat_index({l, m, Parity::cosine});
            const auto is = flat_index({l, m, Parity::sine});
            out[ic] = m * u[is];
            out[is] = -m * u[ic];
        }
    return out;
}

/// x3 = sin θ as a spectral field.
inline SpectralField polar_coordinate(int L)
{
    SpectralField out(std::max(L, 1));
    out[HarmonicIndex{1, 0, Parity::cosine}] = std::sqrt(4.0 * std::numbers::pi / 3.0);
    return out;
}

/// max over t of ‖∂t Δψ_ω + J(ψ_ω, Δψ_ω + 2ω x3)‖ / (‖ψ_ω‖ ‖Δψ_ω + 2ω x3‖)
/// with ψ_ω(φ, θ, t) = ψ0(φ + ωt, θ) + ω x3.
inline double traveling_wave_residual(const SpectralField& psi0, double omega, const std::vector<double>& tSamples,
                                      const std::shared_ptr<const Grid>& grid)
{
    const int L = std::max(psi0.band_limit(), 1);
    const SpectralField base = psi0.resized(L);
    const SpectralField x3 = polar_coordinate(L);
    const SphericalTransform tr(grid, L);
    double worst = 0.0;
    for (double t : tSamples) {
        const SpectralField shifted = shift_longitude(base, omega * t);
        const SpectralField psiW = shifted + omega * x3;
        const SpectralField vort = laplacian(psiW) + 2.0 * omega * x3;
        const double scale = psiW.norm() * vort.norm();
        if (scale == 0.0)
            continue;
        // d/dt of the shifted coefficients is ω ∂φ
        GridField r = tr.synthesize(laplacian(omega * dphi(shifted)));
        const GridField j = jacobian_bracket(psiW, vort, grid);
        for (std::size_t k = 0; k < r.values().size(); ++k)
            r.values()[k] += j.values()[k];
        worst = std::max(worst, r.l2_norm() / scale);
    }
    return worst;
}

inline double traveling_wave_residual(const SpectralField& psi0, double omega, const std::vector<double>& tSamples)
{
    return traveling_wave_residual(psi0, omega, tSamples, build_grid(std::max(psi0.band_limit(), 1), 2.0));
}

/// |∬ F(λ, ψ) dσ|. For liouville the nonlocal mean is included unless
/// subtractMean is false, in which case the local part λ(e^ψ - 1) is used.
inline double gauss_constraint_residual(const ModelSpec& spec, double lambda, const SpectralField& psi,
                                        const std::shared_ptr<const Grid>& grid, bool subtractMean = true)
{
    GridField f = SphericalTransform(grid, psi.band_limit()).synthesize(psi);
    f.apply([&](double v) { return eval_F(spec, lambda, v); });
    if (spec.mass_constrained()) {
        const double shift = subtractMean ? f.integrate() / (4.0 * std::numbers::pi) : lambda;
        f.apply([&](double v) { return v - shift; });
    }
    return std::abs(f.integrate());
}

inline double gauss_constraint_residual(const ModelSpec& spec, double lambda, const SpectralField& psi,
                                        bool subtractMean = true)
{
    return gauss_constraint_residual(spec, lambda, psi, build_grid(psi.band_limit(), 2.0), subtractMean);
}

struct CriticalPoint {
    double theta = 0.0;
    double phi = 0.0;
    double value = 0.0;
    bool maximum = false;
};

struct GeometryOptions {
    int latitudes = 96;
    int longitudes = 192;
    double flatTolerance = 1e-12; // relative to the largest |value| sampled
    int maxNewton = 30;
};

namespace detail {

inline Eigen::Vector2d gradient_at(const SpectralField& u, double th, double ph)
{
    const auto pv = evaluate(u, th, ph);
    return {pv.dtheta, pv.dphi};
}

inline double wrap_phi(double ph)
{
    const double twoPi = 2.0 * std::numbers::pi;
    ph = std::fmod(ph, twoPi);
    if (ph < 0.0)
        ph += twoPi;
    return ph;
}

} // namespace detail

/// Local extrema of u away from the poles, polished by Newton on ∇u = 0.
inline std::vector<CriticalPoint> vortex_geometry(const SpectralField& u, const GeometryOptions& opt = {})
{
    const double pi = std::numbers::pi;
    const int nT = opt.latitudes, nP = opt.longitudes;
    const double dth = pi / (nT + 1), dph = 2.0 * pi / nP;
    std::vector<double> v(static_cast<std::size_t>(nT * nP));
    auto at = [&](int i, int j) -> double& {
        return v[static_cast<std::size_t>(i * nP + ((j % nP) + nP) % nP)];
    };
    double vmax = 0.0;
    for (int i = 0; i < nT; ++i)
        for (int j = 0; j < nP; ++j) {
            at(i, j) = evaluate(u, -pi / 2 + (i + 1) * dth, j * dph).value;
            vmax = std::max(vmax, std::abs(at(i, j)));
        }
    std::vector<CriticalPoint> out;
    if (vmax <= opt.flatTolerance)
        return out;

    for (int i = 1; i + 1 < nT; ++i)
        for (int j = 0; j < nP; ++j) {
            const double c = at(i, j);
            bool isMax = true, isMin = true;
            for (int di = -1; di <= 1; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0)
                        continue;
                    const double n = at(i + di, j + dj);
                    isMax = isMax && c > n;
                    isMin = isMin && c < n;
                }
            if (!isMax && !isMin)
                continue;

            double th = -pi / 2 + (i + 1) * dth, ph = j * dph;
            const double h = 1e-6;
            for (int it = 0; it < opt.maxNewton; ++it) {
                const Eigen::Vector2d g = detail::gradient_at(u, th, ph);
                Eigen::Matrix2d H;
                H.col(0) = (detail::gradient_at(u, th + h, ph) - detail::gradient_at(u, th - h, ph)) / (2 * h);
                H.col(1) = (detail::gradient_at(u, th, ph + h) - detail::gradient_at(u, th, ph - h)) / (2 * h);
                const Eigen::Vector2d step = H.fullPivLu().solve(-g);
                if (!step.allFinite())
                    break;
                th += step(0);
                ph += step(1);
                if (step.norm() < 1e-15)
                    break;
            }
            ph = detail::wrap_phi(ph);
            if (!(std::abs(th) < pi / 2))
                continue;
            const double val = evaluate(u, th, ph).value;
            if (std::abs(val) <= opt.flatTolerance * vmax)
                continue;
            bool dup = false;
            for (const auto& p : out) {
                const double dp = std::abs(std::remainder(p.phi - ph, 2.0 * pi));
                if (std::abs(p.theta - th) < 1e-6 && dp < 1e-6)
                    dup = true;
            }
            if (!dup)
                out.push_back({th, ph, val, isMax});
        }
    std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
        if (a.maximum != b.maximum)
            return a.maximum;
        return a.phi < b.phi;
    });
    return out;
}

/// Largest ||u(θ, φ)| - |u(-θ, φ)|| over northern extrema paired with the
/// southern extremum at the mirrored position. Zero for equator-odd fields.
inline double mirror_asymmetry(const std::vector<CriticalPoint>& extrema)
{
    double worst = 0.0;
    for (const auto& n : extrema) {
        if (n.theta <= 0.0)
            continue;
        for (const auto& s : extrema)
            if (std::abs(s.theta + n.theta) < 1e-6 && std::abs(std::remainder(s.phi - n.phi, 2.0 * std::numbers::pi)) < 1e-6)
                worst = std::max(worst, std::abs(std::abs(n.value) - std::abs(s.value)));
    }
    return worst;
}

} // namespace tetra
