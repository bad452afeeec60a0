#pragma once

// Band-limited fields on the sphere: analysis/synthesis on Gauss grids,
// the Laplace-Beltrami operator, the Jacobian bracket and inner products.

#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "tetra/errors.hpp"
#include "tetra/sphharm.hpp"

namespace tetra {

/// Coefficients over all R_l^{m,parity} with l <= L, in flat_index order.
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(int L) : L_(L), coeffs_(harmonic_count(L), 0.0) {}
    SpectralField(int L, std::vector<double> coeffs) : L_(L), coeffs_(std::move(coeffs))
    {
        if (coeffs_.size() != harmonic_count(L))
            throw DimensionError("SpectralField: coefficient count must be (L+1)^2");
    }

    /// Unit field along a single harmonic.
    static SpectralField unit(int L, const HarmonicIndex& h)
    {
        SpectralField f(L);
        f[h] = 1.0;
        return f;
    }

    [[nodiscard]] int band_limit() const noexcept { return L_; }
    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }

    double& operator[](const HarmonicIndex& h) { return coeffs_.at(flat_index(h)); }
    double operator[](const HarmonicIndex& h) const { return coeffs_.at(flat_index(h)); }
    double& operator[](std::size_t k) { return coeffs_[k]; }
    double operator[](std::size_t k) const { return coeffs_[k]; }

    [[nodiscard]] std::vector<double>& coeffs() noexcept { return coeffs_; }
    [[nodiscard]] const std::vector<double>& coeffs() const noexcept { return coeffs_; }

    /// Coefficients of degree l, length 2l+1.
    [[nodiscard]] std::span<const double> degree(int l) const
    {
        return std::span<const double>(coeffs_).subspan(static_cast<std::size_t>(l * l),
                                                       static_cast<std::size_t>(2 * l + 1));
    }
    [[nodiscard]] std::span<double> degree(int l)
    {
        return std::span<double>(coeffs_).subspan(static_cast<std::size_t>(l * l), static_cast<std::size_t>(2 * l + 1));
    }

    /// Sum of squared coefficients (equals the L2 norm squared of the field).
    [[nodiscard]] double norm2() const noexcept
    {
        double s = 0.0;
        for (double c : coeffs_)
            s += c * c;
        return s;
    }
    [[nodiscard]] double norm() const noexcept { return std::sqrt(norm2()); }

    /// Copy truncated or zero-extended to band limit L.
    [[nodiscard]] SpectralField resized(int L) const
    {
        SpectralField out(L);
        const auto n = std::min(out.size(), size());
        for (std::size_t k = 0; k < n; ++k)
            out.coeffs_[k] = coeffs_[k];
        return out;
    }

    SpectralField& operator+=(const SpectralField& o)
    {
        check_same(o);
        for (std::size_t k = 0; k < size(); ++k)
            coeffs_[k] += o.coeffs_[k];
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o)
    {
        check_same(o);
        for (std::size_t k = 0; k < size(); ++k)
            coeffs_[k] -= o.coeffs_[k];
        return *this;
    }
    SpectralField& operator*=(double s) noexcept
    {
        for (auto& c : coeffs_)
            c *= s;
        return *this;
    }

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
    friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
    friend SpectralField operator-(SpectralField a) { return a *= -1.0; }

    void check_same(const SpectralField& o) const
    {
        if (o.L_ != L_)
            throw DimensionError("SpectralField: band limits differ (" + std::to_string(L_) + " vs " +
                                 std::to_string(o.L_) + ")");
    }

private:
    int L_ = 0;
    std::vector<double> coeffs_ = std::vector<double>(1, 0.0);
};

/// Y* = R_3^{2,cos} = sqrt(105/16pi) sin(theta) cos^2(theta) cos(2 phi).
inline constexpr HarmonicIndex kTetraHarmonic{3, 2, Parity::cosine};

inline SpectralField tetra_harmonic(int L)
{
    if (L < 3)
        throw DimensionError("tetra_harmonic: band limit must be at least 3");
    return SpectralField::unit(L, kTetraHarmonic);
}

/// Cached Legendre values and longitude trigonometry for one (grid, L) pair.
class SphericalTransform {
public:
    SphericalTransform(std::shared_ptr<const Grid> grid, int L) : grid_(std::move(grid)), L_(L)
    {
        tables_.reserve(grid_->n_theta());
        for (double x : grid_->nodes_x())
            tables_.emplace_back(L_, x);
        const auto nPhi = grid_->n_phi();
        cos_.assign(static_cast<std::size_t>(L_ + 1) * nPhi, 0.0);
        sin_.assign(static_cast<std::size_t>(L_ + 1) * nPhi, 0.0);
        for (int m = 0; m <= L_; ++m)
            for (std::size_t j = 0; j < nPhi; ++j) {
                const double a = m * grid_->phi_nodes()[j];
                cos_[static_cast<std::size_t>(m) * nPhi + j] = std::cos(a);
                sin_[static_cast<std::size_t>(m) * nPhi + j] = std::sin(a);
            }
    }

    [[nodiscard]] int band_limit() const noexcept { return L_; }
    [[nodiscard]] const std::shared_ptr<const Grid>& grid_ptr() const noexcept { return grid_; }

    /// Quadrature projection onto R_idx for all idx with l <= L.
    [[nodiscard]] SpectralField analyze(const GridField& f) const
    {
        if (f.grid_ptr() != grid_ && (f.n_theta() != grid_->n_theta() || f.n_phi() != grid_->n_phi()))
            throw SizingError("analyze: field is not sampled on the transform grid");
        SpectralField out(L_);
        const auto nPhi = grid_->n_phi();
        std::vector<double> a(static_cast<std::size_t>(L_ + 1)), b(static_cast<std::size_t>(L_ + 1));
        for (std::size_t i = 0; i < grid_->n_theta(); ++i) {
            const double w = grid_->area_weight(i);
            for (int m = 0; m <= L_; ++m) {
                double sc = 0.0, ss = 0.0;
                const double* cr = &cos_[static_cast<std::size_t>(m) * nPhi];
                const double* sr = &sin_[static_cast<std::size_t>(m) * nPhi];
                for (std::size_t j = 0; j < nPhi; ++j) {
                    const double v = f(i, j);
                    sc += v * cr[j];
                    ss += v * sr[j];
                }
                a[static_cast<std::size_t>(m)] = w * sc;
                b[static_cast<std::size_t>(m)] = w * ss;
            }
            const auto& tab = tables_[i];
            for (int l = 0; l <= L_; ++l) {
                out[flat_index({l, 0, Parity::cosine})] += tab.value(l, 0) * a[0];
                for (int m = 1; m <= l; ++m) {
                    const double p = tab.value(l, m);
                    out[flat_index({l, m, Parity::cosine})] += p * a[static_cast<std::size_t>(m)];
                    out[flat_index({l, m, Parity::sine})] += p * b[static_cast<std::size_t>(m)];
                }
            }
        }
        return out;
    }

    enum class Derivative { none, theta, phi };

    /// Pointwise values (or a first derivative) of u on the grid.
    [[nodiscard]] GridField synthesize(const SpectralField& u, Derivative d = Derivative::none) const
    {
        GridField out(grid_);
        const int Lu = std::min(L_, u.band_limit());
        const auto nPhi = grid_->n_phi();
        std::vector<double> c(static_cast<std::size_t>(Lu + 1)), s(static_cast<std::size_t>(Lu + 1));
        for (std::size_t i = 0; i < grid_->n_theta(); ++i) {
            const auto& tab = tables_[i];
            std::fill(c.begin(), c.end(), 0.0);
            std::fill(s.begin(), s.end(), 0.0);
            for (int l = 0; l <= Lu; ++l) {
                for (int m = 0; m <= l; ++m) {
                    const double p = d == Derivative::theta ? tab.dtheta(l, m) : tab.value(l, m);
                    c[static_cast<std::size_t>(m)] += p * u[flat_index({l, m, Parity::cosine})];
                    if (m > 0)
                        s[static_cast<std::size_t>(m)] += p * u[flat_index({l, m, Parity::sine})];
                }
            }
            if (d == Derivative::phi) {
                // d/dphi (c cos + s sin) = m (s cos - c sin)
                for (int m = 0; m <= Lu; ++m) {
                    const double cm = c[static_cast<std::size_t>(m)], sm = s[static_cast<std::size_t>(m)];
                    c[static_cast<std::size_t>(m)] = m * sm;
                    s[static_cast<std::size_t>(m)] = -m * cm;
                }
            }
            for (std::size_t j = 0; j < nPhi; ++j) {
                double v = c[0];
                for (int m = 1; m <= Lu; ++m)
                    v += c[static_cast<std::size_t>(m)] * cos_[static_cast<std::size_t>(m) * nPhi + j] +
                         s[static_cast<std::size_t>(m)] * sin_[static_cast<std::size_t>(m) * nPhi + j];
                out(i, j) = v;
            }
        }
        return out;
    }

private:
    std::shared_ptr<const Grid> grid_;
    int L_;
    std::vector<LegendreTable> tables_;
    std::vector<double> cos_;
    std::vector<double> sin_;
};

/// L2 projection of f onto harmonics of degree <= L. The grid must resolve
/// products of two degree-L harmonics.
inline SpectralField analyze(const GridField& f, int L)
{
    if (L > f.grid().max_exact_degree())
        throw SizingError("analyze: grid " + std::to_string(f.n_theta()) + "x" + std::to_string(f.n_phi()) +
                          " cannot resolve band limit " + std::to_string(L));
    return SphericalTransform(f.grid_ptr(), L).analyze(f);
}

inline GridField synthesize(const SpectralField& u, const std::shared_ptr<const Grid>& grid)
{
    return SphericalTransform(grid, u.band_limit()).synthesize(u);
}

/// Laplace-Beltrami: coefficient of degree l scaled by -l(l+1).
inline SpectralField laplacian(const SpectralField& u)
{
    SpectralField out = u;
    for (int l = 0; l <= u.band_limit(); ++l)
        for (auto& c : out.degree(l))
            c *= -static_cast<double>(l * (l + 1));
    return out;
}

inline double inner(const SpectralField& u, const SpectralField& v)
{
    u.check_same(v);
    double s = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k)
        s += u[k] * v[k];
    return s;
}

/// J(f,g) = (f_phi g_theta - f_theta g_phi) / cos(theta), pointwise.
inline GridField jacobian_bracket(const SpectralField& f, const SpectralField& g, const std::shared_ptr<const Grid>& grid)
{
    using D = SphericalTransform::Derivative;
    const SphericalTransform tr(grid, std::max(f.band_limit(), g.band_limit()));
    const auto fphi = tr.synthesize(f, D::phi);
    const auto ftheta = tr.synthesize(f, D::theta);
    const auto gphi = tr.synthesize(g, D::phi);
    const auto gtheta = tr.synthesize(g, D::theta);
    GridField out(grid);
    for (std::size_t i = 0; i < grid->n_theta(); ++i) {
        const double inv = 1.0 / grid->cos_theta()[i];
        for (std::size_t j = 0; j < grid->n_phi(); ++j)
            out(i, j) = inv * (fphi(i, j) * gtheta(i, j) - ftheta(i, j) * gphi(i, j));
    }
    return out;
}

/// Value and first derivatives of a band-limited field at one point.
struct PointValue {
    double value = 0.0;
    double dtheta = 0.0;
    double dphi = 0.0;
};

inline PointValue evaluate(const SpectralField& u, double theta, double phi)
{
    const int L = u.band_limit();
    const LegendreTable tab(L, std::sin(theta));
    PointValue pv;
    for (int m = 0; m <= L; ++m) {
        const double cm = std::cos(m * phi), sm = std::sin(m * phi);
        for (int l = m; l <= L; ++l) {
            const double a = u[flat_index({l, m, Parity::cosine})];
            const double b = m > 0 ? u[flat_index({l, m, Parity::sine})] : 0.0;
            const double trig = a * cm + b * sm;
            pv.value += tab.value(l, m) * trig;
            pv.dtheta += tab.dtheta(l, m) * trig;
            pv.dphi += tab.value(l, m) * m * (b * cm - a * sm);
        }
    }
    return pv;
}

/// Part of u that is even across the equator: R_l^m(-theta) = (-1)^{l+m} R_l^m(theta).
inline SpectralField equator_even_part(const SpectralField& u)
{
    SpectralField out(u.band_limit());
    for (std::size_t k = 0; k < u.size(); ++k) {
        const auto h = harmonic_at(k);
        if ((h.l + h.m) % 2 == 0)
            out[k] = u[k];
    }
    return out;
}

/// Spherical mean coefficient helper: the (0,0) coefficient of a constant c is c sqrt(4 pi).
inline double constant_coefficient(double c) { return c * std::sqrt(4.0 * std::numbers::pi); }

} // namespace tetra
