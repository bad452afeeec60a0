#pragma once

// Real orthonormal spherical harmonics on the unit sphere, normalized
// associated Legendre functions and Gauss-Legendre x uniform-longitude grids.
//
// Coordinates: longitude phi in [0, 2pi), latitude theta in (-pi/2, pi/2).
// All latitude work is done in x = sin(theta).

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tetra {

enum class Parity { cosine, sine };

/// One real harmonic R_l^{m,parity}.
struct HarmonicIndex {
    int l = 0;
    int m = 0;
    Parity parity = Parity::cosine;

    friend bool operator==(const HarmonicIndex&, const HarmonicIndex&) = default;

    [[nodiscard]] bool valid() const noexcept
    {
        return l >= 0 && m >= 0 && m <= l && (parity == Parity::cosine || m >= 1);
    }
};

/// Number of harmonics with degree <= L.
constexpr std::size_t harmonic_count(int L) noexcept
{
    return L < 0 ? 0 : static_cast<std::size_t>(L + 1) * static_cast<std::size_t>(L + 1);
}

// Degree-major layout: degree l occupies [l^2, (l+1)^2) as
// (l,0,cos), (l,1,cos), (l,1,sin), ..., (l,l,cos), (l,l,sin).
constexpr std::size_t flat_index(const HarmonicIndex& h) noexcept
{
    const auto base = static_cast<std::size_t>(h.l) * static_cast<std::size_t>(h.l);
    if (h.m == 0)
        return base;
    return base + static_cast<std::size_t>(2 * h.m - 1 + (h.parity == Parity::sine ? 1 : 0));
}

inline HarmonicIndex harmonic_at(std::size_t k) noexcept
{
    const int l = static_cast<int>(std::sqrt(static_cast<double>(k)));
    int ll = l;
    // guard sqrt rounding
    while (static_cast<std::size_t>(ll + 1) * static_cast<std::size_t>(ll + 1) <= k)
        ++ll;
    while (static_cast<std::size_t>(ll) * static_cast<std::size_t>(ll) > k)
        --ll;
    const auto r = static_cast<int>(k - static_cast<std::size_t>(ll) * static_cast<std::size_t>(ll));
    if (r == 0)
        return {ll, 0, Parity::cosine};
    return {ll, (r + 1) / 2, (r % 2 == 1) ? Parity::cosine : Parity::sine};
}

/// All indices with degree <= L in flat order.
inline std::vector<HarmonicIndex> harmonic_indices(int L)
{
    std::vector<HarmonicIndex> out;
    out.reserve(harmonic_count(L));
    for (std::size_t k = 0; k < harmonic_count(L); ++k)
        out.push_back(harmonic_at(k));
    return out;
}

/// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

// (P_n(x), P_{n-1}(x)) by the three-term recurrence.
inline std::pair<double, double> legendre_pair(std::size_t n, double x) noexcept
{
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
        const auto kd = static_cast<double>(k);
        const double pk = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = pk;
    }
    return {p1, p0};
}

} // namespace detail

/// Roots of P_n by Newton iteration from Chebyshev guesses; nodes increasing.
inline QuadratureRule gauss_legendre(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("gauss_legendre: n must be positive");
    QuadratureRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const auto nd = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [pn, pn1] = detail::legendre_pair(n, x);
            const double dp = nd * (x * pn - pn1) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x)))
                break;
        }
        const auto [pn, pn1] = detail::legendre_pair(n, x);
        const double dp = nd * (x * pn - pn1) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0.0;
    return rule;
}

namespace detail {

// Starting value P̄_m^m / (1-x^2)^{m/2}; includes the longitude normalization
// so that R_0^0 = 1/sqrt(4 pi) and R_l^m for m>0 integrates to one.
inline double sectoral_seed(int m, double s)
{
    double p = 1.0 / std::sqrt(4.0 * std::numbers::pi);
    for (int k = 1; k <= m; ++k) {
        double f = std::sqrt((2.0 * k + 1.0) / (2.0 * k));
        if (k == 1)
            f *= std::sqrt(2.0);
        p *= f * s;
    }
    return p;
}

inline double recurrence_a(int l, int m)
{
    return std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
}

inline double recurrence_b(int l, int m)
{
    const double lm1 = l - 1.0;
    return std::sqrt((lm1 * lm1 - static_cast<double>(m) * m) / (4.0 * lm1 * lm1 - 1.0));
}

} // namespace detail

/// Normalized associated Legendre function P̄_l^m(x), no Condon-Shortley
/// phase. With this normalization R_l^m = P̄_l^m(sin theta) * trig(m phi) is
/// orthonormal over the sphere.
inline double assoc_legendre_normalized(int l, int m, double x)
{
    assert(m >= 0 && m <= l);
    const double s = std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
    double pmm = detail::sectoral_seed(m, s);
    if (l == m)
        return pmm;
    double prev = pmm;
    double cur = std::sqrt(2.0 * m + 3.0) * x * pmm;
    for (int k = m + 2; k <= l; ++k) {
        const double next = detail::recurrence_a(k, m) * (x * cur - detail::recurrence_b(k, m) * prev);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Table of P̄_l^m(x) and d/dtheta P̄_l^m(sin theta) for all l <= L at one x.
/// Stored in a triangular layout, entry (l, m) at l(l+1)/2 + m.
class LegendreTable {
public:
    LegendreTable() = default;

    LegendreTable(int L, double x) : L_(L)
    {
        const auto n = static_cast<std::size_t>((L + 1) * (L + 2) / 2);
        values_.assign(n, 0.0);
        dtheta_.assign(n, 0.0);
        const double c2 = (1.0 - x) * (1.0 + x);
        const double s = std::sqrt(std::max(0.0, c2));
        for (int m = 0; m <= L; ++m) {
            double pmm = detail::sectoral_seed(m, s);
            values_[pos(m, m)] = pmm;
            if (m + 1 <= L)
                values_[pos(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * x * pmm;
            for (int l = m + 2; l <= L; ++l)
                values_[pos(l, m)] = detail::recurrence_a(l, m) *
                                     (x * values_[pos(l - 1, m)] - detail::recurrence_b(l, m) * values_[pos(l - 2, m)]);
        }
        // cos(theta) dP/dx = -[l x P_l - f_lm P_{l-1}] / cos(theta), with
        // f_lm = sqrt((2l+1)/(2l-1) (l-m)(l+m)). Valid away from the poles.
        if (s > 0.0) {
            for (int l = 0; l <= L; ++l) {
                for (int m = 0; m <= l; ++m) {
                    double num = l * x * values_[pos(l, m)];
                    if (l > m) {
                        const double f = std::sqrt((2.0 * l + 1.0) / (2.0 * l - 1.0) *
                                                   static_cast<double>(l - m) * static_cast<double>(l + m));
                        num -= f * values_[pos(l - 1, m)];
                    }
                    dtheta_[pos(l, m)] = -num / s;
                }
            }
        }
    }

    [[nodiscard]] int band_limit() const noexcept { return L_; }
    [[nodiscard]] double value(int l, int m) const { return values_[pos(l, m)]; }
    /// d/dtheta of P̄_l^m(sin theta).
    [[nodiscard]] double dtheta(int l, int m) const { return dtheta_[pos(l, m)]; }

private:
    static std::size_t pos(int l, int m) noexcept
    {
        return static_cast<std::size_t>(l * (l + 1) / 2 + m);
    }

    int L_ = -1;
    std::vector<double> values_;
    std::vector<double> dtheta_;
};

/// R_l^{m,parity}(theta, phi).
inline double eval_harmonic(const HarmonicIndex& idx, double theta, double phi)
{
    assert(idx.valid());
    const double p = assoc_legendre_normalized(idx.l, idx.m, std::sin(theta));
    if (idx.m == 0)
        return p;
    return p * (idx.parity == Parity::cosine ? std::cos(idx.m * phi) : std::sin(idx.m * phi));
}

/// Gauss-Legendre in x = sin(theta) times uniform longitude.
class Grid {
public:
    Grid(std::size_t nTheta, std::size_t nPhi) : nTheta_(nTheta), nPhi_(nPhi)
    {
        if (nTheta == 0 || nPhi == 0)
            throw std::invalid_argument("Grid: empty dimensions");
        auto rule = gauss_legendre(nTheta);
        nodesX_ = std::move(rule.nodes);
        weightsX_ = std::move(rule.weights);
        phi_.resize(nPhi);
        for (std::size_t j = 0; j < nPhi; ++j)
            phi_[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(nPhi);
        theta_.resize(nTheta);
        cosTheta_.resize(nTheta);
        for (std::size_t i = 0; i < nTheta; ++i) {
            theta_[i] = std::asin(nodesX_[i]);
            cosTheta_[i] = std::sqrt((1.0 - nodesX_[i]) * (1.0 + nodesX_[i]));
        }
    }

    [[nodiscard]] std::size_t n_theta() const noexcept { return nTheta_; }
    [[nodiscard]] std::size_t n_phi() const noexcept { return nPhi_; }
    [[nodiscard]] std::size_t size() const noexcept { return nTheta_ * nPhi_; }
    [[nodiscard]] const std::vector<double>& nodes_x() const noexcept { return nodesX_; }
    [[nodiscard]] const std::vector<double>& weights_x() const noexcept { return weightsX_; }
    [[nodiscard]] const std::vector<double>& phi_nodes() const noexcept { return phi_; }
    [[nodiscard]] const std::vector<double>& theta_nodes() const noexcept { return theta_; }
    [[nodiscard]] const std::vector<double>& cos_theta() const noexcept { return cosTheta_; }

    /// Area weight of node (i, j); sums to 4 pi.
    [[nodiscard]] double area_weight(std::size_t i) const noexcept
    {
        return weightsX_[i] * 2.0 * std::numbers::pi / static_cast<double>(nPhi_);
    }

    /// Largest degree L for which analysis of a degree-L field is exact.
    [[nodiscard]] int max_exact_degree() const noexcept
    {
        // products of two degree-L harmonics: need 2L <= 2 nTheta - 1 and 2L < nPhi
        const int byTheta = static_cast<int>(nTheta_) - 1;
        const int byPhi = (static_cast<int>(nPhi_) - 1) / 2;
        return std::min(byTheta, byPhi);
    }

private:
    std::size_t nTheta_;
    std::size_t nPhi_;
    std::vector<double> nodesX_;
    std::vector<double> weightsX_;
    std::vector<double> phi_;
    std::vector<double> theta_;
    std::vector<double> cosTheta_;
};

/// nTheta = ceil(pad (L+1)), nPhi = max(ceil(pad (2L+1)), 4).
inline std::shared_ptr<const Grid> build_grid(int L, double pad)
{
    if (L < 0 || pad < 1.0)
        throw std::invalid_argument("build_grid: need L >= 0 and pad >= 1");
    const auto nTheta = static_cast<std::size_t>(std::ceil(pad * (L + 1) - 1e-12));
    const auto nPhi = std::max<std::size_t>(static_cast<std::size_t>(std::ceil(pad * (2 * L + 1) - 1e-12)), 4);
    return std::make_shared<const Grid>(nTheta, nPhi);
}

/// Point samples on a grid, row-major (latitude, longitude).
class GridField {
public:
    explicit GridField(std::shared_ptr<const Grid> grid)
        : grid_(std::move(grid)), values_(grid_->size(), 0.0)
    {
    }

    [[nodiscard]] const Grid& grid() const noexcept { return *grid_; }
    [[nodiscard]] const std::shared_ptr<const Grid>& grid_ptr() const noexcept { return grid_; }
    [[nodiscard]] std::size_t n_theta() const noexcept { return grid_->n_theta(); }
    [[nodiscard]] std::size_t n_phi() const noexcept { return grid_->n_phi(); }

    double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * grid_->n_phi() + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * grid_->n_phi() + j]; }

    [[nodiscard]] std::vector<double>& values() noexcept { return values_; }
    [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }

    /// Quadrature of the field over the sphere.
    [[nodiscard]] double integrate() const noexcept
    {
        double sum = 0.0;
        for (std::size_t i = 0; i < n_theta(); ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n_phi(); ++j)
                row += (*this)(i, j);
            sum += grid_->area_weight(i) * row;
        }
        return sum;
    }

    /// Quadrature L2 norm.
    [[nodiscard]] double l2_norm() const noexcept
    {
        double sum = 0.0;
        for (std::size_t i = 0; i < n_theta(); ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n_phi(); ++j)
                row += (*this)(i, j) * (*this)(i, j);
            sum += grid_->area_weight(i) * row;
        }
        return std::sqrt(sum);
    }

    template <class Fn>
    GridField& apply(Fn&& fn)
    {
        for (auto& v : values_)
            v = fn(v);
        return *this;
    }

private:
    std::shared_ptr<const Grid> grid_;
    std::vector<double> values_;
};

/// Cartesian unit vector of (theta, phi); x3 = sin(theta) is the polar axis.
struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 to_cartesian(double theta, double phi) noexcept
{
    const double c = std::cos(theta);
    return {c * std::cos(phi), c * std::sin(phi), std::sin(theta)};
}

inline std::pair<double, double> to_spherical(const Vec3& v) noexcept
{
    const double r = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
    const double theta = std::asin(std::clamp(v.z / r, -1.0, 1.0));
    double phi = std::atan2(v.y, v.x);
    if (phi < 0.0)
        phi += 2.0 * std::numbers::pi;
    return {theta, phi};
}

} // namespace tetra
