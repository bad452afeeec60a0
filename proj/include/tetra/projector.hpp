#pragma once

// Projector onto fields invariant under the rotation group T of the regular
// tetrahedron with vertices at latitude +-atan(1/sqrt 2) and longitudes
// {0, pi} (north) and {pi/2, 3pi/2} (south). Built per degree by averaging
// numerically computed rotation matrices of the harmonics.

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "tetra/errors.hpp"
#include "tetra/parallel.hpp"
#include "tetra/spectral.hpp"
#include "tetra/sphharm.hpp"

namespace tetra {

namespace detail {

inline Eigen::Matrix3d axis_rotation(const Eigen::Vector3d& axis, double angle)
{
    return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

inline bool same_matrix(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b, double tol)
{
    return (a - b).cwiseAbs().maxCoeff() < tol;
}

// Harmonic values R_k(theta, phi) for all k with l <= L.
inline void harmonics_at(int L, double theta, double phi, std::vector<double>& out)
{
    out.assign(harmonic_count(L), 0.0);
    const LegendreTable tab(L, std::sin(theta));
    for (int m = 0; m <= L; ++m) {
        const double c = std::cos(m * phi), s = std::sin(m * phi);
        for (int l = m; l <= L; ++l) {
            const double p = tab.value(l, m);
            out[flat_index({l, m, Parity::cosine})] = p * c;
            if (m > 0)
                out[flat_index({l, m, Parity::sine})] = p * s;
        }
    }
}

} // namespace detail

/// Closure of {R_z(pi), C_3 about (sqrt2, 0, 1)/sqrt3} under composition.
inline std::vector<Eigen::Matrix3d> tetrahedral_rotations(double tol = 1e-10)
{
    const Eigen::Matrix3d rz = detail::axis_rotation(Eigen::Vector3d::UnitZ(), std::numbers::pi);
    const Eigen::Matrix3d c3 =
        detail::axis_rotation(Eigen::Vector3d(std::sqrt(2.0), 0.0, 1.0), 2.0 * std::numbers::pi / 3.0);
    const std::vector<Eigen::Matrix3d> gens{rz, c3};

    std::vector<Eigen::Matrix3d> group{Eigen::Matrix3d::Identity()};
    for (std::size_t k = 0; k < group.size(); ++k) {
        for (const auto& g : gens) {
            const Eigen::Matrix3d h = g * group[k];
            bool seen = false;
            for (const auto& e : group)
                if (detail::same_matrix(e, h, tol)) {
                    seen = true;
                    break;
                }
            if (!seen)
                group.push_back(h);
            if (group.size() > 64)
                throw ConstructionError("tetrahedral_rotations: closure does not terminate");
        }
    }
    if (group.size() != 12)
        throw ConstructionError("tetrahedral_rotations: closure has " + std::to_string(group.size()) +
                                " elements, expected 12");
    return group;
}

class TetraProjector {
public:
    explicit TetraProjector(int L) : L_(L), group_(tetrahedral_rotations())
    {
        if (L < 0)
            throw DimensionError("TetraProjector: negative band limit");
        build();
    }

    [[nodiscard]] int band_limit() const noexcept { return L_; }
    [[nodiscard]] const std::vector<Eigen::Matrix3d>& group_elements() const noexcept { return group_; }
    [[nodiscard]] const Eigen::MatrixXd& block(int l) const { return blocks_.at(static_cast<std::size_t>(l)); }
    /// Orthonormal basis of the invariant subspace of degree l, (2l+1) x rank.
    [[nodiscard]] const Eigen::MatrixXd& basis(int l) const { return bases_.at(static_cast<std::size_t>(l)); }
    [[nodiscard]] int rank(int l) const { return static_cast<int>(basis(l).cols()); }
    /// Group-averaged rotation matrix before symmetrization and snapping.
    [[nodiscard]] const Eigen::MatrixXd& raw_block(int l) const { return raw_.at(static_cast<std::size_t>(l)); }

    [[nodiscard]] int dimension() const
    {
        int d = 0;
        for (int l = 0; l <= L_; ++l)
            d += rank(l);
        return d;
    }

    /// Invariant subspace basis in full coefficient space, (L+1)^2 x dim,
    /// ordered by degree. Optionally drops the constant mode.
    [[nodiscard]] Eigen::MatrixXd subspace_basis(bool dropConstant = false) const
    {
        const int d = dimension() - (dropConstant ? rank(0) : 0);
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(harmonic_count(L_)), d);
        int col = 0;
        for (int l = dropConstant ? 1 : 0; l <= L_; ++l) {
            const auto& V = basis(l);
            B.block(l * l, col, 2 * l + 1, V.cols()) = V;
            col += static_cast<int>(V.cols());
        }
        return B;
    }

    /// Degree of each subspace basis column.
    [[nodiscard]] std::vector<int> subspace_degrees(bool dropConstant = false) const
    {
        std::vector<int> out;
        for (int l = dropConstant ? 1 : 0; l <= L_; ++l)
            for (int k = 0; k < rank(l); ++k)
                out.push_back(l);
        return out;
    }

    [[nodiscard]] SpectralField apply(const SpectralField& u) const
    {
        if (u.band_limit() != L_)
            throw DimensionError("project_tetra: band limit " + std::to_string(u.band_limit()) +
                                 " does not match projector " + std::to_string(L_));
        SpectralField out(L_);
        for (int l = 0; l <= L_; ++l) {
            const auto in = u.degree(l);
            auto dst = out.degree(l);
            const Eigen::Map<const Eigen::VectorXd> x(in.data(), static_cast<Eigen::Index>(in.size()));
            Eigen::Map<Eigen::VectorXd> y(dst.data(), static_cast<Eigen::Index>(dst.size()));
            y = blocks_[static_cast<std::size_t>(l)] * x;
        }
        return out;
    }

private:
    void build()
    {
        const auto grid = build_grid(L_, 2.0);
        const auto nT = grid->n_theta(), nP = grid->n_phi();
        const auto nH = harmonic_count(L_);

        // harmonic values at the grid nodes, one row per node
        std::vector<std::vector<double>> atNodes(nT * nP);
        for (std::size_t i = 0; i < nT; ++i)
            for (std::size_t j = 0; j < nP; ++j)
                detail::harmonics_at(L_, grid->theta_nodes()[i], grid->phi_nodes()[j], atNodes[i * nP + j]);

        // D_l(g)[a][b] = sum_p w_p R_{l,a}(x_p) R_{l,b}(g^{-1} x_p), summed over g
        std::vector<std::vector<Eigen::MatrixXd>> partial(worker_count());
        for (auto& p : partial) {
            p.resize(static_cast<std::size_t>(L_ + 1));
            for (int l = 0; l <= L_; ++l)
                p[static_cast<std::size_t>(l)] = Eigen::MatrixXd::Zero(2 * l + 1, 2 * l + 1);
        }
        parallel_for(group_.size(), [&](std::size_t gi, std::size_t worker) {
            const Eigen::Matrix3d ginv = group_[gi].transpose();
            auto& acc = partial[worker];
            std::vector<double> rotated(nH);
            for (std::size_t i = 0; i < nT; ++i) {
                const double w = grid->area_weight(i);
                for (std::size_t j = 0; j < nP; ++j) {
                    const Vec3 x = to_cartesian(grid->theta_nodes()[i], grid->phi_nodes()[j]);
                    const Eigen::Vector3d y = ginv * Eigen::Vector3d(x.x, x.y, x.z);
                    const auto [th, ph] = to_spherical({y.x(), y.y(), y.z()});
                    detail::harmonics_at(L_, th, ph, rotated);
                    const auto& here = atNodes[i * nP + j];
                    for (int l = 0; l <= L_; ++l) {
                        const auto off = static_cast<std::size_t>(l * l);
                        const Eigen::Map<const Eigen::VectorXd> a(here.data() + off, 2 * l + 1);
                        const Eigen::Map<const Eigen::VectorXd> b(rotated.data() + off, 2 * l + 1);
                        acc[static_cast<std::size_t>(l)].noalias() += w * a * b.transpose();
                    }
                }
            }
        });

        const double invOrder = 1.0 / static_cast<double>(group_.size());
        raw_.resize(static_cast<std::size_t>(L_ + 1));
        blocks_.resize(static_cast<std::size_t>(L_ + 1));
        bases_.resize(static_cast<std::size_t>(L_ + 1));
        for (int l = 0; l <= L_; ++l) {
            const auto li = static_cast<std::size_t>(l);
            Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(2 * l + 1, 2 * l + 1);
            for (const auto& p : partial)
                avg += p[li];
            avg *= invOrder;
            raw_[li] = avg;

            const Eigen::MatrixXd sym = 0.5 * (avg + avg.transpose());
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
            std::vector<Eigen::Index> keep;
            for (Eigen::Index k = 0; k < eig.eigenvalues().size(); ++k)
                if (eig.eigenvalues()(k) > 0.5)
                    keep.push_back(k);
            Eigen::MatrixXd V(2 * l + 1, static_cast<Eigen::Index>(keep.size()));
            for (std::size_t c = 0; c < keep.size(); ++c) {
                Eigen::VectorXd v = eig.eigenvectors().col(keep[c]);
                Eigen::Index imax = 0;
                v.cwiseAbs().maxCoeff(&imax);
                if (v(imax) < 0.0)
                    v = -v;
                V.col(static_cast<Eigen::Index>(c)) = v;
            }
            bases_[li] = V;
            blocks_[li] = V * V.transpose();
        }
    }

    int L_;
    std::vector<Eigen::Matrix3d> group_;
    std::vector<Eigen::MatrixXd> raw_;
    std::vector<Eigen::MatrixXd> blocks_;
    std::vector<Eigen::MatrixXd> bases_;
};

inline TetraProjector build_tetra_projector(int L) { return TetraProjector(L); }

inline SpectralField project_tetra(const TetraProjector& P, const SpectralField& u) { return P.apply(u); }

} // namespace tetra
