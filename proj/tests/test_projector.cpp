#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "tetra/projector.hpp"

using namespace tetra;
using tetra::testing::max_abs_diff;
using tetra::testing::random_field;

namespace {

const TetraProjector& projector8()
{
    static const TetraProjector p(8);
    return p;
}

} // namespace

TEST(Group, TwelveRotations)
{
    const auto g = tetrahedral_rotations();
    ASSERT_EQ(g.size(), 12u);
    for (const auto& r : g) {
        EXPECT_LT((r * r.transpose() - Eigen::Matrix3d::Identity()).norm(), 1e-12);
        EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
    }
}

TEST(Group, FixesTetraVertexSet)
{
    const double th = std::atan(1.0 / std::sqrt(2.0));
    const double pi = std::numbers::pi;
    std::vector<Eigen::Vector3d> verts;
    for (auto [t, p] : {std::pair{th, 0.0}, {th, pi}, {-th, pi / 2}, {-th, 3 * pi / 2}}) {
        const auto v = to_cartesian(t, p);
        verts.emplace_back(v.x, v.y, v.z);
    }
    for (const auto& r : tetrahedral_rotations())
        for (const auto& v : verts) {
            double best = 1e9;
            for (const auto& w : verts)
                best = std::min(best, (r * v - w).norm());
            EXPECT_LT(best, 1e-12);
        }
}

TEST(Projector, Ranks)
{
    const auto& P = projector8();
    const std::vector<int> expected{1, 0, 0, 1, 1, 0, 2, 1, 1};
    for (int l = 0; l <= 8; ++l)
        EXPECT_EQ(P.rank(l), expected[static_cast<std::size_t>(l)]) << "l=" << l;
    EXPECT_NEAR(P.block(0)(0, 0), 1.0, 1e-12);
}

TEST(Projector, DegreeThreeRangeIsTetraHarmonic)
{
    const auto& P = projector8();
    const Eigen::VectorXd v = P.basis(3).col(0);
    const auto k = flat_index(kTetraHarmonic) - 9;
    EXPECT_NEAR(v(static_cast<Eigen::Index>(k)), 1.0, 1e-12);
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
}

TEST(Projector, BlocksSymmetricIdempotent)
{
    const auto& P = projector8();
    for (int l = 0; l <= 8; ++l) {
        const auto& B = P.block(l);
        EXPECT_LT((B - B.transpose()).cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_LT((B * B - B).cwiseAbs().maxCoeff(), 1e-10);
        // the raw group average is already a projector up to quadrature noise
        EXPECT_LT((P.raw_block(l) - B).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Projector, InvariantSupports)
{
    const auto& P = projector8();
    const auto support = [&](int l, int col) {
        std::vector<std::pair<int, Parity>> s;
        for (int r = 0; r < 2 * l + 1; ++r)
            if (std::abs(P.basis(l)(r, col)) > 1e-10) {
                const auto h = harmonic_at(static_cast<std::size_t>(l * l + r));
                s.emplace_back(h.m, h.parity);
            }
        return s;
    };
    for (const auto& [m, par] : support(4, 0)) {
        EXPECT_TRUE(m == 0 || m == 4);
        EXPECT_EQ(par, Parity::cosine);
    }
    // the two degree-6 invariants: cosines on m in {0,4}, sines on m in {2,6}
    const auto a = support(6, 0), b = support(6, 1);
    int on04 = 0, on26 = 0;
    for (const auto& s : {a, b}) {
        bool is04 = true, is26 = true;
        for (const auto& [m, par] : s) {
            is04 = is04 && (m == 0 || m == 4) && par == Parity::cosine;
            is26 = is26 && (m == 2 || m == 6) && par == Parity::sine;
        }
        on04 += is04;
        on26 += is26;
    }
    EXPECT_EQ(on04, 1);
    EXPECT_EQ(on26, 1);
}

TEST(Projector, ApplyProperties)
{
    const auto& P = projector8();
    const SpectralField y = tetra_harmonic(8);
    EXPECT_LT(max_abs_diff(P.apply(y), y), 1e-12);
    EXPECT_LT(P.apply(SpectralField::unit(8, {3, 0, Parity::cosine})).norm(), 1e-12);
    for (int trial = 0; trial < 5; ++trial) {
        const auto u = random_field(8);
        const auto pu = P.apply(u);
        EXPECT_LT(max_abs_diff(P.apply(pu), pu), 1e-10);
        EXPECT_LT(max_abs_diff(P.apply(laplacian(u)), laplacian(pu)), 1e-10);
    }
    EXPECT_THROW(P.apply(SpectralField(7)), DimensionError);
}

TEST(Projector, InvariantFieldsAreRotationInvariant)
{
    const auto& P = projector8();
    const auto u = P.apply(random_field(8));
    for (const auto& g : P.group_elements())
        for (int k = 0; k < 10; ++k) {
            const double th = tetra::testing::uniform(-1.4, 1.4), ph = tetra::testing::uniform(0, 6.2);
            const auto x = to_cartesian(th, ph);
            const Eigen::Vector3d y = g * Eigen::Vector3d(x.x, x.y, x.z);
            const auto [t2, p2] = to_spherical({y.x(), y.y(), y.z()});
            EXPECT_NEAR(evaluate(u, t2, p2).value, evaluate(u, th, ph).value, 1e-11);
        }
}

TEST(Projector, SubspaceBasisOrthonormal)
{
    const auto& P = projector8();
    for (bool drop : {false, true}) {
        const auto B = P.subspace_basis(drop);
        EXPECT_EQ(B.cols(), P.dimension() - (drop ? 1 : 0));
        EXPECT_LT((B.transpose() * B - Eigen::MatrixXd::Identity(B.cols(), B.cols())).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_EQ(static_cast<Eigen::Index>(P.subspace_degrees(drop).size()), B.cols());
    }
}
