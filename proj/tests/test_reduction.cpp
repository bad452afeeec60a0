#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "tetra/exactc.hpp"
#include "tetra/reduction.hpp"

using namespace tetra;
using tetra::testing::max_abs_diff;
using tetra::testing::random_field;

namespace {

SpectralField kernel_free_random(int L)
{
    SpectralField u = random_field(L);
    for (auto& c : u.degree(3))
        c = 0.0;
    return u;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST(LInverse, Examples)
{
    const auto r00 = SpectralField::unit(6, {0, 0, Parity::cosine});
    EXPECT_LT(max_abs_diff(apply_L_inverse(r00), r00 * (-1.0 / 12.0)), 1e-16);
    const auto r40 = SpectralField::unit(6, {4, 0, Parity::cosine});
    EXPECT_LT(max_abs_diff(apply_L_inverse(r40), r40 * (1.0 / 8.0)), 1e-16);
    try {
        (void)apply_L_inverse(tetra_harmonic(6) * 1e-3);
        FAIL() << "expected a solvability error";
    } catch (const SolvabilityError& e) {
        EXPECT_NEAR(e.kernel_component(), 1e-3, 1e-18);
    }
    EXPECT_NO_THROW((void)apply_L_inverse(tetra_harmonic(6) * 1e-12));
}

TEST(LInverse, InvertsOperatorAndIsSelfAdjoint)
{
    for (int trial = 0; trial < 10; ++trial) {
        const auto u = kernel_free_random(9), v = kernel_free_random(9);
        const auto Lu = -1.0 * laplacian(apply_L_inverse(u)) - 12.0 * apply_L_inverse(u);
        EXPECT_LT(max_abs_diff(Lu, u), 1e-13);
        EXPECT_NEAR(inner(apply_L_inverse(u), v), inner(u, apply_L_inverse(v)), 1e-11);
    }
}

TEST(Reduce, Sine)
{
    const auto r = reduce(ModelSpec::sine());
    EXPECT_EQ(r.lambdaStar, 12.0);
    EXPECT_LT(std::abs(r.lambda1), 1e-12);
    EXPECT_NEAR(r.lambda2, 315.0 / (286.0 * std::numbers::pi), 1e-10);
    EXPECT_LT(r.psi2.norm(), 1e-12);
}

TEST(Reduce, Sinh)
{
    const auto r = reduce(ModelSpec::sinh());
    EXPECT_NEAR(r.lambda2, -315.0 / (286.0 * std::numbers::pi), 1e-10);
    EXPECT_LT(r.psi2.norm(), 1e-12);
}

TEST(Reduce, PolynomialMatchesExact)
{
    for (auto [mu, mu1] : {std::pair{3.0, 1.0}, {0.5, 2.0}, {12.0, 0.3}, {40.0, 1.0}}) {
        const auto spec = ModelSpec::polynomial(mu, mu1);
        const auto r = reduce(spec);
        EXPECT_NEAR(r.lambdaStar, std::sqrt(mu / (3 * mu1)), 1e-12);
        EXPECT_LT(std::abs(r.lambda1), 1e-12);
        EXPECT_LT(rel(r.lambda2, exact::lambda2_exact(spec).value()), 1e-10) << mu;
        EXPECT_GT(std::abs(r.psi2[0]), 1e-3);
    }
    EXPECT_LT(reduce(ModelSpec::polynomial(3.0, 1.0)).lambda2, 0.0);
}

TEST(Reduce, PolynomialMeanAbsorbsGaussConstraint)
{
    const auto spec = ModelSpec::polynomial(3.0, 1.0);
    const auto r = reduce(spec);
    const auto td = taylor_data(spec);
    // L psi2 + a2 (Y*)^2 has zero mean
    const SpectralField lhs = -1.0 * laplacian(r.psi2) - 12.0 * r.psi2 + td.a2 * r.weights;
    EXPECT_LT(std::abs(lhs[0]), 1e-11);
    EXPECT_NEAR(r.psi2[0], td.a2 * r.weights[0] / 12.0, 1e-12);
}

TEST(Reduce, LiouvilleStructure)
{
    const auto r = reduce(ModelSpec::liouville());
    EXPECT_EQ(r.lambdaStar, -12.0);
    EXPECT_LT(std::abs(r.lambda1), 1e-12);
    EXPECT_GT(r.lambda2, 0.0);
    EXPECT_LT(rel(r.lambda2, exact::lambda2_exact(ModelSpec::liouville()).value()), 1e-10);
    EXPECT_LT(std::abs(r.psi2[HarmonicIndex{0, 0, Parity::cosine}]), 1e-12);
    EXPECT_LT(std::abs(r.psi2[HarmonicIndex{2, 0, Parity::cosine}]), 1e-12);
    const auto table = exact::compute_weight_table();
    for (std::size_t k = 0; k < r.psi2.size(); ++k) {
        const auto h = harmonic_at(k);
        const bool onSupport = h.parity == Parity::cosine && (h.l == 4 || h.l == 6) && (h.m == 0 || h.m == 4);
        if (!onSupport) {
            EXPECT_LT(std::abs(r.psi2[k]), 1e-12);
            continue;
        }
        const double expected = -6.0 * table.coefficient(h.l, h.m) / (12.0 - h.l * (h.l + 1));
        EXPECT_NEAR(r.psi2[k], expected, 1e-10);
    }
}

TEST(Reduce, SignTable)
{
    EXPECT_LT(reduce(ModelSpec::polynomial(3.0, 1.0)).lambda2, 0.0);
    EXPECT_GT(reduce(ModelSpec::sine()).lambda2, 0.0);
    EXPECT_LT(reduce(ModelSpec::sinh()).lambda2, 0.0);
    EXPECT_GT(reduce(ModelSpec::liouville()).lambda2, 0.0);
}

TEST(Reduce, PolynomialSignFollowsExactOracle)
{
    for (int k = 0; k < 20; ++k) {
        const auto spec = ModelSpec::polynomial(tetra::testing::uniform(0.1, 40.0), tetra::testing::uniform(0.1, 5.0));
        const auto ex = exact::lambda2_exact(spec);
        if (std::abs(ex.value()) < 1e-9)
            continue;
        EXPECT_EQ(reduce(spec).lambda2 > 0, ex.sign() > 0) << spec.mu;
    }
}

TEST(Reduce, IndependentOfBandLimit)
{
    for (const auto& s : {ModelSpec::polynomial(3.0, 1.0), ModelSpec::sine(), ModelSpec::liouville()}) {
        const auto ref = reduce(s, 12);
        for (int L : {6, 8}) {
            const auto r = reduce(s, L);
            EXPECT_NEAR(r.lambda2, ref.lambda2, 1e-12);
            EXPECT_LT(max_abs_diff(r.psi2, ref.psi2.resized(L)), 1e-12);
        }
    }
    EXPECT_THROW(reduce(ModelSpec::sine(), 5), DimensionError);
}

TEST(Reduce, WeightsMatchExactCoefficients)
{
    const auto r = reduce(ModelSpec::sine());
    const auto table = exact::compute_weight_table();
    for (const auto& e : table.entries())
        EXPECT_NEAR((r.weights[HarmonicIndex{e.l, e.m, Parity::cosine}]), table.coefficient(e.l, e.m), 1e-12);
    EXPECT_NEAR(r.quarticIntegral, 315.0 / (572.0 * std::numbers::pi), 1e-12);
    EXPECT_LT(std::abs(r.cubicIntegral), 1e-13);
}
