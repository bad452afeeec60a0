#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "tetra/sphharm.hpp"

using namespace tetra;
using tetra::testing::uniform;

namespace {

const double kPi = std::numbers::pi;

double ystar_formula(double th, double ph)
{
    return std::sqrt(105.0 / (16.0 * kPi)) * std::sin(th) * std::cos(th) * std::cos(th) * std::cos(2.0 * ph);
}

} // namespace

TEST(HarmonicIndex, CountAndLayout)
{
    for (int L = 0; L <= 12; ++L) {
        const auto idx = harmonic_indices(L);
        ASSERT_EQ(idx.size(), static_cast<std::size_t>((L + 1) * (L + 1)));
        for (std::size_t k = 0; k < idx.size(); ++k) {
            EXPECT_TRUE(idx[k].valid());
            EXPECT_EQ(flat_index(idx[k]), k);
        }
    }
    EXPECT_FALSE((HarmonicIndex{2, 0, Parity::sine}.valid()));
    EXPECT_FALSE((HarmonicIndex{2, 3, Parity::cosine}.valid()));
}

TEST(GaussLegendre, SmallRules)
{
    const auto r1 = gauss_legendre(1);
    ASSERT_EQ(r1.nodes.size(), 1u);
    EXPECT_NEAR(r1.nodes[0], 0.0, 1e-15);
    EXPECT_NEAR(r1.weights[0], 2.0, 1e-15);

    const auto r2 = gauss_legendre(2);
    EXPECT_NEAR(r2.nodes[0], -1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(r2.nodes[1], 1.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(r2.weights[0], 1.0, 1e-15);
    EXPECT_NEAR(r2.weights[1], 1.0, 1e-15);

    const auto r5 = gauss_legendre(5);
    double s = 0.0;
    for (std::size_t i = 0; i < 5; ++i)
        s += r5.weights[i] * std::pow(r5.nodes[i], 8);
    EXPECT_NEAR(s, 2.0 / 9.0, 1e-14);

    EXPECT_THROW(gauss_legendre(0), std::invalid_argument);
}

TEST(GaussLegendre, ExactToDegree2nMinus1)
{
    for (std::size_t n = 1; n <= 40; ++n) {
        const auto r = gauss_legendre(n);
        double wsum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            wsum += r.weights[i];
            if (i > 0)
                EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
            EXPECT_NEAR(r.nodes[i], -r.nodes[n - 1 - i], 1e-15);
        }
        EXPECT_NEAR(wsum, 2.0, 1e-14);
        for (std::size_t k = 0; k <= 2 * n - 1; ++k) {
            double q = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                q += r.weights[i] * std::pow(r.nodes[i], static_cast<double>(k));
            const double exact = (k % 2 == 1) ? 0.0 : 2.0 / static_cast<double>(k + 1);
            EXPECT_NEAR(q, exact, 1e-13 * std::max(1.0, std::abs(exact))) << "n=" << n << " k=" << k;
        }
    }
}

TEST(Harmonics, ConstantMode)
{
    for (int i = 0; i < 20; ++i)
        EXPECT_NEAR(eval_harmonic({0, 0, Parity::cosine}, uniform(-1.5, 1.5), uniform(0, 6.28)),
                    1.0 / std::sqrt(4.0 * kPi), 1e-15);
}

TEST(Harmonics, TetraHarmonicMatchesClosedForm)
{
    for (int i = 0; i < 1000; ++i) {
        const double th = uniform(-kPi / 2, kPi / 2), ph = uniform(0.0, 2.0 * kPi);
        const double y = eval_harmonic({3, 2, Parity::cosine}, th, ph);
        EXPECT_NEAR(y, ystar_formula(th, ph), 1e-14);
        EXPECT_NEAR(eval_harmonic({3, 2, Parity::cosine}, -th, ph), -y, 1e-14);
    }
    EXPECT_EQ(eval_harmonic({3, 2, Parity::cosine}, 0.0, 0.7), 0.0);
    const double thMax = std::atan(1.0 / std::sqrt(2.0));
    EXPECT_NEAR(eval_harmonic({3, 2, Parity::cosine}, thMax, 0.0),
                std::sqrt(105.0 / (16.0 * kPi)) * (1.0 / std::sqrt(3.0)) * (2.0 / 3.0), 1e-14);
}

TEST(Harmonics, DerivativeMatchesFiniteDifference)
{
    const int L = 10;
    const double h = 1e-6;
    for (int trial = 0; trial < 20; ++trial) {
        const double th = uniform(-1.3, 1.3);
        const LegendreTable t(L, std::sin(th)), tp(L, std::sin(th + h)), tm(L, std::sin(th - h));
        for (int l = 0; l <= L; ++l)
            for (int m = 0; m <= l; ++m)
                EXPECT_NEAR(t.dtheta(l, m), (tp.value(l, m) - tm.value(l, m)) / (2 * h), 1e-7);
    }
}

TEST(Grid, SizingFormula)
{
    const auto g6 = build_grid(6, 1.0);
    EXPECT_EQ(g6->n_theta(), 7u);
    EXPECT_EQ(g6->n_phi(), 13u);
    const auto g12 = build_grid(12, 2.0);
    EXPECT_EQ(g12->n_theta(), 26u);
    EXPECT_EQ(g12->n_phi(), 50u);
    EXPECT_EQ(build_grid(0, 1.0)->n_phi(), 4u);
    EXPECT_THROW(build_grid(3, 0.5), std::invalid_argument);
}

TEST(Grid, AreaWeightsSumToSphereArea)
{
    const auto g = build_grid(9, 1.5);
    GridField one(g);
    one.apply([](double) { return 1.0; });
    EXPECT_NEAR(one.integrate(), 4.0 * kPi, 1e-13);
}

TEST(Grid, Orthonormality)
{
    const int L = 8;
    const auto g = build_grid(2 * L, 1.0);
    const auto idx = harmonic_indices(L);
    std::vector<std::vector<double>> vals(idx.size(), std::vector<double>(g->size()));
    for (std::size_t k = 0; k < idx.size(); ++k)
        for (std::size_t i = 0; i < g->n_theta(); ++i)
            for (std::size_t j = 0; j < g->n_phi(); ++j)
                vals[k][i * g->n_phi() + j] = eval_harmonic(idx[k], g->theta_nodes()[i], g->phi_nodes()[j]);
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a; b < idx.size(); ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < g->n_theta(); ++i)
                for (std::size_t j = 0; j < g->n_phi(); ++j)
                    s += g->area_weight(i) * vals[a][i * g->n_phi() + j] * vals[b][i * g->n_phi() + j];
            EXPECT_NEAR(s, a == b ? 1.0 : 0.0, 1e-12);
        }
}

TEST(Grid, CartesianRoundTrip)
{
    for (int i = 0; i < 50; ++i) {
        const double th = uniform(-1.5, 1.5), ph = uniform(0.0, 2.0 * kPi);
        const auto [t2, p2] = to_spherical(to_cartesian(th, ph));
        EXPECT_NEAR(t2, th, 1e-13);
        EXPECT_NEAR(p2, ph, 1e-12);
    }
}
