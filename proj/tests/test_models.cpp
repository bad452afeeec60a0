#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "tetra/models.hpp"

using namespace tetra;
using tetra::testing::uniform;

namespace {
std::vector<ModelSpec> all_models()
{
    return {ModelSpec::polynomial(3.0, 1.0), ModelSpec::polynomial(0.4, 2.5), ModelSpec::sine(), ModelSpec::sinh(),
            ModelSpec::liouville()};
}
} // namespace

TEST(Models, CriticalLambda)
{
    EXPECT_NEAR(critical_lambda(ModelSpec::polynomial(3.0, 1.0)), 1.0, 1e-15);
    EXPECT_NEAR(critical_lambda(ModelSpec::polynomial(2.0, 1.5)), std::sqrt(2.0 / 4.5), 1e-15);
    EXPECT_EQ(critical_lambda(ModelSpec::sine()), 12.0);
    EXPECT_EQ(critical_lambda(ModelSpec::sinh()), 12.0);
    EXPECT_EQ(critical_lambda(ModelSpec::liouville()), -12.0);
}

TEST(Models, Validation)
{
    EXPECT_THROW(ModelSpec::polynomial(0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(ModelSpec::polynomial(1.0, -1.0), std::invalid_argument);
    EXPECT_THROW(parse_model_kind("cosine"), std::invalid_argument);
    EXPECT_EQ(parse_model_kind("liouville"), ModelKind::liouville);
    for (auto k : {ModelKind::polynomial, ModelKind::sine, ModelKind::sinh, ModelKind::liouville})
        EXPECT_EQ(parse_model_kind(to_string(k)), k);
}

TEST(Models, TaylorData)
{
    const auto p = taylor_data(ModelSpec::polynomial(3.0, 1.0));
    EXPECT_NEAR(p.a2, 3.0, 1e-15);
    EXPECT_NEAR(p.a3, 1.0, 1e-15);
    EXPECT_NEAR(p.dA1dLambda, 6.0, 1e-15);
    EXPECT_NEAR(taylor_data(ModelSpec::sine()).a3, 2.0, 1e-15);
    EXPECT_EQ(taylor_data(ModelSpec::sine()).a2, 0.0);
    EXPECT_NEAR(taylor_data(ModelSpec::sinh()).a3, -2.0, 1e-15);
    const auto l = taylor_data(ModelSpec::liouville());
    EXPECT_NEAR(l.a2, -6.0, 1e-15);
    EXPECT_NEAR(l.a3, -2.0, 1e-15);
    EXPECT_EQ(l.dA1dLambda, 1.0);
    EXPECT_TRUE(l.massConstrained);
}

TEST(Models, KernelCondition)
{
    for (const auto& s : all_models())
        EXPECT_NEAR(eval_dF(s, critical_lambda(s), 0.0), -12.0, 1e-12) << to_string(s.kind);
}

TEST(Models, TaylorCoefficientsMatchFiniteDifferences)
{
    for (const auto& s : all_models()) {
        const auto td = taylor_data(s);
        const double h = 1e-3;
        const auto F = [&](double v) { return eval_F(s, td.lambdaStar, v); };
        const double second = (F(h) - 2 * F(0) + F(-h)) / (2 * h * h);
        const double third = (F(2 * h) - 2 * F(h) + 2 * F(-h) - F(-2 * h)) / (12 * h * h * h);
        EXPECT_NEAR(second, td.a2, 1e-5) << to_string(s.kind);
        EXPECT_NEAR(third, td.a3, 1e-4) << to_string(s.kind);
        const double dl = 1e-6;
        const double mixed = (eval_dF(s, td.lambdaStar + dl, 0.0) - eval_dF(s, td.lambdaStar - dl, 0.0)) / (2 * dl);
        EXPECT_NEAR(mixed, td.dA1dLambda, 1e-7);
    }
}

TEST(Models, DerivativesMatchFiniteDifferences)
{
    const double h = 1e-5;
    for (const auto& s : all_models())
        for (int k = 0; k < 50; ++k) {
            const double lam = critical_lambda(s) + uniform(-0.5, 0.5), v = uniform(-1.0, 1.0);
            EXPECT_NEAR((eval_F(s, lam, v + h) - eval_F(s, lam, v - h)) / (2 * h), eval_dF(s, lam, v), 1e-8);
            EXPECT_NEAR((eval_F(s, lam + h, v) - eval_F(s, lam - h, v)) / (2 * h), eval_dFdLambda(s, lam, v), 1e-8);
        }
}

TEST(Models, TrivialBranch)
{
    for (const auto& s : all_models()) {
        const double lam = uniform(-3, 3);
        EXPECT_EQ(eval_F(s, lam, 0.0), s.mass_constrained() ? lam : 0.0);
    }
}

TEST(Models, OddParity)
{
    for (const auto& s : {ModelSpec::sine(), ModelSpec::sinh()}) {
        EXPECT_TRUE(s.odd());
        for (int k = 0; k < 50; ++k) {
            const double lam = uniform(5, 15), v = uniform(-2, 2);
            EXPECT_EQ(eval_F(s, lam, -v), -eval_F(s, lam, v));
        }
    }
    EXPECT_FALSE(ModelSpec::liouville().odd());
}

TEST(Models, PolynomialShiftIdentity)
{
    for (int k = 0; k < 200; ++k) {
        const double mu = uniform(0.1, 5), mu1 = uniform(0.1, 5);
        const auto s = ModelSpec::polynomial(mu, mu1);
        const auto P = [&](double x) { return mu1 * x * x * x - (mu + 12.0) * x; };
        const double lam = uniform(-2, 2), v = uniform(-2, 2);
        EXPECT_NEAR(eval_F(s, lam, v), P(lam + v) - P(lam), 1e-12 * std::max(1.0, std::abs(P(lam + v))));
    }
}
