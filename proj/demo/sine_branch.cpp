// Reduce the sine-Gordon model, trace a short branch and compare the
// fitted curvature with the asymptotic one.

#include <cstdio>

#include "tetra/continuation.hpp"
#include "tetra/exactc.hpp"
#include "tetra/verify.hpp"

int main()
{
    using namespace tetra;
    const auto spec = ModelSpec::sine();
    const auto exactL2 = exact::lambda2_exact(spec);
    std::printf("lambda_2 exact %s = %.12f\n", exactL2.str().c_str(), exactL2.value());

    ContinuationConfig config;
    config.maxSteps = 16;
    const auto trace = continue_branch(spec, config);
    std::printf("%10s %14s %10s %10s\n", "epsilon", "lambda", "residual", "stationary");
    for (const auto& p : trace.positive)
        std::printf("%10.5f %14.9f %10.2e %10.2e\n", p.epsilon, p.lambda, p.residualNorm, check_stationarity(p.psi));

    std::printf("fitted lambda_2 %.6f, reduction %.6f\n", fit_lambda2(trace.all_points(), trace.reduction.lambdaStar),
                trace.reduction.lambda2);
}
