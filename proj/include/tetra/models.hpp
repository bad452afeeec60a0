#pragma once

// The four nonlinearities, all written in the slot of
//     -Δψ + F(λ, ψ) = 0.
// Liouville's nonlocal mean term is not part of eval_F; the residual
// assembly subtracts the spherical mean.

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tetra {

enum class ModelKind { polynomial, sine, sinh, liouville };

struct ModelSpec {
    ModelKind kind = ModelKind::sine;
    double mu = 0.0;  // polynomial only
    double mu1 = 0.0; // polynomial only

    static ModelSpec polynomial(double mu, double mu1)
    {
        ModelSpec s{ModelKind::polynomial, mu, mu1};
        s.validate();
        return s;
    }
    static ModelSpec sine() { return {ModelKind::sine, 0.0, 0.0}; }
    static ModelSpec sinh() { return {ModelKind::sinh, 0.0, 0.0}; }
    static ModelSpec liouville() { return {ModelKind::liouville, 0.0, 0.0}; }

    void validate() const
    {
        if (kind == ModelKind::polynomial && !(mu > 0.0 && mu1 > 0.0))
            throw std::invalid_argument("polynomial model requires mu > 0 and mu1 > 0");
    }

    [[nodiscard]] bool mass_constrained() const noexcept { return kind == ModelKind::liouville; }
    /// F(λ, -ψ) = -F(λ, ψ).
    [[nodiscard]] bool odd() const noexcept { return kind == ModelKind::sine || kind == ModelKind::sinh; }
};

inline std::string_view to_string(ModelKind k) noexcept
{
    switch (k) {
    case ModelKind::polynomial: return "polynomial";
    case ModelKind::sine: return "sine";
    case ModelKind::sinh: return "sinh";
    case ModelKind::liouville: return "liouville";
    }
    return "unknown";
}

inline ModelKind parse_model_kind(std::string_view s)
{
    if (s == "polynomial")
        return ModelKind::polynomial;
    if (s == "sine")
        return ModelKind::sine;
    if (s == "sinh")
        return ModelKind::sinh;
    if (s == "liouville")
        return ModelKind::liouville;
    throw std::invalid_argument("unknown model '" + std::string(s) + "' (expected polynomial|sine|sinh|liouville)");
}

/// Taylor data of F at (λ*, 0): F(λ*, ψ) = -12 ψ + a2 ψ^2 + a3 ψ^3 + O(ψ^4).
struct TaylorData {
    double lambdaStar = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    double dA1dLambda = 0.0; // ∂λ ∂ψ F(λ*, 0)
    bool massConstrained = false;
};

inline double critical_lambda(const ModelSpec& spec)
{
    switch (spec.kind) {
    case ModelKind::polynomial:
        spec.validate();
        return std::sqrt(spec.mu / (3.0 * spec.mu1));
    case ModelKind::sine:
    case ModelKind::sinh: return 12.0;
    case ModelKind::liouville: return -12.0;
    }
    throw std::logic_error("critical_lambda: unreachable");
}

inline TaylorData taylor_data(const ModelSpec& spec)
{
    const double ls = critical_lambda(spec);
    switch (spec.kind) {
    case ModelKind::polynomial:
        // F = mu1 (3 λ ψ^2 + ψ^3) + (3 mu1 λ^2 - mu - 12) ψ
        return {ls, 3.0 * spec.mu1 * ls, spec.mu1, 6.0 * spec.mu1 * ls, false};
    case ModelKind::sine:
        // -λ sin ψ = -λ ψ + (λ/6) ψ^3 - ...
        return {ls, 0.0, ls / 6.0, -1.0, false};
    case ModelKind::sinh:
        // -λ sinh ψ = -λ ψ - (λ/6) ψ^3 - ...
        return {ls, 0.0, -ls / 6.0, -1.0, false};
    case ModelKind::liouville:
        // λ e^ψ = λ + λ ψ + (λ/2) ψ^2 + (λ/6) ψ^3 + ..., constant removed by the mean
        return {ls, ls / 2.0, ls / 6.0, 1.0, true};
    }
    throw std::logic_error("taylor_data: unreachable");
}

/// Pointwise F(λ, ψ); for liouville the local part λ e^ψ.
inline double eval_F(const ModelSpec& spec, double lambda, double psi)
{
    switch (spec.kind) {
    case ModelKind::polynomial:
        return spec.mu1 * (3.0 * lambda * psi * psi + psi * psi * psi) +
               (3.0 * spec.mu1 * lambda * lambda - (spec.mu + 12.0)) * psi;
    case ModelKind::sine: return -lambda * std::sin(psi);
    case ModelKind::sinh: return -lambda * std::sinh(psi);
    case ModelKind::liouville: return lambda * std::exp(psi);
    }
    throw std::logic_error("eval_F: unreachable");
}

/// ∂ψ F(λ, ψ).
inline double eval_dF(const ModelSpec& spec, double lambda, double psi)
{
    switch (spec.kind) {
    case ModelKind::polynomial:
        return spec.mu1 * (6.0 * lambda * psi + 3.0 * psi * psi) + 3.0 * spec.mu1 * lambda * lambda -
               (spec.mu + 12.0);
    case ModelKind::sine: return -lambda * std::cos(psi);
    case ModelKind::sinh: return -lambda * std::cosh(psi);
    case ModelKind::liouville: return lambda * std::exp(psi);
    }
    throw std::logic_error("eval_dF: unreachable");
}

/// ∂λ F(λ, ψ); used by the bordered continuation system.
inline double eval_dFdLambda(const ModelSpec& spec, double lambda, double psi)
{
    switch (spec.kind) {
    case ModelKind::polynomial: return spec.mu1 * (3.0 * psi * psi + 6.0 * lambda * psi);
    case ModelKind::sine: return -std::sin(psi);
    case ModelKind::sinh: return -std::sinh(psi);
    case ModelKind::liouville: return std::exp(psi);
    }
    throw std::logic_error("eval_dFdLambda: unreachable");
}

} // namespace tetra
