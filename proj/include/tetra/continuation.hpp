#pragma once

// Galerkin-Newton solver for -Δψ + F(λ, ψ) = 0 restricted to the tetrahedral
// subspace, and pseudo-arclength continuation of the bifurcating branch.
//
// Unknowns are the coordinates a of ψ = B a in an orthonormal basis B of the
// invariant subspace. With basis fields G = synth(B) on a pad-2 grid and
// quadrature weights w,
//     r_i(a, λ) = l_i (l_i + 1) a_i + Σ_p w_p G_pi F(λ, (G a)_p),
// which equals the projected Galerkin residual of `residual`.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "tetra/errors.hpp"
#include "tetra/models.hpp"
#include "tetra/projector.hpp"
#include "tetra/reduction.hpp"
#include "tetra/spectral.hpp"

namespace tetra {

struct ContinuationConfig {
    int L = 16;
    double pad = 2.0;
    double ds = 0.02;
    double dsMin = 1e-4;
    double dsMax = 0.1;
    int maxSteps = 30; // accepted points over both branches, seeds included
    double newtonTol = 1e-12;
    int maxNewton = 25;
    double epsilonSeed = 0.05;
    /// Relative energy beyond L tolerated for transcendental nonlinearities.
    double aliasTolerance = 1e-10;

    void validate() const
    {
        if (L < 6 || pad < 1.0 || ds <= 0.0 || dsMin <= 0.0 || dsMax < dsMin || maxSteps <= 0 ||
            newtonTol <= 0.0 || maxNewton <= 0 || epsilonSeed <= 0.0 || aliasTolerance <= 0.0)
            throw std::invalid_argument("ContinuationConfig: all parameters must be positive (L >= 6)");
    }
};

struct BranchPoint {
    double lambda = 0.0;
    double epsilon = 0.0; // <ψ, Y*>
    SpectralField psi;
    double residualNorm = 0.0;
    int newtonIters = 0;
};

/// Cached projector per band limit; construction is the only expensive step.
inline std::shared_ptr<const TetraProjector> shared_projector(int L)
{
    static std::mutex mtx;
    static std::map<int, std::shared_ptr<const TetraProjector>> cache;
    const std::lock_guard lock(mtx);
    auto it = cache.find(L);
    if (it == cache.end())
        it = cache.emplace(L, std::make_shared<const TetraProjector>(L)).first;
    return it->second;
}

/// Discretized problem on the invariant subspace for one model.
class GalerkinProblem {
public:
    GalerkinProblem(const ModelSpec& spec, int L, double pad = 2.0)
        : spec_(spec), L_(L), projector_(shared_projector(L)), grid_(build_grid(L, pad)), transform_(grid_, L)
    {
        spec_.validate();
        if (pad < 2.0)
            throw SizingError("GalerkinProblem: nonlinear evaluation needs pad >= 2");
        const bool drop = spec_.mass_constrained();
        basis_ = projector_->subspace_basis(drop);
        const auto degrees = projector_->subspace_degrees(drop);
        const auto d = static_cast<Eigen::Index>(degrees.size());
        eig_.resize(d);
        for (Eigen::Index i = 0; i < d; ++i)
            eig_(i) = static_cast<double>(degrees[static_cast<std::size_t>(i)] * (degrees[static_cast<std::size_t>(i)] + 1));

        const auto nGrid = static_cast<Eigen::Index>(grid_->size());
        G_.resize(nGrid, d);
        for (Eigen::Index c = 0; c < d; ++c) {
            const auto f = transform_.synthesize(to_field(Eigen::VectorXd::Unit(d, c)));
            for (Eigen::Index p = 0; p < nGrid; ++p)
                G_(p, c) = f.values()[static_cast<std::size_t>(p)];
        }
        w_.resize(nGrid);
        for (std::size_t i = 0; i < grid_->n_theta(); ++i)
            for (std::size_t j = 0; j < grid_->n_phi(); ++j)
                w_(static_cast<Eigen::Index>(i * grid_->n_phi() + j)) = grid_->area_weight(i);

        const auto yIdx = static_cast<Eigen::Index>(flat_index(kTetraHarmonic));
        for (Eigen::Index c = 0; c < d; ++c)
            if (std::abs(basis_(yIdx, c)) > 0.5)
                kernelCol_ = c;
        if (kernelCol_ < 0 || std::abs(basis_(yIdx, kernelCol_) - 1.0) > 1e-10)
            throw ConstructionError("GalerkinProblem: Y* is not a basis vector of the invariant subspace");
    }

    [[nodiscard]] const ModelSpec& model() const noexcept { return spec_; }
    [[nodiscard]] int band_limit() const noexcept { return L_; }
    [[nodiscard]] Eigen::Index dimension() const noexcept { return basis_.cols(); }
    [[nodiscard]] Eigen::Index kernel_column() const noexcept { return kernelCol_; }
    [[nodiscard]] const TetraProjector& projector() const noexcept { return *projector_; }
    [[nodiscard]] const std::shared_ptr<const Grid>& grid() const noexcept { return grid_; }
    [[nodiscard]] const SphericalTransform& transform() const noexcept { return transform_; }

    [[nodiscard]] SpectralField to_field(const Eigen::VectorXd& a) const
    {
        SpectralField out(L_);
        Eigen::Map<Eigen::VectorXd>(out.coeffs().data(), static_cast<Eigen::Index>(out.size())) = basis_ * a;
        return out;
    }

    [[nodiscard]] Eigen::VectorXd to_coords(const SpectralField& psi) const
    {
        const SpectralField u = psi.band_limit() == L_ ? psi : psi.resized(L_);
        const Eigen::Map<const Eigen::VectorXd> c(u.coeffs().data(), static_cast<Eigen::Index>(u.size()));
        return basis_.transpose() * c;
    }

    struct Linearization {
        Eigen::VectorXd r;
        Eigen::MatrixXd J;       // ∂r/∂a
        Eigen::VectorXd dLambda; // ∂r/∂λ
    };

    [[nodiscard]] Eigen::VectorXd reduced_residual(const Eigen::VectorXd& a, double lambda) const
    {
        const Eigen::VectorXd psi = G_ * a;
        Eigen::VectorXd F(psi.size());
        for (Eigen::Index p = 0; p < psi.size(); ++p)
            F(p) = eval_F(spec_, lambda, psi(p));
        if (spec_.mass_constrained())
            F.array() -= w_.dot(F) / (4.0 * std::numbers::pi);
        return eig_.cwiseProduct(a) + G_.transpose() * w_.cwiseProduct(F);
    }

    [[nodiscard]] Linearization linearize(const Eigen::VectorXd& a, double lambda) const
    {
        const Eigen::VectorXd psi = G_ * a;
        const auto n = psi.size();
        Eigen::VectorXd F(n), dF(n), dL(n);
        for (Eigen::Index p = 0; p < n; ++p) {
            F(p) = eval_F(spec_, lambda, psi(p));
            dF(p) = eval_dF(spec_, lambda, psi(p));
            dL(p) = eval_dFdLambda(spec_, lambda, psi(p));
        }
        const double fourPi = 4.0 * std::numbers::pi;
        Linearization lin;
        Eigen::MatrixXd wdFG = (w_.cwiseProduct(dF)).asDiagonal() * G_;
        if (spec_.mass_constrained()) {
            F.array() -= w_.dot(F) / fourPi;
            dL.array() -= w_.dot(dL) / fourPi;
        }
        lin.r = eig_.cwiseProduct(a) + G_.transpose() * w_.cwiseProduct(F);
        lin.J = G_.transpose() * wdFG;
        lin.J.diagonal() += eig_;
        if (spec_.mass_constrained()) {
            // rank-one term from the nonlocal mean: -(G^T w)(w^T dF G)/(4 pi)
            const Eigen::VectorXd gw = G_.transpose() * w_;
            const Eigen::RowVectorXd meanRow = (w_.cwiseProduct(dF)).transpose() * G_ / fourPi;
            lin.J -= gw * meanRow;
        }
        lin.dLambda = G_.transpose() * w_.cwiseProduct(dL);
        return lin;
    }

    /// Energy of F(λ, ψ) beyond degree L relative to its non-constant energy.
    [[nodiscard]] double alias_tail_ratio(const SpectralField& psi, double lambda) const
    {
        if (spec_.kind == ModelKind::polynomial)
            return 0.0; // cubic products are resolved exactly on the pad-2 grid
        const int Ltail = grid_->max_exact_degree();
        if (Ltail <= L_)
            return 0.0;
        const SphericalTransform wide(grid_, Ltail);
        GridField f = transform_.synthesize(psi.resized(L_));
        f.apply([&](double v) { return eval_F(spec_, lambda, v); });
        const SpectralField c = wide.analyze(f);
        double total = 0.0, tail = 0.0;
        for (std::size_t k = 1; k < c.size(); ++k) {
            const double e = c[k] * c[k];
            total += e;
            if (harmonic_at(k).l > L_)
                tail += e;
        }
        // a constant F leaves only roundoff outside l = 0
        if (!(total > 1e-24 * c[0] * c[0]))
            return 0.0;
        return tail / total;
    }

    void check_alias(const SpectralField& psi, double lambda, double tol) const
    {
        const double ratio = alias_tail_ratio(psi, lambda);
        if (ratio > tol)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3e", ratio);
            throw AliasError("nonlinearity tail beyond band limit " + std::to_string(L_) +
                                 " carries relative energy " + buf,
                             ratio);
        }
    }

private:
    ModelSpec spec_;
    int L_;
    std::shared_ptr<const TetraProjector> projector_;
    std::shared_ptr<const Grid> grid_;
    SphericalTransform transform_;
    Eigen::MatrixXd basis_;
    Eigen::VectorXd eig_;
    Eigen::MatrixXd G_;
    Eigen::VectorXd w_;
    Eigen::Index kernelCol_ = -1;
};

/// Projected Galerkin residual of -Δψ + F(λ, ψ), full coefficient space.
/// For liouville the spherical mean is removed and the (0,0) coefficient
/// zeroed.
inline SpectralField residual(const ModelSpec& spec, double lambda, const SpectralField& psi, double pad = 2.0,
                              double aliasTolerance = 1e-10)
{
    const int L = psi.band_limit();
    const auto proj = shared_projector(L);
    const SpectralField u = proj->apply(psi);
    const GalerkinProblem problem(spec, std::max(L, 6), pad);
    if (L >= 6)
        problem.check_alias(u, lambda, aliasTolerance);

    const auto grid = build_grid(L, pad);
    const SphericalTransform tr(grid, L);
    GridField f = tr.synthesize(u);
    f.apply([&](double v) { return eval_F(spec, lambda, v); });
    SpectralField r = tr.analyze(f) - laplacian(u);
    if (spec.mass_constrained())
        r[HarmonicIndex{0, 0, Parity::cosine}] = 0.0;
    return proj->apply(r);
}

struct NewtonResult {
    bool converged = false;
    BranchPoint point;
    double lastResidual = 0.0;
    std::string message;
};

/// Newton at fixed λ on the subspace coordinates.
inline NewtonResult newton_solve(const GalerkinProblem& problem, double lambda, const SpectralField& psi0,
                                 const ContinuationConfig& config)
{
    Eigen::VectorXd a = problem.to_coords(psi0);
    NewtonResult out;
    for (int it = 0; it <= config.maxNewton; ++it) {
        const auto lin = problem.linearize(a, lambda);
        const double rn = lin.r.norm();
        out.lastResidual = rn;
        if (rn < config.newtonTol) {
            out.converged = true;
            out.point.lambda = lambda;
            out.point.psi = problem.to_field(a);
            out.point.epsilon = a(problem.kernel_column());
            out.point.residualNorm = rn;
            out.point.newtonIters = it;
            return out;
        }
        if (it == config.maxNewton)
            break;
        const Eigen::VectorXd step = lin.J.fullPivLu().solve(-lin.r);
        if (!step.allFinite())
            break;
        a += step;
    }
    out.message = "newton did not converge: last residual " + std::to_string(out.lastResidual);
    return out;
}

inline NewtonResult newton_solve(const ModelSpec& spec, double lambda, const SpectralField& psi0,
                                 const ContinuationConfig& config)
{
    const GalerkinProblem problem(spec, config.L, config.pad);
    return newton_solve(problem, lambda, psi0.resized(config.L), config);
}

namespace detail {

// Newton on r(a, λ) = 0 bordered by the linear constraint c^T (a, λ) = rhs.
struct BorderedOutcome {
    bool converged = false;
    Eigen::VectorXd a;
    double lambda = 0.0;
    double residual = 0.0;
    int iters = 0;
};

inline BorderedOutcome bordered_newton(const GalerkinProblem& problem, Eigen::VectorXd a, double lambda,
                                       const Eigen::VectorXd& constraint, double rhs, const ContinuationConfig& config)
{
    const auto d = problem.dimension();
    BorderedOutcome out;
    for (int it = 0; it <= config.maxNewton; ++it) {
        const auto lin = problem.linearize(a, lambda);
        const double cval = constraint.head(d).dot(a) + constraint(d) * lambda - rhs;
        out.residual = lin.r.norm();
        if (out.residual < config.newtonTol && std::abs(cval) < config.newtonTol) {
            out.converged = true;
            out.a = a;
            out.lambda = lambda;
            out.iters = it;
            return out;
        }
        if (it == config.maxNewton)
            break;
        Eigen::MatrixXd M(d + 1, d + 1);
        M.topLeftCorner(d, d) = lin.J;
        M.topRightCorner(d, 1) = lin.dLambda;
        M.bottomRows(1) = constraint.transpose();
        Eigen::VectorXd rhsVec(d + 1);
        rhsVec.head(d) = -lin.r;
        rhsVec(d) = -cval;
        const Eigen::VectorXd step = M.fullPivLu().solve(rhsVec);
        if (!step.allFinite())
            break;
        a += step.head(d);
        lambda += step(d);
    }
    return out;
}

} // namespace detail

struct BranchTrace {
    ModelSpec model;
    ReductionResult reduction;
    std::vector<BranchPoint> positive; // seeded at +epsilonSeed
    std::vector<BranchPoint> negative; // seeded at -epsilonSeed
    bool degenerateSeed = false;
    std::string positiveStop;
    std::string negativeStop;

    [[nodiscard]] std::vector<BranchPoint> all_points() const
    {
        std::vector<BranchPoint> out = positive;
        out.insert(out.end(), negative.begin(), negative.end());
        return out;
    }
};

namespace detail {

inline BranchPoint make_point(const GalerkinProblem& problem, const BorderedOutcome& o)
{
    BranchPoint p;
    p.lambda = o.lambda;
    p.psi = problem.to_field(o.a);
    p.epsilon = o.a(problem.kernel_column());
    p.residualNorm = o.residual;
    p.newtonIters = o.iters;
    return p;
}

inline std::vector<BranchPoint> trace_one(const GalerkinProblem& problem, const ReductionResult& red, double sign,
                                          int maxPoints, const ContinuationConfig& config, bool degenerate,
                                          std::string& stop)
{
    const auto d = problem.dimension();
    const auto kc = problem.kernel_column();
    const double eps0 = sign * config.epsilonSeed;

    // seed: asymptotic predictor corrected at fixed amplitude <ψ, Y*> = eps0
    const SpectralField Y = tetra_harmonic(problem.band_limit());
    const SpectralField psi2 = red.psi2.resized(problem.band_limit());
    Eigen::VectorXd a = problem.to_coords(eps0 * Y + eps0 * eps0 * psi2);
    double lambda = red.lambdaStar + red.lambda2 * eps0 * eps0;
    Eigen::VectorXd amp = Eigen::VectorXd::Zero(d + 1);
    amp(kc) = 1.0;
    auto seed = bordered_newton(problem, a, lambda, amp, eps0, config);
    if (!seed.converged)
        throw NumericalFailure("continue_branch: seed Newton failed at epsilon " + std::to_string(eps0) +
                               " (residual " + std::to_string(seed.residual) + ")");
    problem.check_alias(problem.to_field(seed.a), seed.lambda, config.aliasTolerance);

    std::vector<BranchPoint> pts{make_point(problem, seed)};
    Eigen::VectorXd prev(d + 1), cur(d + 1);
    cur << seed.a, seed.lambda;

    // initial tangent: direction of increasing |ε| along the solution curve
    Eigen::VectorXd tangent(d + 1);
    {
        const auto lin = problem.linearize(seed.a, seed.lambda);
        Eigen::MatrixXd M(d + 1, d + 1);
        M.topLeftCorner(d, d) = lin.J;
        M.topRightCorner(d, 1) = lin.dLambda;
        M.bottomRows(1) = amp.transpose();
        Eigen::VectorXd e = Eigen::VectorXd::Zero(d + 1);
        e(d) = sign;
        tangent = M.fullPivLu().solve(e);
        tangent.normalize();
    }

    double ds = config.ds;
    int easy = 0;
    while (static_cast<int>(pts.size()) < maxPoints) {
        BorderedOutcome o;
        if (degenerate) {
            // natural-parameter stepping in the amplitude
            const double target = cur(kc) + sign * ds;
            o = bordered_newton(problem, cur.head(d), cur(d), amp, target, config);
        } else {
            const Eigen::VectorXd pred = cur + ds * tangent;
            const double rhs = tangent.dot(pred);
            o = bordered_newton(problem, pred.head(d), pred(d), tangent, rhs, config);
        }
        if (!o.converged) {
            ds *= 0.5;
            easy = 0;
            if (ds < config.dsMin) {
                stop = "step size fell below minimum after Newton failures";
                break;
            }
            continue;
        }
        try {
            problem.check_alias(problem.to_field(o.a), o.lambda, config.aliasTolerance);
        } catch (const AliasError& e) {
            stop = e.what();
            break;
        }
        pts.push_back(make_point(problem, o));
        prev = cur;
        cur << o.a, o.lambda;
        tangent = (cur - prev).normalized(); // secant predictor
        // an easy step converges in at most two corrections
        easy = o.iters <= 2 ? easy + 1 : 0;
        if (easy >= 3) {
            ds = std::min(2.0 * ds, config.dsMax);
            easy = 0;
        }
    }
    if (stop.empty())
        stop = "reached maxSteps";
    return pts;
}

} // namespace detail

inline BranchTrace continue_branch(const ModelSpec& spec, const ContinuationConfig& config = {})
{
    config.validate();
    BranchTrace trace;
    trace.model = spec;
    trace.reduction = reduce(spec, config.L);
    trace.degenerateSeed = std::abs(trace.reduction.lambda2) < 1e-8;
    const GalerkinProblem problem(spec, config.L, config.pad);
    const int half = config.maxSteps / 2;
    trace.positive = detail::trace_one(problem, trace.reduction, +1.0, config.maxSteps - half, config,
                                       trace.degenerateSeed, trace.positiveStop);
    if (half > 0)
        trace.negative = detail::trace_one(problem, trace.reduction, -1.0, half, config, trace.degenerateSeed,
                                           trace.negativeStop);
    return trace;
}

/// Solution with prescribed amplitude <ψ, Y*> = epsilon, started from the
/// asymptotic predictor. epsilon = 0 returns the trivial solution at λ*.
inline BranchPoint solve_at_amplitude(const ModelSpec& spec, double epsilon, const ContinuationConfig& config = {})
{
    config.validate();
    const ReductionResult red = reduce(spec, config.L);
    if (epsilon == 0.0) {
        BranchPoint p;
        p.lambda = red.lambdaStar;
        p.psi = SpectralField(config.L);
        return p;
    }
    const GalerkinProblem problem(spec, config.L, config.pad);
    const auto d = problem.dimension();
    const SpectralField Y = tetra_harmonic(config.L);
    const Eigen::VectorXd a = problem.to_coords(epsilon * Y + epsilon * epsilon * red.psi2.resized(config.L));
    Eigen::VectorXd amp = Eigen::VectorXd::Zero(d + 1);
    amp(problem.kernel_column()) = 1.0;
    const auto o = detail::bordered_newton(problem, a, red.lambdaStar + red.lambda2 * epsilon * epsilon, amp,
                                           epsilon, config);
    if (!o.converged)
        throw NumericalFailure("solve_at_amplitude: Newton failed at epsilon " + std::to_string(epsilon) +
                               " (residual " + std::to_string(o.residual) + ")");
    problem.check_alias(problem.to_field(o.a), o.lambda, config.aliasTolerance);
    return detail::make_point(problem, o);
}

/// Least-squares slope of λ - λ* against ε^2 through the origin, using points
/// with |ε| <= maxEpsilon.
inline double fit_lambda2(const std::vector<BranchPoint>& branch, double lambdaStar, double maxEpsilon = 0.15)
{
    double num = 0.0, den = 0.0;
    int used = 0;
    for (const auto& p : branch) {
        if (std::abs(p.epsilon) > maxEpsilon)
            continue;
        const double e2 = p.epsilon * p.epsilon;
        num += e2 * (p.lambda - lambdaStar);
        den += e2 * e2;
        ++used;
    }
    if (used < 5)
        throw std::invalid_argument("fit_lambda2: need at least 5 points with |epsilon| <= " +
                                    std::to_string(maxEpsilon) + ", got " + std::to_string(used));
    return num / den;
}

} // namespace tetra
