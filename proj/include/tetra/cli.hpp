#pragma once

// Report builders behind the tetra_bifurc command line: JSON for constants
// and reductions, CSV for branches and fields, SVG for field plots.

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tetra/continuation.hpp"
#include "tetra/exactc.hpp"
#include "tetra/reduction.hpp"
#include "tetra/svg.hpp"
#include "tetra/verify.hpp"

namespace tetra::cli {

enum ExitCode : int { kSuccess = 0, kMismatch = 1, kUsage = 2, kFailure = 3 };

using json = nlohmann::ordered_json;

inline constexpr double kConstantTolerance = 1e-12;

inline std::string g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string sign_char(double v) { return v > 0 ? "+" : (v < 0 ? "-" : "0"); }

inline json model_json(const ModelSpec& spec)
{
    json j;
    j["model"] = std::string(to_string(spec.kind));
    if (spec.kind == ModelKind::polynomial) {
        j["mu"] = spec.mu;
        j["mu1"] = spec.mu1;
    }
    return j;
}

struct ConstantsReport {
    json document;
    bool ok = false;
};

/// Exact constants against quadrature, printed values against exact ones,
/// and the sign table.
inline ConstantsReport verify_constants(const ModelSpec& polynomial = ModelSpec::polynomial(3.0, 1.0))
{
    const auto t0 = std::chrono::steady_clock::now();
    const double pi = std::numbers::pi;
    const exact::WeightTable table = exact::compute_weight_table();
    const exact::PublishedConstants published;

    const int L = 12;
    const auto grid = build_grid(L, 2.0);
    const SphericalTransform tr(grid, L);
    GridField y2 = tr.synthesize(tetra_harmonic(L));
    y2.apply([](double v) { return v * v; });
    const SpectralField c = tr.analyze(y2);

    json doc;
    json mismatches = json::array();
    bool ok = true;

    json weights = json::array();
    for (const auto& e : table.entries()) {
        const double q = c[HarmonicIndex{e.l, e.m, Parity::cosine}];
        const double exactC = table.coefficient(e.l, e.m);
        const double diff = std::abs(q - exactC);
        json w;
        w["l"] = e.l;
        w["m"] = e.m;
        w["c_squared_times_pi"] = exact::to_string(e.q);
        w["sign"] = e.sign;
        w["exact"] = exactC;
        w["quadrature"] = q;
        w["abs_diff"] = diff;
        weights.push_back(w);
        if (!(diff < kConstantTolerance)) {
            ok = false;
            mismatches.push_back("weight (" + std::to_string(e.l) + "," + std::to_string(e.m) + ")");
        }
    }
    double offTable = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        const auto h = harmonic_at(k);
        bool listed = h.parity == Parity::cosine && (h.m == 0 || h.m == 4) && (h.l == 0 || h.l == 2 || h.l == 4 || h.l == 6);
        if (!listed)
            offTable = std::max(offTable, std::abs(c[k]));
    }
    doc["weights"] = weights;
    doc["off_table_max_abs"] = offTable;

    const auto degreeSum = [&](int l) {
        double s = 0.0;
        for (double v : c.degree(l))
            s += v * v;
        return s;
    };
    double resolventQ = 0.0;
    for (int l = 0; l <= L; ++l)
        if (l != 3)
            resolventQ += degreeSum(l) / (12.0 - l * (l + 1));

    struct Row {
        std::string name;
        exact::Rational exactQ;
        double quadrature;
        std::optional<exact::Rational> printed;
    };
    const std::vector<Row> rows{
        {"c_2_0_squared", table.at(2, 0).q, degreeSum(2), std::nullopt},
        {"c_0_0_squared", table.at(0, 0).q, degreeSum(0), published.c00},
        {"degree_4_weight_sum", table.degree_sum(4), degreeSum(4), published.degree4},
        {"degree_6_weight_sum", table.degree_sum(6), degreeSum(6), published.degree6},
        {"quartic_integral", exact::quartic_integral(table), c.norm2(), std::nullopt},
        {"resolvent_sum", exact::resolvent_sum(table), resolventQ, published.resolvent},
    };
    json constants = json::array();
    for (const auto& r : rows) {
        json j;
        j["name"] = r.name;
        j["exact_over_pi"] = exact::to_string(r.exactQ);
        j["value"] = exact::to_double(r.exactQ) / pi;
        j["quadrature"] = r.quadrature;
        j["abs_diff"] = std::abs(r.quadrature - exact::to_double(r.exactQ) / pi);
        if (!(j["abs_diff"].get<double>() < kConstantTolerance)) {
            ok = false;
            mismatches.push_back(r.name + " quadrature");
        }
        if (r.printed) {
            const bool same = *r.printed == r.exactQ;
            j["published_over_pi"] = exact::to_string(*r.printed);
            j["published_value"] = exact::to_double(*r.printed) / pi;
            j["published_abs_diff"] = std::abs(r.quadrature - exact::to_double(*r.printed) / pi);
            j["published_matches"] = same;
            if (!same) {
                ok = false;
                mismatches.push_back(r.name + " published " + exact::to_string(*r.printed) + " vs computed " +
                                     exact::to_string(r.exactQ));
            }
        }
        constants.push_back(j);
    }
    doc["constants"] = constants;
    doc["c_2_0_quadrature_abs"] = std::abs(c[HarmonicIndex{2, 0, Parity::cosine}]);

    const std::map<std::string, std::string> expected{
        {"polynomial", "-"}, {"sine", "+"}, {"sinh", "-"}, {"liouville", "+"}};
    json signs, lambda2;
    for (const auto& spec : {polynomial, ModelSpec::sine(), ModelSpec::sinh(), ModelSpec::liouville()}) {
        const auto name = std::string(to_string(spec.kind));
        const auto red = reduce(spec);
        const auto ex = exact::lambda2_exact(spec, table);
        signs[name] = sign_char(red.lambda2);
        json l2;
        l2["exact"] = ex.str();
        l2["exact_value"] = ex.value();
        l2["quadrature"] = red.lambda2;
        l2["abs_diff"] = std::abs(red.lambda2 - ex.value());
        lambda2[name] = l2;
        if (signs[name] != expected.at(name)) {
            ok = false;
            mismatches.push_back("sign of lambda_2 for " + name);
        }
    }
    doc["polynomial_parameters"] = model_json(polynomial);
    doc["lambda_2"] = lambda2;
    doc["sign_table"] = signs;
    doc["expected_sign_table"] = expected;
    doc["mismatches"] = mismatches;
    doc["ok"] = ok;
    doc["runtime_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {doc, ok};
}

inline json reduce_report(const ModelSpec& spec, int L = 12)
{
    const ReductionResult red = reduce(spec, L);
    json doc = model_json(spec);
    doc["L"] = L;
    doc["lambda_star"] = red.lambdaStar;
    doc["lambda_1"] = red.lambda1;
    doc["lambda_2"] = red.lambda2;
    const auto ex = exact::lambda2_exact(spec);
    doc["lambda_2_exact"] = ex.str();
    doc["lambda_2_exact_value"] = ex.value();
    json psi2 = json::array();
    for (std::size_t k = 0; k < red.psi2.size(); ++k) {
        if (std::abs(red.psi2[k]) < 1e-14)
            continue;
        const auto h = harmonic_at(k);
        psi2.push_back({{"l", h.l}, {"m", h.m}, {"parity", h.parity == Parity::cosine ? "cos" : "sin"},
                        {"coeff", red.psi2[k]}});
    }
    doc["psi2"] = psi2;
    return doc;
}

/// Points of both branches ordered by amplitude, negative side first.
inline std::vector<BranchPoint> ordered_points(const BranchTrace& trace)
{
    std::vector<BranchPoint> out(trace.negative.rbegin(), trace.negative.rend());
    out.insert(out.end(), trace.positive.begin(), trace.positive.end());
    return out;
}

inline void write_branch_csv(std::ostream& os, const BranchTrace& trace)
{
    os << "step,lambda,epsilon,residual_norm,newton_iters,even_part_norm\n";
    int step = 0;
    for (const auto& p : ordered_points(trace))
        os << step++ << ',' << g17(p.lambda) << ',' << g17(p.epsilon) << ',' << g17(p.residualNorm) << ','
           << p.newtonIters << ',' << g17(equator_even_part(p.psi).norm()) << '\n';
    std::string fitted = "nan";
    try {
        fitted = g17(fit_lambda2(trace.all_points(), trace.reduction.lambdaStar));
    } catch (const std::invalid_argument&) {
    }
    os << "# fitted_lambda2=" << fitted << " reduction_lambda2=" << g17(trace.reduction.lambda2)
       << " positive_stop=\"" << trace.positiveStop << "\" negative_stop=\"" << trace.negativeStop << "\"\n";
}

/// Field at amplitude epsilon: the asymptotic predictor, or a converged
/// solution when solve is set.
inline BranchPoint field_at(const ModelSpec& spec, double epsilon, bool solve, const ContinuationConfig& config)
{
    if (solve)
        return solve_at_amplitude(spec, epsilon, config);
    const ReductionResult red = reduce(spec, config.L);
    BranchPoint p;
    p.lambda = red.lambdaStar + red.lambda2 * epsilon * epsilon;
    p.psi = epsilon * tetra_harmonic(config.L) + epsilon * epsilon * red.psi2.resized(config.L);
    p.epsilon = epsilon;
    return p;
}

inline void write_field_csv(std::ostream& os, const SpectralField& psi, const std::vector<CriticalPoint>& extrema)
{
    const LatLonSamples s = sample_lat_lon(psi);
    os << "theta,phi,value\n";
    for (int i = 0; i < s.nLat; ++i)
        for (int j = 0; j + 1 < s.nLon; ++j) // the 2 pi seam duplicates phi = 0
            os << g17(s.theta[static_cast<std::size_t>(i)]) << ',' << g17(s.phi[static_cast<std::size_t>(j)]) << ','
               << g17(s.at(i, j)) << '\n';
    for (const auto& c : extrema)
        os << "# extremum," << g17(c.theta) << ',' << g17(c.phi) << ',' << g17(c.value) << ','
           << (c.maximum ? "max" : "min") << '\n';
}

inline void write_field_svg(std::ostream& os, const SpectralField& psi, const std::vector<CriticalPoint>& extrema,
                            const std::string& title)
{
    ContourOptions opt;
    opt.title = title;
    write_contour_svg(os, sample_lat_lon(psi), extrema, opt);
}

/// Opens path for writing or throws with the path in the message.
inline std::ofstream open_output(const std::string& path)
{
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    return f;
}

} // namespace tetra::cli
