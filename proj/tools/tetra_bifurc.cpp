#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "tetra/cli.hpp"

namespace {

using namespace tetra;

struct ModelArgs {
    std::string model = "sine";
    double mu = 0.0;
    double mu1 = 0.0;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--model", model, "polynomial | sine | sinh | liouville")->required();
        cmd->add_option("--mu", mu, "polynomial mu > 0");
        cmd->add_option("--mu1", mu1, "polynomial mu1 > 0");
    }

    [[nodiscard]] ModelSpec spec() const
    {
        ModelSpec s{parse_model_kind(model), mu, mu1};
        s.validate();
        return s;
    }
};

// Writes to --out when given, else stdout.
template <class Fn>
void emit(const std::string& out, Fn&& fn)
{
    if (out.empty()) {
        fn(std::cout);
        return;
    }
    auto f = cli::open_output(out);
    fn(f);
    if (!f)
        throw std::runtime_error("write to '" + out + "' failed");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Tetrahedral bifurcation of stationary Euler flows on the sphere"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify-constants", "exact spectral constants against quadrature");
    std::string verifyOut;
    double vMu = 3.0, vMu1 = 1.0;
    verify->add_option("--mu", vMu, "polynomial mu for the sign table");
    verify->add_option("--mu1", vMu1, "polynomial mu1 for the sign table");
    verify->add_option("--out", verifyOut, "JSON output path");

    auto* reduceCmd = app.add_subcommand("reduce", "Liapunov-Schmidt coefficients");
    ModelArgs reduceArgs;
    reduceArgs.attach(reduceCmd);
    int reduceL = 12;
    std::string reduceOut;
    reduceCmd->add_option("--L", reduceL, "band limit (>= 6)");
    reduceCmd->add_option("--out", reduceOut, "JSON output path");

    auto* branch = app.add_subcommand("branch", "pseudo-arclength continuation of both branches");
    ModelArgs branchArgs;
    branchArgs.attach(branch);
    ContinuationConfig config;
    std::string branchOut;
    branch->add_option("--L", config.L, "band limit");
    branch->add_option("--steps", config.maxSteps, "accepted points over both branches");
    branch->add_option("--ds", config.ds, "initial arclength step");
    branch->add_option("--epsilon", config.epsilonSeed, "seed amplitude");
    branch->add_option("--out", branchOut, "CSV output path");

    auto* field = app.add_subcommand("field", "stream function at a given amplitude");
    ModelArgs fieldArgs;
    fieldArgs.attach(field);
    double epsilon = 0.1;
    bool solve = false;
    std::string format = "svg", fieldOut;
    int fieldL = 16;
    field->add_option("--epsilon", epsilon, "amplitude <psi, Y*>");
    field->add_flag("--solve", solve, "converge the full nonlinear problem instead of the predictor");
    field->add_option("--format", format, "csv | svg")->check(CLI::IsMember({"csv", "svg"}));
    field->add_option("--L", fieldL, "band limit");
    field->add_option("--out", fieldOut, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? cli::kSuccess : cli::kUsage;
    }

    try {
        if (verify->parsed()) {
            const auto report = cli::verify_constants(ModelSpec::polynomial(vMu, vMu1));
            emit(verifyOut, [&](std::ostream& os) { os << report.document.dump(2) << '\n'; });
            if (!report.ok) {
                std::cerr << "verify-constants: mismatches:\n";
                for (const auto& m : report.document["mismatches"])
                    std::cerr << "  " << m.get<std::string>() << '\n';
            }
            return report.ok ? cli::kSuccess : cli::kMismatch;
        }
        if (reduceCmd->parsed()) {
            const auto doc = cli::reduce_report(reduceArgs.spec(), reduceL);
            emit(reduceOut, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
            return cli::kSuccess;
        }
        if (branch->parsed()) {
            const auto trace = continue_branch(branchArgs.spec(), config);
            emit(branchOut, [&](std::ostream& os) { cli::write_branch_csv(os, trace); });
            return cli::kSuccess;
        }
        if (field->parsed()) {
            ContinuationConfig fc;
            fc.L = fieldL;
            const auto spec = fieldArgs.spec();
            const auto point = cli::field_at(spec, epsilon, solve, fc);
            const auto extrema = vortex_geometry(point.psi);
            emit(fieldOut, [&](std::ostream& os) {
                if (format == "csv") {
                    cli::write_field_csv(os, point.psi, extrema);
                } else {
                    const std::string title = std::string(to_string(spec.kind)) + "  epsilon = " + cli::g17(epsilon) +
                                              "  lambda = " + cli::g17(point.lambda) + (solve ? "  (solved)" : "  (predictor)");
                    cli::write_field_svg(os, point.psi, extrema, title);
                }
            });
            return cli::kSuccess;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return cli::kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kFailure;
    }
    return cli::kUsage;
}
