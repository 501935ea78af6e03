#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rinv/commands.hpp"

namespace {

/// "a0,a1,..." with each element either a real number or re+imi / re-imi.
std::vector<rinv::Complex> parse_coefficients(const std::string& text) {
    std::vector<rinv::Complex> out;
    std::stringstream stream(text);
    std::string piece;
    while (std::getline(stream, piece, ',')) {
        if (piece.empty()) {
            throw std::invalid_argument("empty coefficient in '" + text + "'");
        }
        std::size_t consumed = 0;
        const double re = std::stod(piece, &consumed);
        double im = 0.0;
        if (consumed < piece.size()) {
            std::string rest = piece.substr(consumed);
            if (rest.back() == 'i' || rest.back() == 'j') {
                rest.pop_back();
                im = rest.empty() || rest == "+" ? 1.0 : rest == "-" ? -1.0 : std::stod(rest);
            } else {
                throw std::invalid_argument("cannot parse coefficient '" + piece + "'");
            }
        }
        out.emplace_back(re, im);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gaussian-weighted Hermite spectral solver for polynomials of the Laplacian"};
    app.require_subcommand(1);

    rinv::SolveOptions solve_options;
    std::string solution_csv;
    CLI::App* solve = app.add_subcommand("solve", "solve P(Delta)u = f and certify the bounds");
    solve->add_option("--problem", solve_options.problem_path, "problem JSON file")->required();
    solve->add_option("--out", solve_options.report_path, "report JSON output path")->required();
    solve->add_option("--solution-csv", solution_csv, "also write solution coefficients as CSV");
    solve->add_flag("--strict", solve_options.strict,
                    "certify with tolerance 1e-8 instead of the problem file's");

    rinv::VerifyOptions verify_options;
    CLI::App* verify = app.add_subcommand("verify", "batch-check identities, coercivity or bounds");
    verify->add_option("--kind", verify_options.kind, "identities|coercivity|bound")->required();
    verify->add_option("--dim", verify_options.dim, "space dimension n")->default_val(1);
    verify->add_option("--degree", verify_options.degree, "degree cap for random draws")
        ->default_val(6);
    verify->add_option("--trials", verify_options.trials, "number of random trials")
        ->default_val(100);
    verify->add_option("--seed", verify_options.seed, "base seed")->default_val(1);
    verify->add_option("--out", verify_options.csv_path, "CSV output path");

    std::string coeff_text;
    CLI::App* roots = app.add_subcommand("roots", "factor the monic polynomial z^m + ... + a_0");
    roots->add_option("--coeffs", coeff_text, "comma-separated a_0,a_1,... (re or re+imi)")
        ->required();

    rinv::CounterexampleOptions ce_options;
    CLI::App* counter = app.add_subcommand(
        "counterexample", "unweighted divergence demo with the weighted solve as contrast");
    counter->add_option("--rmax", ce_options.rmax, "largest radius for the tail integral")
        ->default_val(1000.0);
    counter->add_option("--grid", ce_options.grid_points, "points for the derivative spot check")
        ->default_val(64);
    counter->add_option("--panels", ce_options.panels_per_decade, "Simpson panels per decade")
        ->default_val(10000);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? rinv::kExitPass : rinv::kExitInputError;
    }

    if (solve->parsed()) {
        if (!solution_csv.empty()) solve_options.solution_csv_path = solution_csv;
        return rinv::cmd_solve(solve_options, std::cout, std::cerr);
    }
    if (verify->parsed()) {
        return rinv::cmd_verify(verify_options, std::cout, std::cerr);
    }
    if (roots->parsed()) {
        std::vector<rinv::Complex> coefficients;
        try {
            coefficients = parse_coefficients(coeff_text);
        } catch (const std::exception& e) {
            std::cerr << "roots: " << e.what() << "\n";
            return rinv::kExitInputError;
        }
        return rinv::cmd_roots(coefficients, std::cout, std::cerr);
    }
    if (counter->parsed()) {
        return rinv::cmd_counterexample(ce_options, std::cout, std::cerr);
    }
    return rinv::kExitInputError;
}
