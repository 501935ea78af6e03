#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rinv/solver.hpp"

namespace rinv {

/// Raised on malformed problem files; the message carries line/field
/// diagnostics for the CLI to surface.
class ProblemParseError : public std::runtime_error {
public:
    explicit ProblemParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Right-hand side: either explicit coefficients or a named builtin.
///   "constant"       f = 1, projected exactly (single degree-0 coefficient)
///   "gaussian-bump"  f = e^{-|x|^2}, projected by quadrature
///   "random"         seeded coefficient draw up to `degree`
struct RhsSpec {
    enum class Kind { Coefficients, Constant, GaussianBump, Random };
    Kind kind = Kind::Constant;
    std::uint64_t seed = 0;
    int degree = -1;  // random builtin; -1 means the test degree
    std::vector<std::pair<MultiIndex, Complex>> coefficients;
};

/// Parsed problem file: dimension, operator polynomial, weight, data,
/// truncation and tolerance overrides.
struct ProblemFile {
    int dim = 1;
    std::vector<Complex> polynomial;  // a_0 .. a_{m-1}, monic degree m
    WeightSpec weight = WeightSpec::unit(1);
    RhsSpec rhs;
    int test_degree = 8;
    int trial_degree = -1;  // -1 means test_degree + 2m + 4
    double certify_tolerance = 0.05;
    double rank_tol = 1e-12;
    double feas_tol = 1e-10;

    int stage_count() const { return static_cast<int>(polynomial.size()); }
    int resolved_trial_degree() const {
        return trial_degree >= 0 ? trial_degree : test_degree + 2 * stage_count() + 4;
    }
    SolveConfig solve_config() const;

    /// Materialize the right-hand side as a series over the problem basis.
    HermiteSeries build_rhs() const;
};

ProblemFile parse_problem(const std::string& json_text);
ProblemFile load_problem(const std::string& path);
std::string serialize_problem(const ProblemFile& problem);

/// Report written by the solve command: problem echo, per-stage ratios,
/// overall ratio and bound, certificate verdict, residuals, wall time.
struct ReportRecord {
    ProblemFile problem;
    SolveReport report;
    BoundCertificate certificate;
    double wall_time_seconds = 0.0;
};

std::string serialize_report(const ReportRecord& record);

/// Solution coefficients as CSV: index (entries joined by ';'), re, im.
std::string solution_to_csv(const HermiteSeries& solution);

/// "a+bi" / "a-bi" with 9 significant digits.
std::string format_complex(Complex z);

}  // namespace rinv
