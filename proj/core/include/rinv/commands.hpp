#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rinv/problem_io.hpp"

namespace rinv {

// Exit codes shared by every command:
//   0 pass, 1 verification violation, 2 input error, 3 infeasible solve.
inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInfeasible = 3;

/// Worker count for batch verification: RINV_THREADS when set, otherwise
/// the available hardware parallelism.
int worker_count();

struct SolveOptions {
    std::string problem_path;
    std::string report_path;
    std::optional<std::string> solution_csv_path;
    bool strict = false;  // certificate tolerance 1e-8 instead of the file's
};

/// End-to-end solve: read the problem, run the chain, certify, write the
/// report (and optionally the solution CSV).
int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err);

struct VerifyOptions {
    std::string kind;  // "identities" | "coercivity" | "bound"
    int dim = 1;
    int degree = 6;
    int trials = 100;
    std::uint64_t seed = 1;
    std::string csv_path;
};

/// Batch checker over random draws; writes one CSV row per checked quantity.
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);

/// Roots and shifts of the monic polynomial with the given a_0..a_{m-1}.
int cmd_roots(const std::vector<Complex>& coefficients, std::ostream& out, std::ostream& err);

struct CounterexampleOptions {
    double rmax = 1000.0;
    int grid_points = 64;         // second-derivative spot checks
    int panels_per_decade = 10000;  // composite Simpson resolution
};

/// Unweighted-space divergence demonstration with the Gaussian-weighted
/// solve of the same data as contrast.
int cmd_counterexample(const CounterexampleOptions& options, std::ostream& out,
                       std::ostream& err);

}  // namespace rinv
