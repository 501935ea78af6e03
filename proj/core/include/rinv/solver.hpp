#pragma once

#include <memory>
#include <vector>

#include "rinv/factorization.hpp"
#include "rinv/operator_matrix.hpp"

namespace rinv {

/// Discretization of one weak solve: the equation is tested against basis
/// functions of degree <= test_degree and the solution sought among trial
/// functions of degree <= trial_degree. Relaxing the test side can only
/// lower the minimal norm, so bound certificates stay conservative there;
/// the trial side must leave room for the degree raised by each factor.
struct SolveConfig {
    int dim = 1;
    int test_degree = 0;   // M
    int trial_degree = 2;  // N
    double rank_tol = 1e-12;  // relative to the largest singular value
    double feas_tol = 1e-10;  // constraint residual scale, times (1 + |rhs|)

    /// Default budget for an m-stage chain: N = M + 2m + 4.
    static SolveConfig for_chain(int dim, int test_degree, int stages);

    void validate() const;
};

/// One factor solve (Delta + xi) u = data, with the norms feeding the bound
/// certificate. ratio = output/input squared-norm ratio; stage_bound = 1/(8n).
struct StageReport {
    Complex shift;
    double input_norm_sq = 0.0;
    double output_norm_sq = 0.0;
    double ratio = 0.0;
    double stage_bound = 0.0;
    double constraint_residual = 0.0;
};

/// Full chain solve: stage data, the overall squared-norm ratio against the
/// overall bound, and the solution itself.
struct SolveReport {
    std::vector<StageReport> stages;
    double overall_ratio = 0.0;
    double overall_bound = 0.0;
    HermiteSeries solution;
};

/// Outcome of checking a report against its bounds at a given tolerance.
struct BoundCertificate {
    bool pass = false;
    double tolerance = 0.0;
    double overall_margin = 0.0;            // overall bound - overall ratio
    std::vector<double> stage_margins;      // per-stage bound - ratio
};

/// Raised when the right-hand side has a component outside the range of the
/// constraint matrix beyond tolerance.
class InfeasibleSolveError : public std::runtime_error {
public:
    InfeasibleSolveError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// Petrov-Galerkin matrix of Delta + xi: rows are test indices (degree <=
/// test_degree), columns trial indices (degree <= trial_degree), entries
/// <h_row, (Delta + xi) h_col>.
OperatorMatrix assemble_factor_matrix(Complex xi, const SolveConfig& config);

/// Reusable minimal-norm solver for one constraint matrix. Factors once;
/// solves many right-hand sides. The computed solution minimizes the
/// coefficient 2-norm subject to A c = b and always lies in the range of
/// the conjugate transpose of A.
///
/// The rank-revealing data are the eigenpairs of the Gram matrix A A^H,
/// which carry the singular values and left singular vectors of A exactly;
/// directions with singular value <= rank_tol times the largest are treated
/// as null space. If that thresholding is ambiguous (kept singular values
/// within 1e-6 of the cut), the factorization falls back to a full SVD of A.
class MinimalNormSolver {
public:
    MinimalNormSolver(const OperatorMatrix& matrix, double rank_tol);

    struct Result {
        std::vector<Complex> solution;
        double residual = 0.0;  // |A c - b|
    };

    /// Throws InfeasibleSolveError if |A c - b| > feas_tol (1 + |b|).
    Result solve(const std::vector<Complex>& rhs, double feas_tol) const;

    int rank() const;
    double singular_value_max() const;
    double singular_value_min_kept() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

/// Least-coefficient-norm solution of A c = b with rank threshold rank_tol.
std::vector<Complex> minimal_norm_solve(const OperatorMatrix& matrix,
                                        const std::vector<Complex>& rhs, double rank_tol,
                                        double feas_tol = 1e-10);

/// Minimal-norm weak solve of (Delta + xi) u = f at the configured
/// resolution. f must have dim() == config.dim and degree <= trial_degree.
std::pair<HermiteSeries, StageReport> solve_single_factor(const HermiteSeries& f, Complex xi,
                                                          const SolveConfig& config);

/// Cached m-stage chain solver: one factorization per shift, reusable
/// across right-hand sides. Stage j solves (Delta + xi_j) u_j = u_{j-1}
/// with u_0 = f, each stage constrained up to test_degree.
class ChainSolver {
public:
    ChainSolver(const FactoredOperator& factored, const SolveConfig& config);

    SolveReport solve(const HermiteSeries& f) const;

    const SolveConfig& config() const { return config_; }
    const std::vector<Complex>& shifts() const { return shifts_; }

private:
    SolveConfig config_;
    std::vector<Complex> shifts_;
    std::vector<MinimalNormSolver> stage_solvers_;
};

/// One-shot chain solve.
SolveReport solve_chain(const HermiteSeries& f, const FactoredOperator& factored,
                        const SolveConfig& config);

/// Check a report's ratios against its bounds with multiplicative tolerance
/// (default 0.05; use 1e-8 for the exactly representable cases).
BoundCertificate certify_bound(const SolveReport& report, double tolerance = 0.05);

/// Solve under the weight e^{-lambda |x - x0|^2}. The data are transformed
/// to the unit weight by y = sqrt(lambda) (x - x0), the polynomial becomes
/// a_j / lambda^{m-j}, and the solution maps back as u = lambda^{-m} v.
struct ScaledSolveResult {
    SolveReport scaled;  // ratios and solution in the weighted space
    SolveReport unit;    // the transformed problem actually solved
    PolynomialSpec transformed_polynomial;
};

ScaledSolveResult scaled_solve(const HermiteSeries& f_weighted, const PolynomialSpec& polynomial,
                               const WeightSpec& weight, const SolveConfig& config);

}  // namespace rinv
