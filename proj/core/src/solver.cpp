#include "rinv/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

namespace rinv {

namespace {

Eigen::VectorXcd to_eigen(const std::vector<Complex>& v) {
    Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
    return out;
}

}  // namespace

SolveConfig SolveConfig::for_chain(int dim, int test_degree, int stages) {
    SolveConfig cfg;
    cfg.dim = dim;
    cfg.test_degree = test_degree;
    cfg.trial_degree = test_degree + 2 * stages + 4;
    return cfg;
}

void SolveConfig::validate() const {
    if (dim < 1) throw std::invalid_argument("SolveConfig: dim must be >= 1");
    if (test_degree < 0) throw std::invalid_argument("SolveConfig: test_degree must be >= 0");
    if (trial_degree < test_degree) {
        throw std::invalid_argument("SolveConfig: trial_degree must be >= test_degree");
    }
    if (rank_tol <= 0.0 || feas_tol <= 0.0) {
        throw std::invalid_argument("SolveConfig: tolerances must be positive");
    }
}

OperatorMatrix assemble_factor_matrix(Complex xi, const SolveConfig& config) {
    config.validate();
    Basis trial(TruncationConfig{config.dim, config.trial_degree});
    Basis test(TruncationConfig{config.dim, config.test_degree});
    OperatorMatrix matrix(trial, test);
    for (std::size_t col = 0; col < trial.size(); ++col) {
        const MultiIndex& alpha = trial.index(col);
        const int degree = alpha.degree();
        if (degree <= config.test_degree && xi != Complex(0.0, 0.0)) {
            matrix.add(test.position(alpha), col, xi);
        }
        if (degree - 2 > config.test_degree) continue;
        for (int j = 0; j < config.dim; ++j) {
            const int k = alpha[j];
            if (k >= 2) {
                matrix.add(test.position(alpha.shifted(j, -2)), col,
                           2.0 * std::sqrt(static_cast<double>(k) * (k - 1)));
            }
        }
    }
    return matrix;
}

struct MinimalNormSolver::Impl {
    // Sparse copy of A for applying A and A^H.
    std::vector<std::tuple<std::size_t, std::size_t, Complex>> triplets;
    std::size_t rows = 0;
    std::size_t cols = 0;

    // Rank-revealing data. Gram route: eigenpairs of A A^H. SVD route:
    // thin factors of A itself.
    bool use_svd = false;
    Eigen::MatrixXcd gram_vectors;     // columns: kept eigenvectors of A A^H
    Eigen::VectorXd gram_values;       // kept eigenvalues (= sigma^2)
    Eigen::MatrixXcd svd_u;            // kept left singular vectors
    Eigen::MatrixXcd svd_v;            // kept right singular vectors
    Eigen::VectorXd svd_sigma;         // kept singular values

    double sigma_max = 0.0;
    double sigma_min_kept = 0.0;
    int rank = 0;

    Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const {
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rows));
        for (const auto& [r, c, v] : triplets) {
            out[static_cast<Eigen::Index>(r)] += v * x[static_cast<Eigen::Index>(c)];
        }
        return out;
    }

    Eigen::VectorXcd apply_adjoint(const Eigen::VectorXcd& y) const {
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(cols));
        for (const auto& [r, c, v] : triplets) {
            out[static_cast<Eigen::Index>(c)] += std::conj(v) * y[static_cast<Eigen::Index>(r)];
        }
        return out;
    }
};

MinimalNormSolver::MinimalNormSolver(const OperatorMatrix& matrix, double rank_tol) {
    if (rank_tol <= 0.0) {
        throw std::invalid_argument("MinimalNormSolver: rank_tol must be positive");
    }
    auto impl = std::make_shared<Impl>();
    impl->rows = matrix.rows();
    impl->cols = matrix.cols();
    impl->triplets.reserve(matrix.nonzeros());
    for (const auto& [key, value] : matrix.entries()) {
        impl->triplets.emplace_back(key.first, key.second, value);
    }

    const Eigen::Index rows = static_cast<Eigen::Index>(impl->rows);

    // Gram matrix A A^H, assembled column by column of A.
    Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(rows, rows);
    {
        std::vector<std::vector<std::pair<std::size_t, Complex>>> by_col(impl->cols);
        for (const auto& [r, c, v] : impl->triplets) by_col[c].emplace_back(r, v);
        for (const auto& column : by_col) {
            for (const auto& [r1, v1] : column) {
                for (const auto& [r2, v2] : column) {
                    gram(static_cast<Eigen::Index>(r1), static_cast<Eigen::Index>(r2)) +=
                        v1 * std::conj(v2);
                }
            }
        }
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    if (es.info() != Eigen::Success) {
        throw NonConvergenceError("MinimalNormSolver: Gram eigensolver did not converge");
    }

    const double lambda_max = rows > 0 ? std::max(es.eigenvalues()[rows - 1], 0.0) : 0.0;
    impl->sigma_max = std::sqrt(lambda_max);
    const double sigma_cut = rank_tol * impl->sigma_max;

    bool ambiguous = false;
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = 0; i < rows; ++i) {
        const double sigma = std::sqrt(std::max(es.eigenvalues()[i], 0.0));
        if (sigma > sigma_cut) {
            kept.push_back(i);
            if (sigma < 1e-6 * impl->sigma_max) ambiguous = true;
        }
    }

    if (!ambiguous || impl->sigma_max == 0.0) {
        impl->rank = static_cast<int>(kept.size());
        impl->gram_vectors.resize(rows, static_cast<Eigen::Index>(kept.size()));
        impl->gram_values.resize(static_cast<Eigen::Index>(kept.size()));
        impl->sigma_min_kept = impl->rank > 0 ? impl->sigma_max : 0.0;
        for (std::size_t k = 0; k < kept.size(); ++k) {
            impl->gram_vectors.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(kept[k]);
            impl->gram_values[static_cast<Eigen::Index>(k)] = es.eigenvalues()[kept[k]];
            impl->sigma_min_kept =
                std::min(impl->sigma_min_kept, std::sqrt(std::max(es.eigenvalues()[kept[k]], 0.0)));
        }
    } else {
        // Singular values too close to the threshold for squared data to
        // resolve: factor A directly.
        impl->use_svd = true;
        Eigen::MatrixXcd dense =
            Eigen::MatrixXcd::Zero(rows, static_cast<Eigen::Index>(impl->cols));
        for (const auto& [r, c, v] : impl->triplets) {
            dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dense,
                                               Eigen::ComputeThinU | Eigen::ComputeThinV);
        impl->sigma_max = svd.singularValues().size() > 0 ? svd.singularValues()[0] : 0.0;
        const double cut = rank_tol * impl->sigma_max;
        Eigen::Index r = 0;
        while (r < svd.singularValues().size() && svd.singularValues()[r] > cut) ++r;
        impl->rank = static_cast<int>(r);
        impl->svd_u = svd.matrixU().leftCols(r);
        impl->svd_v = svd.matrixV().leftCols(r);
        impl->svd_sigma = svd.singularValues().head(r);
        impl->sigma_min_kept = r > 0 ? svd.singularValues()[r - 1] : 0.0;
    }
    impl_ = std::move(impl);
}

MinimalNormSolver::Result MinimalNormSolver::solve(const std::vector<Complex>& rhs,
                                                   double feas_tol) const {
    if (rhs.size() != impl_->rows) {
        throw std::invalid_argument("MinimalNormSolver::solve: rhs length mismatch");
    }
    const Eigen::VectorXcd b = to_eigen(rhs);
    Eigen::VectorXcd x;
    if (impl_->use_svd) {
        const Eigen::VectorXcd coeff = impl_->svd_u.adjoint() * b;
        x = impl_->svd_v * (coeff.array() / impl_->svd_sigma.array().cast<Complex>()).matrix();
    } else if (impl_->rank == 0) {
        x = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(impl_->cols));
    } else {
        const Eigen::VectorXcd coeff = impl_->gram_vectors.adjoint() * b;
        const Eigen::VectorXcd y =
            impl_->gram_vectors *
            (coeff.array() / impl_->gram_values.array().cast<Complex>()).matrix();
        x = impl_->apply_adjoint(y);
    }

    Result result;
    result.residual = (impl_->apply(x) - b).norm();
    if (result.residual > feas_tol * (1.0 + b.norm())) {
        throw InfeasibleSolveError(
            "minimal-norm solve: right-hand side outside the constraint range, residual " +
                std::to_string(result.residual),
            result.residual);
    }
    result.solution.resize(impl_->cols);
    for (std::size_t i = 0; i < impl_->cols; ++i) {
        result.solution[i] = x[static_cast<Eigen::Index>(i)];
    }
    return result;
}

int MinimalNormSolver::rank() const { return impl_->rank; }
double MinimalNormSolver::singular_value_max() const { return impl_->sigma_max; }
double MinimalNormSolver::singular_value_min_kept() const { return impl_->sigma_min_kept; }

std::vector<Complex> minimal_norm_solve(const OperatorMatrix& matrix,
                                        const std::vector<Complex>& rhs, double rank_tol,
                                        double feas_tol) {
    return MinimalNormSolver(matrix, rank_tol).solve(rhs, feas_tol).solution;
}

namespace {

StageReport run_stage(const MinimalNormSolver& solver, Complex shift,
                      const HermiteSeries& input, const SolveConfig& config,
                      HermiteSeries& output) {
    const HermiteSeries projected = input.with_max_degree(config.test_degree, true);
    auto result = solver.solve(projected.coefficients(), config.feas_tol);

    output = HermiteSeries(Basis(TruncationConfig{config.dim, config.trial_degree}));
    for (std::size_t i = 0; i < result.solution.size(); ++i) output[i] = result.solution[i];

    StageReport report;
    report.shift = shift;
    report.input_norm_sq = input.norm_sq();
    report.output_norm_sq = output.norm_sq();
    report.ratio = report.input_norm_sq > 0.0 ? report.output_norm_sq / report.input_norm_sq : 0.0;
    report.stage_bound = 1.0 / (8.0 * config.dim);
    report.constraint_residual = result.residual;
    return report;
}

}  // namespace

std::pair<HermiteSeries, StageReport> solve_single_factor(const HermiteSeries& f, Complex xi,
                                                          const SolveConfig& config) {
    config.validate();
    if (config.trial_degree < config.test_degree + 2) {
        // Two degrees of headroom keep the constraint map onto for every
        // shift, the zero shift included.
        throw std::invalid_argument(
            "solve_single_factor: trial_degree must be >= test_degree + 2");
    }
    if (f.dim() != config.dim) {
        throw std::invalid_argument("solve_single_factor: data dimension mismatch");
    }
    if (f.effective_degree() > config.trial_degree) {
        throw std::invalid_argument("solve_single_factor: data degree exceeds trial budget");
    }
    MinimalNormSolver solver(assemble_factor_matrix(xi, config), config.rank_tol);
    HermiteSeries u(TruncationConfig{config.dim, config.trial_degree});
    StageReport report = run_stage(solver, xi, f.with_max_degree(config.trial_degree, false), config, u);
    return {std::move(u), report};
}

ChainSolver::ChainSolver(const FactoredOperator& factored, const SolveConfig& config)
    : config_(config), shifts_(factored.shifts) {
    config_.validate();
    const int stages = static_cast<int>(shifts_.size());
    if (config_.trial_degree < config_.test_degree + 2 * stages) {
        throw std::invalid_argument(
            "ChainSolver: trial_degree must be >= test_degree + 2 per stage");
    }
    stage_solvers_.reserve(shifts_.size());
    for (const Complex& xi : shifts_) {
        stage_solvers_.emplace_back(assemble_factor_matrix(xi, config_), config_.rank_tol);
    }
}

SolveReport ChainSolver::solve(const HermiteSeries& f) const {
    if (f.dim() != config_.dim) {
        throw std::invalid_argument("ChainSolver::solve: data dimension mismatch");
    }
    const int stages = static_cast<int>(shifts_.size());
    if (f.effective_degree() + 2 * stages > config_.trial_degree) {
        throw std::invalid_argument(
            "ChainSolver::solve: trial budget below data degree + 2 per stage");
    }

    HermiteSeries current = f.with_max_degree(config_.trial_degree, false);
    SolveReport report{.stages = {},
                       .overall_ratio = 0.0,
                       .overall_bound = std::pow(8.0 * config_.dim, -stages),
                       .solution = current};
    for (int j = 0; j < stages; ++j) {
        HermiteSeries next(TruncationConfig{config_.dim, config_.trial_degree});
        report.stages.push_back(
            run_stage(stage_solvers_[static_cast<std::size_t>(j)], shifts_[static_cast<std::size_t>(j)],
                      current, config_, next));
        current = std::move(next);
    }
    report.solution = current;
    const double input_norm_sq = f.norm_sq();
    report.overall_ratio = input_norm_sq > 0.0 ? current.norm_sq() / input_norm_sq : 0.0;
    return report;
}

SolveReport solve_chain(const HermiteSeries& f, const FactoredOperator& factored,
                        const SolveConfig& config) {
    return ChainSolver(factored, config).solve(f);
}

BoundCertificate certify_bound(const SolveReport& report, double tolerance) {
    BoundCertificate cert;
    cert.tolerance = tolerance;
    cert.pass = report.overall_ratio <= report.overall_bound * (1.0 + tolerance);
    cert.overall_margin = report.overall_bound - report.overall_ratio;
    for (const StageReport& stage : report.stages) {
        cert.stage_margins.push_back(stage.stage_bound - stage.ratio);
        if (stage.ratio > stage.stage_bound * (1.0 + tolerance)) cert.pass = false;
    }
    return cert;
}

ScaledSolveResult scaled_solve(const HermiteSeries& f_weighted, const PolynomialSpec& polynomial,
                               const WeightSpec& weight, const SolveConfig& config) {
    config.validate();
    weight.validate(config.dim);
    const int m = polynomial.degree();
    const double lambda = weight.lambda;
    const int n = config.dim;

    // Transformed data g(y) = f(y/sqrt(lambda) + x0): coefficients scale by
    // lambda^{n/4} in the unit basis.
    HermiteSeries g = std::pow(lambda, 0.25 * n) * f_weighted;

    // P~ coefficients a_j / lambda^{m-j}.
    std::vector<Complex> transformed(polynomial.coefficients);
    for (int j = 0; j < m; ++j) {
        transformed[static_cast<std::size_t>(j)] /= std::pow(lambda, m - j);
    }
    PolynomialSpec p_unit(std::move(transformed));

    ScaledSolveResult result{
        .scaled = SolveReport{.stages = {},
                              .overall_ratio = 0.0,
                              .overall_bound = 0.0,
                              .solution = HermiteSeries(TruncationConfig{n, config.trial_degree})},
        .unit = solve_chain(g, factor_operator(p_unit), config),
        .transformed_polynomial = p_unit};

    // u(x) = lambda^{-m} v(sqrt(lambda)(x - x0)): coefficients over the
    // weighted basis pick up lambda^{-m - n/4}.
    result.scaled.stages = result.unit.stages;
    result.scaled.solution =
        std::pow(lambda, -m - 0.25 * n) * result.unit.solution;
    const double scale = std::pow(lambda, -2.0 * m);
    result.scaled.overall_ratio = scale * result.unit.overall_ratio;
    result.scaled.overall_bound = scale * result.unit.overall_bound;
    return result;
}

}  // namespace rinv
