#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>

#include "oracles.hpp"
#include "rinv/random.hpp"
#include "rinv/solver.hpp"

using namespace rinv;

namespace {

const double kPiQuarter = std::pow(std::numbers::pi, 0.25);

Eigen::MatrixXcd to_dense(const OperatorMatrix& m) {
    Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(m.rows()),
                                                    static_cast<Eigen::Index>(m.cols()));
    for (const auto& [key, value] : m.entries()) {
        dense(static_cast<Eigen::Index>(key.first), static_cast<Eigen::Index>(key.second)) = value;
    }
    return dense;
}

HermiteSeries constant_one_series() {
    // f = 1 in one dimension: single coefficient pi^{1/4} at degree 0.
    HermiteSeries f(TruncationConfig{1, 0});
    f[0] = Complex(kPiQuarter, 0.0);
    return f;
}

}  // namespace

TEST_CASE("assemble_factor_matrix lays out the Laplacian band and the shift diagonal") {
    SolveConfig cfg;
    cfg.dim = 1;
    cfg.test_degree = 4;
    cfg.trial_degree = 8;

    const OperatorMatrix plain = assemble_factor_matrix(Complex(0.0, 0.0), cfg);
    for (int k = 0; k <= 4; ++k) {
        const double expected = 2.0 * std::sqrt((k + 2.0) * (k + 1.0));
        CHECK(std::abs(plain.entry(MultiIndex{k}, MultiIndex{k + 2}) - Complex(expected, 0.0)) <
              1e-14);
    }
    CHECK(plain.nonzeros() == 5);

    const OperatorMatrix shifted = assemble_factor_matrix(Complex(5.0, 0.0), cfg);
    for (int k = 0; k <= 4; ++k) {
        CHECK(std::abs(shifted.entry(MultiIndex{k}, MultiIndex{k}) - Complex(5.0, 0.0)) < 1e-14);
    }
    CHECK(std::abs(shifted.entry(MultiIndex{0}, MultiIndex{2}) -
                   Complex(2.0 * std::sqrt(2.0), 0.0)) < 1e-14);
}

TEST_CASE("minimal_norm_solve: identity block returns the data") {
    Basis basis(TruncationConfig{1, 3});
    const OperatorMatrix identity = OperatorMatrix::identity(basis, basis);
    std::vector<Complex> b{{1.0, 0.5}, {0.0, -2.0}, {3.0, 0.0}, {0.0, 0.0}};
    const auto c = minimal_norm_solve(identity, b, 1e-12);
    REQUIRE(c.size() == b.size());
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(std::abs(c[i] - b[i]) < 1e-12);
}

TEST_CASE("minimal_norm_solve: zero data gives the zero solution") {
    SolveConfig cfg;
    cfg.dim = 1;
    cfg.test_degree = 3;
    cfg.trial_degree = 7;
    const OperatorMatrix a = assemble_factor_matrix(Complex(2.0, 1.0), cfg);
    const auto c = minimal_norm_solve(a, std::vector<Complex>(a.rows(), Complex(0.0, 0.0)), 1e-12);
    for (const Complex& v : c) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("minimal_norm_solve: Laplace data h_0 puts 1/(2 sqrt 2) on h_2 only") {
    SolveConfig cfg;
    cfg.dim = 1;
    cfg.test_degree = 0;
    cfg.trial_degree = 4;
    const OperatorMatrix a = assemble_factor_matrix(Complex(0.0, 0.0), cfg);
    std::vector<Complex> b(a.rows(), Complex(0.0, 0.0));
    b[0] = Complex(1.0, 0.0);
    const auto c = minimal_norm_solve(a, b, 1e-12);

    const double expected = 1.0 / (2.0 * std::sqrt(2.0));
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        norm_sq += std::norm(c[i]);
        if (i == 2) {
            CHECK(std::abs(c[i] - Complex(expected, 0.0)) < 1e-12);
        } else {
            // Kernel directions (h_0, h_1 and everything above) stay zero.
            CHECK(std::abs(c[i]) < 1e-12);
        }
    }
    CHECK(norm_sq == doctest::Approx(0.125).epsilon(1e-10));
}

TEST_CASE("minimal_norm_solve flags data outside the range") {
    // Delta from degree <= 1 into degree 0 is the zero map.
    SolveConfig cfg;
    cfg.dim = 1;
    cfg.test_degree = 0;
    cfg.trial_degree = 1;
    const OperatorMatrix a = assemble_factor_matrix(Complex(0.0, 0.0), cfg);
    CHECK(a.nonzeros() == 0);
    CHECK_THROWS_AS(minimal_norm_solve(a, {Complex(1.0, 0.0)}, 1e-12), InfeasibleSolveError);
}

TEST_CASE("badly scaled singular values route through the SVD fallback") {
    // Singular values 1 and 1e-7 sit between the rank cut (1e-12) and the
    // resolution of squared data, so the solver re-factors A directly.
    Basis basis(TruncationConfig{1, 1});
    OperatorMatrix a(basis, basis);
    a.add(std::size_t{0}, std::size_t{0}, Complex(1.0, 0.0));
    a.add(std::size_t{1}, std::size_t{1}, Complex(1e-7, 0.0));

    const MinimalNormSolver solver(a, 1e-12);
    CHECK(solver.rank() == 2);
    CHECK(solver.singular_value_min_kept() == doctest::Approx(1e-7).epsilon(1e-6));

    const auto result = solver.solve({Complex(1.0, 0.0), Complex(1.0, 0.0)}, 1e-10);
    CHECK(std::abs(result.solution[0] - Complex(1.0, 0.0)) < 1e-9);
    CHECK(std::abs(result.solution[1] - Complex(1e7, 0.0)) < 1e-2);
}

TEST_CASE("solutions lie in the range of the adjoint") {
    for (int trial = 0; trial < 10; ++trial) {
        SplitMix64 rng(substream(31337, static_cast<std::uint64_t>(trial)));
        SolveConfig cfg;
        cfg.dim = 1 + static_cast<int>(rng.next() % 2);
        cfg.test_degree = 5;
        cfg.trial_degree = 9;
        const Complex xi = trial % 3 == 0 ? Complex(0.0, 0.0) : 4.0 * rng.complex_pm1();
        const OperatorMatrix a = assemble_factor_matrix(xi, cfg);
        const HermiteSeries f =
            random_series(TruncationConfig{cfg.dim, cfg.test_degree}, rng.next(), true);
        const auto c = minimal_norm_solve(a, f.coefficients(), cfg.rank_tol);

        // Component of c orthogonal to the row space, via a dense pseudo-solve:
        // the projector onto range(A^H) is pinv(A) A.
        Eigen::MatrixXcd dense = to_dense(a);
        Eigen::VectorXcd x(static_cast<Eigen::Index>(c.size()));
        for (std::size_t i = 0; i < c.size(); ++i) x[static_cast<Eigen::Index>(i)] = c[i];
        const Eigen::VectorXcd projected =
            dense.completeOrthogonalDecomposition().pseudoInverse() * (dense * x);
        CHECK((x - projected).norm() < 1e-10 * std::max(1.0, x.norm()));
    }
}

TEST_CASE("sharp single-factor case: ratio 1/8 at any resolution") {
    Basis basis(TruncationConfig{1, 0});
    const HermiteSeries h0 = HermiteSeries::basis_element(basis, MultiIndex{0});
    for (const auto& [m_deg, n_deg] : std::vector<std::pair<int, int>>{{0, 2}, {4, 8}, {12, 18}}) {
        SolveConfig cfg;
        cfg.dim = 1;
        cfg.test_degree = m_deg;
        cfg.trial_degree = n_deg;
        const auto [u, stage] = solve_single_factor(h0, Complex(0.0, 0.0), cfg);
        CHECK(std::abs(stage.ratio - 0.125) < 1e-8);
        CHECK(stage.constraint_residual <= 1e-10 * (1.0 + h0.norm()));
    }
}

TEST_CASE("continuum minimal norm: shift 1, constant data") {
    // Independent oracle from Gaussian moments: the solution set is
    // 1 + span{cos, sin}; projecting 1 off the kernel leaves
    // ratio = 1 - 2 e^{-1/2} / (1 + e^{-1}).
    const double ip_one_cos = std::sqrt(std::numbers::pi) * std::exp(-0.25);
    const double cos_norm_sq = std::sqrt(std::numbers::pi) * (1.0 + std::exp(-1.0)) / 2.0;
    const double one_norm_sq = std::sqrt(std::numbers::pi);
    const double oracle = (one_norm_sq - ip_one_cos * ip_one_cos / cos_norm_sq) / one_norm_sq;
    CHECK(oracle == doctest::Approx(0.113181).epsilon(1e-4));

    const HermiteSeries f = constant_one_series();
    SolveConfig cfg = SolveConfig::for_chain(1, 20, 1);
    const auto [u, stage] = solve_single_factor(f, Complex(1.0, 0.0), cfg);
    CHECK(stage.ratio == doctest::Approx(oracle).epsilon(0.05));
    CHECK(stage.ratio < 0.125);
}

TEST_CASE("single-factor ratios respect the 1/(8n) bound on random draws") {
    for (int n = 1; n <= 3; ++n) {
        SolveConfig cfg = SolveConfig::for_chain(n, 6, 1);
        for (int trial = 0; trial < 8; ++trial) {
            SplitMix64 rng(substream(616, static_cast<std::uint64_t>(10 * n + trial)));
            const HermiteSeries f = random_series(TruncationConfig{n, 6}, rng.next(), true);
            const Complex xi = 5.0 * rng.complex_pm1();
            const auto [u, stage] = solve_single_factor(f, xi, cfg);
            CHECK(stage.ratio <= stage.stage_bound * 1.05);
            CHECK(stage.constraint_residual <= 1e-10 * (1.0 + f.norm()));
        }
    }
}

TEST_CASE("chain solve of the squared Laplacian on h_0") {
    Basis basis(TruncationConfig{1, 0});
    const HermiteSeries h0 = HermiteSeries::basis_element(basis, MultiIndex{0});
    const FactoredOperator biharmonic =
        factor_operator(PolynomialSpec{{Complex(0.0, 0.0), Complex(0.0, 0.0)}});
    const SolveConfig cfg = SolveConfig::for_chain(1, 4, 2);
    const SolveReport report = solve_chain(h0, biharmonic, cfg);

    REQUIRE(report.stages.size() == 2);
    CHECK(report.stages[0].ratio == doctest::Approx(0.125).epsilon(1e-10));
    CHECK(report.stages[1].ratio == doctest::Approx(1.0 / 48.0).epsilon(1e-10));
    CHECK(report.overall_ratio == doctest::Approx(1.0 / 384.0).epsilon(1e-10));
    CHECK(report.overall_bound == doctest::Approx(1.0 / 64.0).epsilon(1e-14));

    // u = h_4 / (8 sqrt 6).
    const double expected = 1.0 / (8.0 * std::sqrt(6.0));
    CHECK(std::abs(report.solution.coeff(MultiIndex{4}) - Complex(expected, 0.0)) < 1e-12);
    for (std::size_t i = 0; i < report.solution.size(); ++i) {
        if (i != 4) CHECK(std::abs(report.solution[i]) < 1e-12);
    }

    // Overall ratio equals the product of stage ratios.
    CHECK(report.overall_ratio ==
          doctest::Approx(report.stages[0].ratio * report.stages[1].ratio).epsilon(1e-12));

    const BoundCertificate cert = certify_bound(report);
    CHECK(cert.pass);
    CHECK(cert.overall_margin == doctest::Approx(1.0 / 64.0 - 1.0 / 384.0).epsilon(1e-10));
}

TEST_CASE("an m = 1 chain degenerates to the single-factor solve") {
    SplitMix64 rng(99);
    const HermiteSeries f = random_series(TruncationConfig{2, 4}, rng.next(), true);
    const Complex xi(0.75, -0.5);
    const SolveConfig cfg = SolveConfig::for_chain(2, 4, 1);

    const auto [u_single, stage] = solve_single_factor(f, xi, cfg);
    const FactoredOperator single({xi}, PolynomialSpec{{xi}});
    const SolveReport chain = solve_chain(f, single, cfg);
    REQUIRE(chain.stages.size() == 1);
    CHECK(chain.overall_ratio == doctest::Approx(stage.ratio).epsilon(1e-14));
    for (std::size_t i = 0; i < u_single.size(); ++i) {
        CHECK(std::abs(u_single[i] - chain.solution[i]) < 1e-14);
    }
}

TEST_CASE("zero data maps to the zero solution through a chain") {
    const HermiteSeries zero(TruncationConfig{1, 3});
    const FactoredOperator factored =
        factor_operator(PolynomialSpec{{Complex(1.0, 0.0), Complex(0.0, 0.0)}});
    const SolveReport report = solve_chain(zero, factored, SolveConfig::for_chain(1, 6, 2));
    CHECK(report.overall_ratio == 0.0);
    CHECK(report.solution.norm_sq() == 0.0);
    for (const StageReport& stage : report.stages) CHECK(stage.ratio == 0.0);
    CHECK(certify_bound(report).pass);
}

TEST_CASE("the solve map is linear in the data") {
    const SolveConfig cfg = SolveConfig::for_chain(1, 8, 2);
    const FactoredOperator factored =
        factor_operator(PolynomialSpec{{Complex(0.5, 0.5), Complex(-1.0, 0.25)}});
    const ChainSolver solver(factored, cfg);

    SplitMix64 rng(2718);
    const HermiteSeries f = random_series(TruncationConfig{1, 8}, rng.next(), false);
    const HermiteSeries g = random_series(TruncationConfig{1, 8}, rng.next(), false);
    const Complex alpha = rng.complex_pm1();
    const Complex beta = rng.complex_pm1();

    const HermiteSeries lhs = solver.solve(alpha * f + beta * g).solution;
    const HermiteSeries rhs =
        alpha * solver.solve(f).solution + beta * solver.solve(g).solution;
    double worst = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
    CHECK(worst <= 1e-9 * std::max(1.0, rhs.norm()));
}

TEST_CASE("stage excess over the bound shrinks as resolution grows") {
    const Complex xi(1.0, 0.0);
    const HermiteSeries f = constant_one_series();
    double previous = std::numeric_limits<double>::infinity();
    for (int m_deg : {8, 12, 16}) {
        SolveConfig cfg = SolveConfig::for_chain(1, m_deg, 1);
        const auto [u, stage] = solve_single_factor(f, xi, cfg);
        const double excess = std::max(0.0, stage.ratio - stage.stage_bound);
        CHECK(excess <= previous + 1e-12);
        previous = excess;
    }
}

TEST_CASE("certify_bound strict mode and failure path") {
    Basis basis(TruncationConfig{1, 0});
    const HermiteSeries h0 = HermiteSeries::basis_element(basis, MultiIndex{0});
    SolveConfig cfg;
    cfg.dim = 1;
    cfg.test_degree = 0;
    cfg.trial_degree = 2;
    const auto [u, stage] = solve_single_factor(h0, Complex(0.0, 0.0), cfg);
    SolveReport report{.stages = {stage},
                       .overall_ratio = stage.ratio,
                       .overall_bound = stage.stage_bound,
                       .solution = u};
    CHECK(certify_bound(report, 1e-8).pass);

    report.overall_ratio = report.overall_bound * 1.2;
    CHECK(!certify_bound(report, 0.05).pass);
    CHECK(certify_bound(report, 0.3).pass);
}

TEST_CASE("scaled solve with the unit weight reproduces the plain chain") {
    SplitMix64 rng(321);
    const HermiteSeries f = random_series(TruncationConfig{1, 4}, rng.next(), true);
    const PolynomialSpec poly{{Complex(1.0, -0.5), Complex(0.0, 1.0)}};
    const SolveConfig cfg = SolveConfig::for_chain(1, 6, 2);

    const ScaledSolveResult scaled = scaled_solve(f, poly, WeightSpec::unit(1), cfg);
    const SolveReport direct = solve_chain(f, factor_operator(poly), cfg);
    CHECK(scaled.scaled.overall_ratio == doctest::Approx(direct.overall_ratio).epsilon(1e-14));
    CHECK(scaled.scaled.overall_bound == doctest::Approx(direct.overall_bound).epsilon(1e-14));
    for (std::size_t i = 0; i < direct.solution.size(); ++i) {
        CHECK(std::abs(scaled.scaled.solution[i] - direct.solution[i]) < 1e-13);
    }
}

TEST_CASE("scaled solve transforms the polynomial and the bound") {
    // m = 1, lambda = 4: shift comes from Delta + a0/4, bound gains 1/16.
    const HermiteSeries f = constant_one_series();
    const PolynomialSpec poly{{Complex(2.0, 0.0)}};
    WeightSpec weight{4.0, {0.0}};
    const SolveConfig cfg = SolveConfig::for_chain(1, 8, 1);

    const ScaledSolveResult result = scaled_solve(f, poly, weight, cfg);
    REQUIRE(result.transformed_polynomial.degree() == 1);
    CHECK(std::abs(result.transformed_polynomial.coefficients[0] - Complex(0.5, 0.0)) < 1e-15);
    CHECK(result.scaled.overall_bound ==
          doctest::Approx(1.0 / (16.0 * 8.0)).epsilon(1e-14));
    CHECK(certify_bound(result.scaled).pass);

    // General coefficient transform: a_j / lambda^{m-j}.
    const PolynomialSpec quad{{Complex(8.0, 4.0), Complex(-2.0, 2.0)}};
    const ScaledSolveResult quad_result =
        scaled_solve(constant_one_series(), quad, weight, SolveConfig::for_chain(1, 8, 2));
    CHECK(std::abs(quad_result.transformed_polynomial.coefficients[0] -
                   Complex(0.5, 0.25)) < 1e-14);
    CHECK(std::abs(quad_result.transformed_polynomial.coefficients[1] -
                   Complex(-0.5, 0.5)) < 1e-14);
}

TEST_CASE("scaled solve agrees with the hand change of variables pointwise") {
    for (double lambda : {0.5, 4.0}) {
        SplitMix64 rng(substream(888, static_cast<std::uint64_t>(lambda * 10)));
        const HermiteSeries f = random_series(TruncationConfig{1, 4}, rng.next(), true);
        const PolynomialSpec poly{{Complex(1.0, 0.5), Complex(0.5, -0.25)}};
        WeightSpec weight{lambda, {0.7}};
        const SolveConfig cfg = SolveConfig::for_chain(1, 8, 2);

        const ScaledSolveResult result = scaled_solve(f, poly, weight, cfg);

        // Manual route: transform data and polynomial, solve at unit weight.
        const HermiteSeries g = std::pow(lambda, 0.25) * f;
        std::vector<Complex> transformed = poly.coefficients;
        transformed[0] /= lambda * lambda;
        transformed[1] /= lambda;
        const SolveReport unit =
            solve_chain(g, factor_operator(PolynomialSpec{transformed}), cfg);

        const QuadratureRule rule = gauss_hermite_rule(12);
        const double root = std::sqrt(lambda);
        for (double node : rule.nodes) {
            const double x = node / root + 0.7;  // x values whose y image is the node
            const Complex via_scaled = eval_series_weighted(result.scaled.solution, weight, {x});
            const Complex via_manual =
                std::pow(lambda, -2.0) * eval_series(unit.solution, {node});
            CHECK(std::abs(via_scaled - via_manual) <=
                  1e-8 * std::max(1.0, std::abs(via_manual)));
        }
        CHECK(result.scaled.overall_ratio ==
              doctest::Approx(std::pow(lambda, -4.0) * unit.overall_ratio).epsilon(1e-12));
    }
}

TEST_CASE("configuration and data validation errors") {
    SolveConfig bad;
    bad.dim = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    SolveConfig cfg = SolveConfig::for_chain(1, 4, 1);
    const HermiteSeries wrong_dim(TruncationConfig{2, 2});
    CHECK_THROWS_AS(solve_single_factor(wrong_dim, Complex(0.0, 0.0), cfg), std::invalid_argument);

    SolveConfig no_headroom;
    no_headroom.dim = 1;
    no_headroom.test_degree = 4;
    no_headroom.trial_degree = 5;
    CHECK_THROWS_AS(solve_single_factor(HermiteSeries(TruncationConfig{1, 2}), Complex(1.0, 0.0),
                                        no_headroom),
                    std::invalid_argument);

    HermiteSeries too_deep(TruncationConfig{1, cfg.trial_degree + 2});
    too_deep.set_coeff(MultiIndex{cfg.trial_degree + 2}, Complex(1.0, 0.0));
    CHECK_THROWS_AS(solve_single_factor(too_deep, Complex(0.0, 0.0), cfg), std::invalid_argument);

    // Chain budget: trial_degree must cover test_degree + 2 per stage.
    SolveConfig tight;
    tight.dim = 1;
    tight.test_degree = 4;
    tight.trial_degree = 6;
    const FactoredOperator two_stage =
        factor_operator(PolynomialSpec{{Complex(1.0, 0.0), Complex(0.0, 0.0)}});
    CHECK_THROWS_AS(ChainSolver(two_stage, tight), std::invalid_argument);

    CHECK_THROWS_AS(scaled_solve(HermiteSeries(TruncationConfig{1, 2}),
                                 PolynomialSpec{{Complex(1.0, 0.0)}}, WeightSpec{-1.0, {0.0}},
                                 SolveConfig::for_chain(1, 4, 1)),
                    std::invalid_argument);
}
