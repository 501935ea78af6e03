#include <benchmark/benchmark.h>

#include "rinv/operators.hpp"
#include "rinv/random.hpp"
#include "rinv/solver.hpp"

namespace {

void BM_EnumerateBasis(benchmark::State& state) {
    const rinv::TruncationConfig config{3, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        auto indices = rinv::enumerate_basis(config);
        benchmark::DoNotOptimize(indices);
    }
}
BENCHMARK(BM_EnumerateBasis)->Arg(8)->Arg(16)->Arg(24);

void BM_GaussHermiteRule(benchmark::State& state) {
    for (auto _ : state) {
        auto rule = rinv::gauss_hermite_rule(static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(rule);
    }
}
BENCHMARK(BM_GaussHermiteRule)->Arg(8)->Arg(32)->Arg(64);

void BM_ProjectSamples(benchmark::State& state) {
    const rinv::TruncationConfig config{2, static_cast<int>(state.range(0))};
    const rinv::QuadratureRule rule = rinv::gauss_hermite_rule(config.max_degree + 1);
    const auto fn = [](const std::vector<double>& x) {
        return rinv::Complex(std::exp(-x[0] * x[0] - 0.5 * x[1] * x[1]), 0.0);
    };
    for (auto _ : state) {
        auto series = rinv::project_samples(fn, config, rule);
        benchmark::DoNotOptimize(series);
    }
}
BENCHMARK(BM_ProjectSamples)->Arg(8)->Arg(16);

void BM_WeightedAdjointAssembly(benchmark::State& state) {
    const rinv::TruncationConfig config{2, static_cast<int>(state.range(0))};
    for (auto _ : state) {
        auto matrix = rinv::matrix_weighted_adjoint(config);
        benchmark::DoNotOptimize(matrix);
    }
}
BENCHMARK(BM_WeightedAdjointAssembly)->Arg(8)->Arg(12)->Arg(16);

void BM_FactorSolverBuild(benchmark::State& state) {
    rinv::SolveConfig cfg = rinv::SolveConfig::for_chain(2, static_cast<int>(state.range(0)), 1);
    const rinv::OperatorMatrix matrix =
        rinv::assemble_factor_matrix(rinv::Complex(0.5, -1.0), cfg);
    for (auto _ : state) {
        rinv::MinimalNormSolver solver(matrix, cfg.rank_tol);
        benchmark::DoNotOptimize(solver);
    }
}
BENCHMARK(BM_FactorSolverBuild)->Arg(8)->Arg(12)->Arg(16);

void BM_ChainSolve(benchmark::State& state) {
    const rinv::SolveConfig cfg = rinv::SolveConfig::for_chain(1, 16, 2);
    const rinv::FactoredOperator factored =
        rinv::factor_operator(rinv::PolynomialSpec{{rinv::Complex(1.0, 0.5), rinv::Complex(0.0, -1.0)}});
    const rinv::ChainSolver solver(factored, cfg);
    const rinv::HermiteSeries f = rinv::random_series(rinv::TruncationConfig{1, 8}, 42, true);
    for (auto _ : state) {
        auto report = solver.solve(f);
        benchmark::DoNotOptimize(report);
    }
}
BENCHMARK(BM_ChainSolve);

}  // namespace

BENCHMARK_MAIN();
