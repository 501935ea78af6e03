#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "rinv/hermite_basis.hpp"
#include "rinv/multi_index.hpp"
#include "rinv/quadrature.hpp"
#include "rinv/random.hpp"
#include "rinv/series.hpp"

using namespace rinv;

namespace {
const double kSqrtPi = std::sqrt(std::numbers::pi);
}

TEST_CASE("enumerate_basis produces graded lexicographic order") {
    const auto indices = enumerate_basis(TruncationConfig{2, 2});
    const std::vector<MultiIndex> expected{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    REQUIRE(indices.size() == 6);
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(indices[i] == expected[i]);
}

TEST_CASE("enumerate_basis constant-only and 35-index cases") {
    const auto constant = enumerate_basis(TruncationConfig{1, 0});
    REQUIRE(constant.size() == 1);
    CHECK(constant[0] == MultiIndex{0});

    const auto n3d4 = enumerate_basis(TruncationConfig{3, 4});
    CHECK(n3d4.size() == 35);
    CHECK(oracles::brute_force_basis_count(3, 4) == 35);
}

TEST_CASE("basis count matches binomial for n <= 4, d <= 10") {
    for (int n = 1; n <= 4; ++n) {
        for (int d = 0; d <= 10; ++d) {
            const auto indices = enumerate_basis(TruncationConfig{n, d});
            CHECK(static_cast<std::int64_t>(indices.size()) == binomial(n + d, n));
            CHECK(static_cast<long>(indices.size()) == oracles::brute_force_basis_count(n, d));
            for (const MultiIndex& idx : indices) {
                CHECK(idx.dim() == n);
                CHECK(idx.degree() <= d);
            }
        }
    }
}

TEST_CASE("Basis position lookup round-trips and rejects foreign indices") {
    Basis basis(TruncationConfig{3, 5});
    for (std::size_t i = 0; i < basis.size(); ++i) {
        CHECK(basis.position(basis.index(i)) == i);
    }
    CHECK_THROWS_AS(basis.position(MultiIndex{6, 0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(basis.position(MultiIndex{1, 1}), std::invalid_argument);
}

TEST_CASE("gauss_hermite_rule small rules match analytic values") {
    const QuadratureRule one = gauss_hermite_rule(1);
    REQUIRE(one.size() == 1);
    CHECK(one.nodes[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(one.weights[0] == doctest::Approx(kSqrtPi).epsilon(1e-14));

    const QuadratureRule two = gauss_hermite_rule(2);
    REQUIRE(two.size() == 2);
    CHECK(two.nodes[0] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-13));
    CHECK(two.nodes[1] == doctest::Approx(+1.0 / std::sqrt(2.0)).epsilon(1e-13));
    CHECK(two.weights[0] == doctest::Approx(kSqrtPi / 2.0).epsilon(1e-13));
    CHECK(two.weights[1] == doctest::Approx(kSqrtPi / 2.0).epsilon(1e-13));
}

TEST_CASE("gauss_hermite_rule weights sum to sqrt(pi) and nodes are symmetric") {
    for (int q = 1; q <= 25; ++q) {
        const QuadratureRule rule = gauss_hermite_rule(q);
        double sum = 0.0;
        for (double w : rule.weights) sum += w;
        CHECK(std::abs(sum - kSqrtPi) < 1e-13);
        for (std::size_t i = 0; i < rule.size(); ++i) {
            CHECK(rule.nodes[i] == -rule.nodes[rule.size() - 1 - i]);
        }
    }
}

TEST_CASE("gauss_hermite_rule integrates monomials exactly") {
    const QuadratureRule rule = gauss_hermite_rule(6);
    for (int k = 0; k <= 11; ++k) {
        double integral = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            integral += rule.weights[i] * std::pow(rule.nodes[i], k);
        }
        const double exact = oracles::gaussian_moment(k);
        CHECK(std::abs(integral - exact) < 1e-12 * (1.0 + std::abs(exact)));
    }
}

TEST_CASE("gauss_hermite_rule rejects nonpositive point counts") {
    CHECK_THROWS_AS(gauss_hermite_rule(0), std::invalid_argument);
}

TEST_CASE("eval_basis closed-form low orders") {
    const double inv_pi_quarter = std::pow(std::numbers::pi, -0.25);
    CHECK(eval_hermite_1d(0, 3.7) == doctest::Approx(inv_pi_quarter).epsilon(1e-14));
    CHECK(eval_hermite_1d(0, -100.0) == doctest::Approx(inv_pi_quarter).epsilon(1e-14));
    CHECK(eval_hermite_1d(1, 1.0) ==
          doctest::Approx(std::sqrt(2.0) * inv_pi_quarter).epsilon(1e-14));

    // Tensor index (1,0) at (1,7): product of the 1D values.
    const double expected = (std::sqrt(2.0) * inv_pi_quarter) * inv_pi_quarter;
    CHECK(eval_basis(MultiIndex{1, 0}, {1.0, 7.0}) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(expected == doctest::Approx(0.7978845608).epsilon(1e-9));
}

TEST_CASE("recurrence evaluation matches monomial expansion up to k = 12") {
    const std::vector<double> points{-3.5, -1.0, -0.25, 0.0, 0.5, 1.7, 4.2};
    for (int k = 0; k <= 12; ++k) {
        for (double x : points) {
            const double via_recurrence = eval_hermite_1d(k, x);
            const double via_monomials = oracles::hermite_normalized_by_monomials(k, x);
            CHECK(std::abs(via_recurrence - via_monomials) <=
                  1e-10 * std::max(1.0, std::abs(via_monomials)));
        }
    }
}

TEST_CASE("quadrature Gram matrix of the basis is the identity") {
    for (const auto& [n, d] : std::vector<std::pair<int, int>>{{1, 8}, {2, 6}, {3, 4}}) {
        Basis basis(TruncationConfig{n, d});
        const QuadratureRule rule = gauss_hermite_rule(d + 1);
        std::vector<std::vector<double>> gram(basis.size(), std::vector<double>(basis.size(), 0.0));
        for_each_tensor_node(rule, n, [&](const std::vector<double>& x, double w) {
            std::vector<double> values(basis.size());
            for (std::size_t i = 0; i < basis.size(); ++i) values[i] = eval_basis(basis.index(i), x);
            for (std::size_t i = 0; i < basis.size(); ++i) {
                for (std::size_t j = 0; j <= i; ++j) gram[i][j] += w * values[i] * values[j];
            }
        });
        double worst = 0.0;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                worst = std::max(worst, std::abs(gram[i][j] - (i == j ? 1.0 : 0.0)));
            }
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("inner_product orthonormality and conjugate linearity") {
    Basis basis(TruncationConfig{2, 3});
    const HermiteSeries a = HermiteSeries::basis_element(basis, MultiIndex{1, 2});
    const HermiteSeries b = HermiteSeries::basis_element(basis, MultiIndex{0, 3});
    CHECK(inner_product(a, a) == Complex(1.0, 0.0));
    CHECK(inner_product(a, b) == Complex(0.0, 0.0));

    const HermiteSeries scaled = Complex(0.0, 1.0) * a;
    CHECK(inner_product(scaled, a) == Complex(0.0, -1.0));

    HermiteSeries other(TruncationConfig{2, 4});
    CHECK_THROWS_AS(inner_product(a, other), std::invalid_argument);
}

TEST_CASE("project_samples reproduces constants, basis elements and zero") {
    const TruncationConfig config{1, 6};
    const QuadratureRule rule = gauss_hermite_rule(7);

    const HermiteSeries ones =
        project_samples([](const std::vector<double>&) { return Complex(1.0, 0.0); }, config, rule);
    CHECK(std::abs(ones[0] - Complex(std::pow(std::numbers::pi, 0.25), 0.0)) < 1e-13);
    for (std::size_t i = 1; i < ones.size(); ++i) CHECK(std::abs(ones[i]) < 1e-12);

    const HermiteSeries reproduced = project_samples(
        [](const std::vector<double>& x) { return Complex(eval_hermite_1d(3, x[0]), 0.0); },
        config, rule);
    for (std::size_t i = 0; i < reproduced.size(); ++i) {
        const Complex expected = i == 3 ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
        CHECK(std::abs(reproduced[i] - expected) < 1e-12);
    }

    const HermiteSeries zero =
        project_samples([](const std::vector<double>&) { return Complex(0.0, 0.0); }, config, rule);
    CHECK(zero.norm_sq() == 0.0);
}

TEST_CASE("Parseval: quadrature of |series|^2 equals coefficient square sum") {
    for (const auto& [n, seed] : std::vector<std::pair<int, std::uint64_t>>{{1, 11}, {2, 12}}) {
        const TruncationConfig config{n, 8};
        const HermiteSeries series = random_series(config, seed, false);
        const QuadratureRule rule = gauss_hermite_rule(9);
        double integral = 0.0;
        for_each_tensor_node(rule, n, [&](const std::vector<double>& x, double w) {
            integral += w * std::norm(eval_series(series, x));
        });
        CHECK(std::abs(integral - series.norm_sq()) <= 1e-10 * series.norm_sq());
    }
}

TEST_CASE("HermiteSeries enforces its config invariants") {
    HermiteSeries s(TruncationConfig{2, 3});
    CHECK_THROWS_AS(s.set_coeff(MultiIndex{4, 0}, Complex(1.0, 0.0)), std::invalid_argument);
    CHECK_THROWS_AS(s.set_coeff(MultiIndex{1}, Complex(1.0, 0.0)), std::invalid_argument);

    s.set_coeff(MultiIndex{2, 1}, Complex(2.0, -1.0));
    CHECK(s.effective_degree() == 3);
    CHECK_THROWS_AS(s.with_max_degree(2), std::invalid_argument);
    const HermiteSeries truncated = s.with_max_degree(2, true);
    CHECK(truncated.norm_sq() == 0.0);
    const HermiteSeries enlarged = s.with_max_degree(5);
    CHECK(enlarged.coeff(MultiIndex{2, 1}) == Complex(2.0, -1.0));
    CHECK(enlarged.norm_sq() == s.norm_sq());
}

TEST_CASE("WeightSpec validation") {
    CHECK_THROWS_AS(WeightSpec({-1.0, {0.0}}).validate(1), std::invalid_argument);
    CHECK_THROWS_AS(WeightSpec({1.0, {0.0}}).validate(2), std::invalid_argument);
    CHECK(WeightSpec::unit(3).is_unit());
    WeightSpec shifted{1.0, {0.5}};
    CHECK(!shifted.is_unit());
}
