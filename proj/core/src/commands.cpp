#include "rinv/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "rinv/identities.hpp"
#include "rinv/random.hpp"

namespace rinv {

namespace {

bool write_file(const std::string& path, const std::string& content, std::ostream& err) {
    std::ofstream out(path);
    if (!out) {
        err << "cannot open output file '" << path << "'\n";
        return false;
    }
    out << content;
    return true;
}

struct CsvRow {
    long trial;
    std::string quantity;
    double lhs;
    double rhs;
    double value;  // residual or margin
    bool violation;
    std::string note;
};

std::string rows_to_csv(const std::vector<CsvRow>& rows) {
    std::ostringstream os;
    os.precision(17);
    os << "trial,quantity,lhs,rhs,residual_or_margin\n";
    for (const CsvRow& row : rows) {
        os << row.trial << ',' << row.quantity << ',' << row.lhs << ',' << row.rhs << ','
           << row.value << '\n';
    }
    return os.str();
}

/// Run fn(trial) for trial in [0, trials) across workers; each trial only
/// touches its own slot, so results are order-independent.
void parallel_trials(int trials, const std::function<void(int)>& fn) {
    const int workers = std::min(worker_count(), std::max(trials, 1));
    if (workers <= 1) {
        for (int t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int t = w; t < trials; t += workers) fn(t);
        });
    }
    for (std::thread& th : pool) th.join();
}

}  // namespace

int worker_count() {
    if (const char* env = std::getenv("RINV_THREADS")) {
        const int requested = std::atoi(env);
        if (requested >= 1) return requested;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

int cmd_solve(const SolveOptions& options, std::ostream& out, std::ostream& err) {
    ProblemFile problem;
    try {
        problem = load_problem(options.problem_path);
    } catch (const ProblemParseError& ex) {
        err << ex.what() << "\n";
        return kExitInputError;
    }

    const auto start = std::chrono::steady_clock::now();
    ReportRecord record{.problem = problem,
                        .report = SolveReport{.stages = {},
                                              .overall_ratio = 0.0,
                                              .overall_bound = 0.0,
                                              .solution = HermiteSeries(TruncationConfig{
                                                  problem.dim, problem.resolved_trial_degree()})},
                        .certificate = {},
                        .wall_time_seconds = 0.0};
    try {
        const HermiteSeries rhs = problem.build_rhs();
        const PolynomialSpec poly(problem.polynomial);
        const SolveConfig config = problem.solve_config();
        if (problem.weight.is_unit()) {
            record.report = solve_chain(rhs, factor_operator(poly), config);
        } else {
            record.report = scaled_solve(rhs, poly, problem.weight, config).scaled;
        }
    } catch (const InfeasibleSolveError& ex) {
        err << "infeasible solve: " << ex.what() << "\n";
        return kExitInfeasible;
    } catch (const NonConvergenceError& ex) {
        err << "cannot set up problem: " << ex.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& ex) {
        err << "invalid problem: " << ex.what() << "\n";
        return kExitInputError;
    }

    const double tolerance = options.strict ? 1e-8 : problem.certify_tolerance;
    record.certificate = certify_bound(record.report, tolerance);
    record.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (!write_file(options.report_path, serialize_report(record), err)) return kExitInputError;
    if (options.solution_csv_path &&
        !write_file(*options.solution_csv_path, solution_to_csv(record.report.solution), err)) {
        return kExitInputError;
    }

    out << "overall ratio " << std::setprecision(9) << record.report.overall_ratio << " vs bound "
        << record.report.overall_bound << " -> " << (record.certificate.pass ? "pass" : "FAIL")
        << "\n";
    return record.certificate.pass ? kExitPass : kExitViolation;
}

namespace {

int verify_identities(const VerifyOptions& options, std::vector<CsvRow>& rows) {
    const TruncationConfig config{options.dim, options.degree};

    const double adjoint_dev = check_adjointness(config);
    rows.push_back(CsvRow{-1, "adjointness", 0.0, 0.0, adjoint_dev, adjoint_dev >= 1e-12, ""});
    const double commutator_dev = check_commutator_identity(config);
    rows.push_back(
        CsvRow{-1, "commutator", 0.0, 0.0, commutator_dev, commutator_dev >= 1e-12, ""});

    const std::size_t base = rows.size();
    rows.resize(base + 2 * static_cast<std::size_t>(options.trials));
    parallel_trials(options.trials, [&](int trial) {
        SplitMix64 rng(substream(options.seed, static_cast<std::uint64_t>(trial)));
        const HermiteSeries phi = random_series(config, rng.next(), true);
        const Complex xi = 5.0 * rng.complex_pm1();

        const IdentityCheck norm_check = check_norm_identity(xi, phi);
        rows[base + 2 * static_cast<std::size_t>(trial)] =
            CsvRow{trial, "norm_identity", norm_check.lhs.real(), norm_check.rhs.real(),
                   norm_check.relative(), norm_check.relative() >= 1e-10, ""};
        const IdentityCheck key_check = check_key_step(phi);
        rows[base + 2 * static_cast<std::size_t>(trial) + 1] =
            CsvRow{trial, "key_step", key_check.lhs.real(), key_check.rhs.real(),
                   key_check.relative(), key_check.relative() >= 1e-10, ""};
    });
    return kExitPass;
}

int verify_coercivity(const VerifyOptions& options, std::vector<CsvRow>& rows) {
    const TruncationConfig config{options.dim, options.degree};

    // The tight case: phi = h_0, xi = 0 saturates the bound.
    {
        const HermiteSeries h0 =
            HermiteSeries::basis_element(Basis(config), MultiIndex(std::vector<int>(
                                                            static_cast<std::size_t>(options.dim), 0)));
        const CoercivityCheck tight = check_coercivity(Complex(0.0, 0.0), h0);
        rows.push_back(CsvRow{-1, "coercivity_tight", tight.adjoint_norm_sq, tight.lower_bound,
                              tight.margin, std::abs(tight.margin) > 1e-10, "saturates the bound"});
    }

    const std::size_t base = rows.size();
    rows.resize(base + static_cast<std::size_t>(options.trials));
    parallel_trials(options.trials, [&](int trial) {
        SplitMix64 rng(substream(options.seed, static_cast<std::uint64_t>(trial)));
        const HermiteSeries phi = random_series(config, rng.next(), true);
        const Complex xi = 5.0 * rng.complex_pm1();
        const CoercivityCheck check = check_coercivity(xi, phi);
        rows[base + static_cast<std::size_t>(trial)] =
            CsvRow{trial, "coercivity", check.adjoint_norm_sq, check.lower_bound, check.margin,
                   check.margin < -1e-10, ""};
    });
    return kExitPass;
}

int verify_bound(const VerifyOptions& options, std::vector<CsvRow>& rows) {
    const SolveConfig config = SolveConfig::for_chain(options.dim, options.degree, 1);
    const double bound = 1.0 / (8.0 * options.dim);

    // Sharp case: xi = 0, f = h_0 attains 1/(8n) exactly.
    {
        const HermiteSeries h0 = HermiteSeries::basis_element(
            Basis(TruncationConfig{options.dim, 0}),
            MultiIndex(std::vector<int>(static_cast<std::size_t>(options.dim), 0)));
        const auto [u, stage] = solve_single_factor(h0, Complex(0.0, 0.0), config);
        rows.push_back(CsvRow{-1, "sharp_ratio", stage.ratio, bound, bound - stage.ratio,
                              std::abs(stage.ratio - bound) > 1e-8, "bound attained"});
    }

    const std::size_t base = rows.size();
    rows.resize(base + static_cast<std::size_t>(options.trials));
    parallel_trials(options.trials, [&](int trial) {
        SplitMix64 rng(substream(options.seed, static_cast<std::uint64_t>(trial)));
        const HermiteSeries f =
            random_series(TruncationConfig{options.dim, options.degree}, rng.next(), true);
        const Complex xi = 5.0 * rng.complex_pm1();
        const auto [u, stage] = solve_single_factor(f, xi, config);
        rows[base + static_cast<std::size_t>(trial)] =
            CsvRow{trial, "stage_ratio", stage.ratio, bound, bound - stage.ratio,
                   stage.ratio > bound * 1.05, ""};
    });
    return kExitPass;
}

}  // namespace

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
    if (options.dim < 1 || options.degree < 0 || options.trials < 1) {
        err << "verify: dim must be >= 1, degree >= 0, trials >= 1\n";
        return kExitInputError;
    }

    std::vector<CsvRow> rows;
    if (options.kind == "identities") {
        verify_identities(options, rows);
    } else if (options.kind == "coercivity") {
        verify_coercivity(options, rows);
    } else if (options.kind == "bound") {
        verify_bound(options, rows);
    } else {
        err << "verify: unknown kind '" << options.kind
            << "' (expected identities|coercivity|bound)\n";
        return kExitInputError;
    }

    if (!options.csv_path.empty() && !write_file(options.csv_path, rows_to_csv(rows), err)) {
        return kExitInputError;
    }

    int violations = 0;
    for (const CsvRow& row : rows) {
        if (row.violation) {
            ++violations;
            err << "violation: kind=" << options.kind << " seed=" << options.seed
                << " trial=" << row.trial << " quantity=" << row.quantity << " value="
                << std::setprecision(17) << row.value << "\n";
        }
    }
    out << options.kind << ": " << rows.size() << " rows, " << violations << " violation(s)\n";
    return violations == 0 ? kExitPass : kExitViolation;
}

int cmd_roots(const std::vector<Complex>& coefficients, std::ostream& out, std::ostream& err) {
    if (coefficients.empty()) {
        err << "roots: need at least one coefficient (a_0)\n";
        return kExitInputError;
    }
    try {
        const PolynomialSpec spec{coefficients};
        const FactoredOperator factored = factor_operator(spec);
        const PolynomialSpec expanded = reconstruct(factored);
        double residual = 0.0;
        for (std::size_t j = 0; j < coefficients.size(); ++j) {
            residual = std::max(residual, std::abs(expanded.coefficients[j] - coefficients[j]));
        }
        std::vector<Complex> roots;
        roots.reserve(factored.shifts.size());
        for (const Complex& s : factored.shifts) roots.push_back(-s);
        std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        out << "roots:";
        for (const Complex& r : roots) out << " " << format_complex(r);
        out << "\nshifts:";
        for (const Complex& s : factored.shifts) out << " " << format_complex(s);
        out << "\nreconstruction residual: " << std::setprecision(3) << residual << "\n";
        return kExitPass;
    } catch (const NonConvergenceError& ex) {
        err << ex.what() << "\n";
        return kExitViolation;
    }
}

namespace {

// Closed-form data of the unweighted demonstration on x >= 1 (with both
// free constants set to zero): u = -x/2 + x ln x + 2/3, u'' = 1/x.
double demo_solution(double x) { return -0.5 * x + x * std::log(x) + 2.0 / 3.0; }

double demo_solution_sq(double x) {
    const double u = demo_solution(x);
    return u * u;
}

double simpson(const std::function<double(double)>& fn, double a, double b, int panels) {
    if (panels % 2 == 1) ++panels;
    const double h = (b - a) / panels;
    double total = fn(a) + fn(b);
    for (int i = 1; i < panels; ++i) {
        total += fn(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return total * h / 3.0;
}

// integral_1^R |u|^2 dx with the configured panels per decade.
double tail_integral(double r, int panels_per_decade) {
    double total = 0.0;
    double left = 1.0;
    while (left < r) {
        const double right = std::min(left * 10.0, r);
        const int panels = std::max(
            16, static_cast<int>(panels_per_decade * std::log10(right / left)) / 2 * 2);
        total += simpson(demo_solution_sq, left, right, panels);
        left = right;
    }
    return total;
}

}  // namespace

int cmd_counterexample(const CounterexampleOptions& options, std::ostream& out,
                       std::ostream& err) {
    if (options.rmax <= 1.0) {
        err << "counterexample: rmax must be > 1\n";
        return kExitInputError;
    }
    bool ok = true;
    out << std::setprecision(9);

    // The data: f(x) = 1/x for x >= 1, x on (0,1), 0 for x <= 0.
    const auto f = [](double x) {
        if (x >= 1.0) return 1.0 / x;
        if (x > 0.0) return x;
        return 0.0;
    };

    // u'' = f pointwise on x >= 1 by central differences.
    {
        const double h = 1e-4;
        double worst = 0.0;
        const double lo = 1.25, hi = 8.0;
        for (int i = 0; i < options.grid_points; ++i) {
            const double x = lo + (hi - lo) * i / std::max(options.grid_points - 1, 1);
            const double second =
                (demo_solution(x + h) - 2.0 * demo_solution(x) + demo_solution(x - h)) / (h * h);
            worst = std::max(worst, std::abs(second - 1.0 / x) * x);
        }
        out << "second-derivative check on [" << lo << ", " << hi << "]: max relative deviation "
            << worst << "\n";
        if (worst > 1e-5) {
            err << "counterexample: u'' = f check failed (" << worst << ")\n";
            ok = false;
        }
    }

    out << "u(1) = " << demo_solution(1.0) << ", u(2) = " << demo_solution(2.0) << "\n";

    // ||f||^2 over (0, infinity): x^2 on (0,1) plus x^{-2} tail, the tail
    // integrated after the substitution t = 1/x.
    const double f_norm_sq = simpson([](double x) { return x * x; }, 0.0, 1.0, 10000) +
                             simpson([](double) { return 1.0; }, 0.0, 1.0, 10000);
    out << "integral of |f|^2 over (0,inf) = " << f_norm_sq << " (target 4/3)\n";
    if (std::abs(f_norm_sq - 4.0 / 3.0) > 1e-6) {
        err << "counterexample: |f|^2 integral off target\n";
        ok = false;
    }

    // T(R) at 10, 100 and rmax: strictly increasing, super-linear growth.
    std::vector<double> radii{10.0, 100.0, options.rmax};
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    std::vector<double> growth;
    out << "unweighted tail growth:\n";
    for (double r : radii) {
        growth.push_back(tail_integral(r, options.panels_per_decade));
        out << "  T(" << r << ") = " << growth.back() << "\n";
    }
    for (std::size_t i = 1; i < growth.size(); ++i) {
        if (growth[i] <= growth[i - 1]) {
            err << "counterexample: T(R) not strictly increasing\n";
            ok = false;
        }
    }
    const double t10 = tail_integral(10.0, options.panels_per_decade);
    const double t100 = tail_integral(100.0, options.panels_per_decade);
    out << "T(100)/T(10) = " << t100 / t10 << " (needs > 10)\n";
    if (!(t100 > 10.0 * t10)) {
        err << "counterexample: growth ratio too small\n";
        ok = false;
    }

    // The contrast: the same data solved in the Gaussian-weighted space has
    // a certified finite ratio <= 1/8.
    {
        const int test_degree = 20;
        const SolveConfig config = SolveConfig::for_chain(1, test_degree, 1);
        const QuadratureRule rule = gauss_hermite_rule(2 * (test_degree + 1));
        const HermiteSeries data = project_samples(
            [&](const std::vector<double>& x) { return Complex(f(x[0]), 0.0); },
            TruncationConfig{1, test_degree}, rule);
        const FactoredOperator laplace = factor_operator(PolynomialSpec{{Complex(0.0, 0.0)}});
        const SolveReport report = solve_chain(data, laplace, config);
        const BoundCertificate cert = certify_bound(report, 0.05);
        out << "Gaussian-weighted solve of the same data: ratio " << report.overall_ratio
            << " vs bound " << report.overall_bound << " -> " << (cert.pass ? "pass" : "FAIL")
            << "\n";
        if (!cert.pass) {
            err << "counterexample: weighted solve certificate failed\n";
            ok = false;
        }
    }

    return ok ? kExitPass : kExitViolation;
}

}  // namespace rinv
