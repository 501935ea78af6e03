#include "rinv/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "rinv/random.hpp"

namespace rinv {

namespace {

using nlohmann::json;

Complex complex_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im")) {
        throw ProblemParseError("problem file: " + where + " must be an object {\"re\":..,\"im\":..}");
    }
    return Complex(j.at("re").get<double>(), j.at("im").get<double>());
}

json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

[[noreturn]] void fail_missing(const std::string& field) {
    throw ProblemParseError("problem file: missing required field '" + field + "'");
}

}  // namespace

SolveConfig ProblemFile::solve_config() const {
    SolveConfig cfg;
    cfg.dim = dim;
    cfg.test_degree = test_degree;
    cfg.trial_degree = resolved_trial_degree();
    cfg.rank_tol = rank_tol;
    cfg.feas_tol = feas_tol;
    return cfg;
}

HermiteSeries ProblemFile::build_rhs() const {
    const int n = dim;
    switch (rhs.kind) {
        case RhsSpec::Kind::Constant: {
            // <h~_0, 1> over the weight e^{-lambda|x-x0|^2} is (pi/lambda)^{n/4}.
            HermiteSeries s(TruncationConfig{n, 0});
            s[0] = std::pow(std::numbers::pi / weight.lambda, 0.25 * n);
            return s;
        }
        case RhsSpec::Kind::GaussianBump: {
            const double lambda = weight.lambda;
            const std::vector<double>& x0 = weight.center;
            const double root = std::sqrt(lambda);
            const QuadratureRule rule = gauss_hermite_rule(2 * resolved_trial_degree());
            // Project g(y) = f(y/sqrt(lambda) + x0) in the unit basis, then
            // scale coefficients back to the weighted basis.
            auto g = [&](const std::vector<double>& y) {
                double norm_sq = 0.0;
                for (std::size_t j = 0; j < y.size(); ++j) {
                    const double xj = y[j] / root + x0[j];
                    norm_sq += xj * xj;
                }
                return Complex(std::exp(-norm_sq), 0.0);
            };
            HermiteSeries unit = project_samples(g, TruncationConfig{n, test_degree}, rule);
            return std::pow(lambda, -0.25 * n) * unit;
        }
        case RhsSpec::Kind::Random: {
            const int degree = rhs.degree >= 0 ? rhs.degree : test_degree;
            return random_series(TruncationConfig{n, degree}, rhs.seed, true);
        }
        case RhsSpec::Kind::Coefficients: {
            int max_degree = test_degree;
            for (const auto& [idx, value] : rhs.coefficients) {
                max_degree = std::max(max_degree, idx.degree());
            }
            HermiteSeries s(TruncationConfig{n, max_degree});
            for (const auto& [idx, value] : rhs.coefficients) s.set_coeff(idx, value);
            return s;
        }
    }
    throw std::logic_error("unreachable rhs kind");
}

ProblemFile parse_problem(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& err) {
        // Translate the byte offset into a line for the diagnostic.
        std::size_t line = 1;
        for (std::size_t i = 0; i < err.byte && i < json_text.size(); ++i) {
            if (json_text[i] == '\n') ++line;
        }
        throw ProblemParseError("problem file: JSON parse error near line " +
                                std::to_string(line) + ": " + err.what());
    }

    try {
        ProblemFile p;
        if (!root.contains("dim")) fail_missing("dim");
        p.dim = root.at("dim").get<int>();
        if (p.dim < 1) throw ProblemParseError("problem file: dim must be >= 1");

        if (!root.contains("polynomial")) fail_missing("polynomial");
        const json& poly = root.at("polynomial");
        if (!poly.is_array() || poly.empty()) {
            throw ProblemParseError(
                "problem file: polynomial must be a nonempty array of {re,im} (a_0..a_{m-1})");
        }
        for (std::size_t j = 0; j < poly.size(); ++j) {
            p.polynomial.push_back(
                complex_from_json(poly[j], "polynomial[" + std::to_string(j) + "]"));
        }

        p.weight = WeightSpec::unit(p.dim);
        if (root.contains("weight")) {
            const json& w = root.at("weight");
            if (w.contains("lambda")) p.weight.lambda = w.at("lambda").get<double>();
            if (w.contains("center")) {
                p.weight.center = w.at("center").get<std::vector<double>>();
            }
            if (p.weight.lambda <= 0.0) {
                throw ProblemParseError("problem file: weight.lambda must be positive");
            }
            if (static_cast<int>(p.weight.center.size()) != p.dim) {
                throw ProblemParseError("problem file: weight.center must have length dim");
            }
        }

        if (!root.contains("rhs")) fail_missing("rhs");
        const json& rhs = root.at("rhs");
        if (rhs.contains("builtin")) {
            const std::string name = rhs.at("builtin").get<std::string>();
            if (name == "constant") {
                p.rhs.kind = RhsSpec::Kind::Constant;
            } else if (name == "gaussian-bump") {
                p.rhs.kind = RhsSpec::Kind::GaussianBump;
            } else if (name == "random") {
                p.rhs.kind = RhsSpec::Kind::Random;
                if (!rhs.contains("seed")) fail_missing("rhs.seed (random builtin)");
                p.rhs.seed = rhs.at("seed").get<std::uint64_t>();
                if (rhs.contains("degree")) p.rhs.degree = rhs.at("degree").get<int>();
            } else {
                throw ProblemParseError("problem file: unknown rhs builtin '" + name + "'");
            }
        } else if (rhs.contains("coefficients")) {
            p.rhs.kind = RhsSpec::Kind::Coefficients;
            for (const json& entry : rhs.at("coefficients")) {
                if (!entry.contains("index")) fail_missing("rhs.coefficients[].index");
                std::vector<int> idx = entry.at("index").get<std::vector<int>>();
                if (static_cast<int>(idx.size()) != p.dim) {
                    throw ProblemParseError(
                        "problem file: rhs coefficient index length must equal dim");
                }
                p.rhs.coefficients.emplace_back(
                    MultiIndex(std::move(idx)),
                    Complex(entry.at("re").get<double>(), entry.at("im").get<double>()));
            }
        } else {
            throw ProblemParseError(
                "problem file: rhs must carry either 'builtin' or 'coefficients'");
        }

        if (!root.contains("truncation")) fail_missing("truncation");
        const json& trunc = root.at("truncation");
        if (!trunc.contains("test_degree")) fail_missing("truncation.test_degree");
        p.test_degree = trunc.at("test_degree").get<int>();
        if (p.test_degree < 0) {
            throw ProblemParseError("problem file: truncation.test_degree must be >= 0");
        }
        if (trunc.contains("trial_degree")) {
            p.trial_degree = trunc.at("trial_degree").get<int>();
            if (p.trial_degree < p.test_degree) {
                throw ProblemParseError(
                    "problem file: truncation.trial_degree must be >= test_degree");
            }
        }

        if (root.contains("tolerances")) {
            const json& tol = root.at("tolerances");
            if (tol.contains("certify")) p.certify_tolerance = tol.at("certify").get<double>();
            if (tol.contains("rank")) p.rank_tol = tol.at("rank").get<double>();
            if (tol.contains("feasibility")) p.feas_tol = tol.at("feasibility").get<double>();
            if (p.certify_tolerance < 0.0 || p.rank_tol <= 0.0 || p.feas_tol <= 0.0) {
                throw ProblemParseError("problem file: tolerances out of range");
            }
        }
        return p;
    } catch (const json::exception& err) {
        throw ProblemParseError(std::string("problem file: ") + err.what());
    }
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ProblemParseError("problem file: cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem(buffer.str());
}

namespace {

json problem_to_json(const ProblemFile& p) {
    json root;
    root["dim"] = p.dim;
    json poly = json::array();
    for (Complex a : p.polynomial) poly.push_back(complex_to_json(a));
    root["polynomial"] = poly;
    root["weight"] = json{{"lambda", p.weight.lambda}, {"center", p.weight.center}};
    switch (p.rhs.kind) {
        case RhsSpec::Kind::Constant:
            root["rhs"] = json{{"builtin", "constant"}};
            break;
        case RhsSpec::Kind::GaussianBump:
            root["rhs"] = json{{"builtin", "gaussian-bump"}};
            break;
        case RhsSpec::Kind::Random:
            root["rhs"] = json{{"builtin", "random"}, {"seed", p.rhs.seed}};
            if (p.rhs.degree >= 0) root["rhs"]["degree"] = p.rhs.degree;
            break;
        case RhsSpec::Kind::Coefficients: {
            json entries = json::array();
            for (const auto& [idx, value] : p.rhs.coefficients) {
                entries.push_back(json{{"index", idx.entries()},
                                       {"re", value.real()},
                                       {"im", value.imag()}});
            }
            root["rhs"] = json{{"coefficients", entries}};
            break;
        }
    }
    root["truncation"] =
        json{{"test_degree", p.test_degree}, {"trial_degree", p.resolved_trial_degree()}};
    root["tolerances"] = json{{"certify", p.certify_tolerance},
                              {"rank", p.rank_tol},
                              {"feasibility", p.feas_tol}};
    return root;
}

}  // namespace

std::string serialize_problem(const ProblemFile& problem) {
    return problem_to_json(problem).dump(2) + "\n";
}

std::string serialize_report(const ReportRecord& record) {
    json root;
    root["problem"] = problem_to_json(record.problem);

    json stages = json::array();
    for (const StageReport& stage : record.report.stages) {
        stages.push_back(json{{"shift", complex_to_json(stage.shift)},
                              {"input_norm_sq", stage.input_norm_sq},
                              {"output_norm_sq", stage.output_norm_sq},
                              {"ratio", stage.ratio},
                              {"bound", stage.stage_bound},
                              {"constraint_residual", stage.constraint_residual}});
    }
    root["stages"] = stages;
    root["overall"] = json{{"ratio", record.report.overall_ratio},
                           {"bound", record.report.overall_bound},
                           {"verdict", record.certificate.pass ? "pass" : "fail"},
                           {"margin", record.certificate.overall_margin},
                           {"tolerance", record.certificate.tolerance}};
    root["solution_norm_sq"] = record.report.solution.norm_sq();
    root["wall_time_seconds"] = record.wall_time_seconds;
    return root.dump(2) + "\n";
}

std::string solution_to_csv(const HermiteSeries& solution) {
    std::ostringstream os;
    os.precision(17);
    os << "index,re,im\n";
    const Basis& basis = solution.basis();
    for (std::size_t i = 0; i < solution.size(); ++i) {
        const Complex c = solution[i];
        if (c == Complex(0.0, 0.0)) continue;
        const MultiIndex& idx = basis.index(i);
        for (int j = 0; j < idx.dim(); ++j) {
            if (j) os << ';';
            os << idx[j];
        }
        os << ',' << c.real() << ',' << c.imag() << '\n';
    }
    return os.str();
}

std::string format_complex(Complex z) {
    const double re = z.real() == 0.0 ? 0.0 : z.real();  // normalize -0
    const double im = z.imag() == 0.0 ? 0.0 : z.imag();
    std::ostringstream os;
    os << std::setprecision(9) << re << (std::signbit(im) ? "-" : "+") << std::abs(im) << "i";
    return os.str();
}

}  // namespace rinv
