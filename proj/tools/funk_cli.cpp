#include "funk_cli.hpp"

#include "funk/cauchy.hpp"
#include "funk/crofton.hpp"
#include "funk/holmes_thompson.hpp"
#include "funk/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

namespace funk::cli {

namespace {

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

std::string secs(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

struct Inputs {
    ConvexBody K;
    ConvexBody G;
    int d;
};

Inputs load(const RunConfig& c) {
    if (c.body_k.empty() || c.body_g.empty()) throw ParseError("--body-k and --body-g are required");
    Inputs in{load_body(c.body_k), load_body(c.body_g), 0};
    in.d = dimension(in.K);
    if (dimension(in.G) != in.d) throw InvariantError("bodies have different dimensions");
    if (in.d < 2) throw InvariantError("dimension must be at least 2");
    return in;
}

QuadratureSpec spec_for(const RunConfig& c, int d, const std::string& method) {
    if (c.budget && *c.budget < 1) throw InvariantError("budget must be at least 1");
    if (c.threads < 1) throw InvariantError("threads must be at least 1");
    QuadratureSpec s = d == 2 && method != "crofton" ? QuadratureSpec::deterministic(c.budget.value_or(4096))
                                                      : QuadratureSpec::monte_carlo(c.budget.value_or(100000));
    s.seed = c.seed;
    s.threads = c.threads;
    return s;
}

using Estimator = std::function<EstimateReport(const ConvexBody&, const ConvexBody&, const QuadratureSpec&)>;

EstimateReport crofton(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& s) {
    return crofton_estimate(K, G, s.budget, s.seed, s.threads);
}

EstimateReport vertex(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& s) {
    if (!is_polytope(K)) throw InvariantError("method vertex requires a polytope K");
    return funk_area_vertex_decomposition(K, G, s).total;
}

Estimator estimator(const std::string& command, const std::string& model, const std::string& method) {
    if (command == "volume") {
        if (method == "direct" && model == "funk") return funk_volume;
        if (method == "direct" && model == "hilbert") return hilbert_volume;
    } else if (model == "funk") {
        if (method == "direct") return funk_area_direct;
        if (method == "cauchy") return funk_area_cauchy;
        if (method == "vertex") return vertex;
        if (method == "crofton") return crofton;
        if (method == "double-integral") return funk_area_double_integral;
    } else if (model == "hilbert") {
        if (method == "direct") return hilbert_area_direct;
    } else if (model == "minkowski") {
        if (method == "direct") return minkowski_area_direct;
        if (method == "cauchy") return minkowski_area;
    }
    throw InvariantError("method " + method + " is not available for " + command + " in model " + model);
}

template <class F>
auto timed(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = f();
    return std::pair{r, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
}

const char* header = "method,model,d,value,std_err,budget,seed,seconds";

std::string row(const RunConfig& c, const std::string& method, const std::string& model, int d,
                const EstimateReport& r, std::int64_t budget, double seconds) {
    return method + "," + model + "," + std::to_string(d) + "," + num(r.value) + "," + num(r.std_error) + "," +
           std::to_string(budget) + "," + std::to_string(c.seed) + "," + secs(seconds);
}

std::string estimate_command(const RunConfig& c) {
    const auto in = load(c);
    const auto f = estimator(c.command, c.model, c.method);
    const auto spec = spec_for(c, in.d, c.method);
    const auto [r, t] = timed([&] { return f(in.K, in.G, spec); });
    return std::string(header) + "\n" + row(c, c.method, c.model, in.d, r, spec.budget, t) + "\n";
}

std::string dimension_check(const RunConfig& c) {
    const auto in = load(c);
    const std::string command = c.command == "volume" ? "volume" : "area";
    estimator(command, c.model, c.method);
    spec_for(c, in.d, c.method);
    if (c.model != "minkowski") require_contained(in.K, in.G);
    return "body_k,body_g,d,status\n" + c.body_k + "," + c.body_g + "," + std::to_string(in.d) + ",ok\n";
}

std::string convergence(const RunConfig& c) {
    const auto in = load(c);
    std::ostringstream out;
    out << header << ",parameter\n";
    if (!c.radii.empty()) {
        for (double r : c.radii)
            if (!(r > 0.0)) throw InvariantError("radii must be positive");
        const auto spec = spec_for(c, in.d, "cauchy");
        const auto [study, t] = timed([&] { return minkowski_limit_study(in.K, in.G, c.radii, spec); });
        for (const auto& r : study.rows)
            out << row(c, "cauchy", "funk", in.d, r.scaled, spec.budget, t) << "," << num(r.r) << "\n";
        EstimateReport limit;
        limit.value = study.limit;
        out << row(c, "cauchy", "minkowski", in.d, limit, spec.budget, t) << ",inf\n";
        return out.str();
    }
    const auto f = estimator("area", c.model, c.method);
    const auto base = spec_for(c, in.d, c.method);
    std::vector<std::int64_t> budgets;
    for (std::int64_t div : {16, 8, 4, 2, 1}) {
        const std::int64_t b = std::max<std::int64_t>(1, base.budget / div);
        if (budgets.empty() || budgets.back() != b) budgets.push_back(b);
    }
    for (auto b : budgets) {
        auto spec = base;
        spec.budget = b;
        const auto [r, t] = timed([&] { return f(in.K, in.G, spec); });
        out << row(c, c.method, c.model, in.d, r, b, t) << "," << b << "\n";
    }
    return out.str();
}

struct Check {
    std::string name;
    double value;
    double reference;
    double deviation;
    double tolerance;
};

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

double in_errors(const EstimateReport& a, const EstimateReport& b) {
    const double s = std::hypot(a.std_error, b.std_error);
    if (s > 0.0) return std::abs(a.value - b.value) / s;
    return a.value == b.value ? 0.0 : std::numeric_limits<double>::infinity();
}

bool concentric_balls(const ConvexBody& K, const ConvexBody& G) {
    const auto* k = std::get_if<Ellipsoid>(&K);
    const auto* g = std::get_if<Ellipsoid>(&G);
    if (!k || !g) return false;
    auto round = [](const Ellipsoid& e) {
        const double a = e.form(0, 0);
        return (e.form - a * Matrix::Identity(e.form.rows(), e.form.cols())).norm() <= 1e-12 * a;
    };
    return round(*k) && round(*g) && (k->center - g->center).norm() <= 1e-12;
}

std::pair<std::string, bool> validate(const RunConfig& c) {
    const auto in = load(c);
    const auto& K = in.K;
    const auto& G = in.G;
    const int d = in.d;
    const auto spec = spec_for(c, d, "direct");
    const bool exact = !spec.is_monte_carlo();
    std::vector<Check> checks;
    const auto ref = funk_area_direct(K, G, spec);
    auto compare = [&](const std::string& name, const EstimateReport& r, const EstimateReport& against) {
        if (exact) checks.push_back({name, r.value, against.value, relative(r.value, against.value), 1e-4});
        else checks.push_back({name, r.value, against.value, in_errors(r, against), 3.0});
    };
    compare("cauchy_vs_direct", funk_area_cauchy(K, G, spec), ref);
    compare("double_integral_vs_direct", funk_area_double_integral(K, G, spec), ref);
    if (is_polytope(K)) compare("vertex_vs_direct", funk_area_vertex_decomposition(K, G, spec).total, ref);
    if (!exact) compare("crofton_vs_direct", crofton_estimate(K, G, spec.budget, spec.seed, spec.threads), ref);
    const auto hilbert = hilbert_area_direct(K, G, spec);
    if (d == 2) {
        compare("hilbert_equals_funk", hilbert, ref);
    } else {
        const double beta = faifman_factor(d - 1);
        const double ratio = hilbert.value / ref.value;
        checks.push_back({"hilbert_funk_bounds", ratio, beta, std::max({0.0, 1.0 - ratio, ratio - beta}), 1e-3});
    }
    if (concentric_balls(K, G)) {
        const auto& k = std::get<Ellipsoid>(K);
        const auto& g = std::get<Ellipsoid>(G);
        const double r = std::sqrt(k.form(0, 0) / g.form(0, 0));
        EstimateReport closed;
        closed.value = sphere_area(d) * std::pow(r / std::sqrt(1.0 - r * r), d - 1);
        compare("concentric_ball_closed_form", ref, closed);
    }
    if (relative_gauge(K, Vector::Zero(d)) < 1.0 - 1e-9)
        compare("minkowski_cauchy_vs_direct", minkowski_area(K, G, spec), minkowski_area_direct(K, G, spec));
    std::ostringstream out;
    out << "check,d,value,reference,deviation,tolerance,status\n";
    bool all = true;
    for (const auto& ch : checks) {
        const bool pass = ch.deviation <= ch.tolerance;
        all = all && pass;
        out << ch.name << "," << d << "," << num(ch.value) << "," << num(ch.reference) << "," << num(ch.deviation)
            << "," << num(ch.tolerance) << "," << (pass ? "pass" : "fail") << "\n";
    }
    return {out.str(), all};
}

} // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        std::string csv;
        int status = ok;
        if (config.dimension_check) {
            csv = dimension_check(config);
        } else if (config.command == "area" || config.command == "volume") {
            csv = estimate_command(config);
        } else if (config.command == "convergence") {
            csv = convergence(config);
        } else if (config.command == "validate") {
            bool pass = false;
            std::tie(csv, pass) = validate(config);
            if (!pass) status = check_failed;
        } else {
            throw ParseError("unknown command '" + config.command + "'");
        }
        if (config.output.empty()) {
            out << csv;
        } else {
            std::ofstream file(config.output);
            if (!file) throw ParseError("cannot open output file '" + config.output + "'");
            file << csv;
        }
        return status;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return parse_error;
    } catch (const ContainmentError& e) {
        err << "containment violation: " << e.what() << "\n";
        return containment_error;
    } catch (const NumericalGuardError& e) {
        err << "numerical guard: " << e.what() << "\n";
        return numerical_guard;
    } catch (const std::exception& e) {
        err << "invariant violation: " << e.what() << "\n";
        return invariant_error;
    }
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Holmes-Thompson areas and volumes in Funk and Hilbert geometries"};
    RunConfig c;
    std::int64_t budget = 0;
    app.add_option("command", c.command, "area | volume | convergence | validate")
        ->required()
        ->check(CLI::IsMember({"area", "volume", "convergence", "validate"}));
    app.add_option("--model", c.model, "funk | hilbert | minkowski")
        ->check(CLI::IsMember({"funk", "hilbert", "minkowski"}));
    app.add_option("--method", c.method, "direct | cauchy | vertex | crofton | double-integral")
        ->check(CLI::IsMember({"direct", "cauchy", "vertex", "crofton", "double-integral"}));
    app.add_option("--body-k", c.body_k, "JSON description of the ambient body K");
    app.add_option("--body-g", c.body_g, "JSON description of the measured body G");
    auto* budget_opt = app.add_option("--budget", budget, "nodes or samples (default 4096 for d = 2, else 100000)");
    app.add_option("--seed", c.seed, "random seed (default 42)");
    app.add_option("--threads", c.threads, "worker threads (default 1)");
    app.add_option("--output", c.output, "CSV destination (default standard output)");
    app.add_option("--radii", c.radii, "comma-separated scales for the Minkowski limit sweep")->delimiter(',');
    app.add_flag("--dimension-check", c.dimension_check, "validate inputs and exit");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : parse_error;
    }
    if (*budget_opt) c.budget = budget;
    return run(c, out, err);
}

} // namespace funk::cli
