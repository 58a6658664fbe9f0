#include "funk/cauchy.hpp"
#include "funk/crofton.hpp"
#include "funk/holmes_thompson.hpp"
#include "funk_cli.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <tuple>

#include <unistd.h>

using namespace funk;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

template <class F>
auto timed(F&& f) {
    const auto t0 = Clock::now();
    auto r = f();
    return std::pair{r, seconds_since(t0)};
}

struct Verdict {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double relative(double a, double b) { return std::abs(a - b) / std::abs(b); }

const double klein_circle = 2 * pi * 0.5 / std::sqrt(0.75);

struct Instance {
    ConvexBody K;
    ConvexBody G;
    EstimateReport direct;
};

// Instances shared by criteria 1-4.
std::vector<Instance> planar_instances;
std::vector<Instance> spatial_instances;
std::vector<Instance> ball_instances;

Verdict klein_disk() {
    Verdict v;
    const ConvexBody K = Ellipsoid::unit_ball(2);
    const ConvexBody G = Ellipsoid::ball(Vector::Zero(2), 0.5);
    const auto spec = QuadratureSpec::defaults_for(2);
    const std::vector<std::pair<const char*, std::function<EstimateReport()>>> methods{
        {"direct", [&] { return funk_area_direct(K, G, spec); }},
        {"cauchy", [&] { return funk_area_cauchy(K, G, spec); }},
        {"hilbert", [&] { return hilbert_area_direct(K, G, spec); }},
    };
    std::string values;
    for (const auto& [name, f] : methods) {
        const auto [r, t] = timed(f);
        values += std::string(name) + fmt("=%.10f (%.2fs) ", r.value, t);
        if (relative(r.value, klein_circle) >= 1e-4) v.fail(std::string(name) + fmt(" = %.10f, expected %.10f", r.value, klein_circle));
        if (t >= 10.0) v.fail(std::string(name) + fmt(" took %.1fs", t));
        if (std::string(name) == "direct") ball_instances.push_back({K, G, r});
    }
    if (v.pass) v.detail = values;
    return v;
}

Verdict hyperbolic_sphere() {
    Verdict v;
    const ConvexBody K = Ellipsoid::unit_ball(3);
    const ConvexBody G = Ellipsoid::ball(Vector::Zero(3), 0.5);
    const auto spec = QuadratureSpec::monte_carlo(100000, 42);
    const double exact = 4 * pi / 3;
    const auto [cau, tc] = timed([&] { return funk_area_cauchy(K, G, spec); });
    const auto [dir, td] = timed([&] { return funk_area_direct(K, G, spec); });
    ball_instances.push_back({K, G, dir});
    for (auto [name, r, t] : {std::tuple{"cauchy", cau, tc}, std::tuple{"direct", dir, td}}) {
        if (relative(r.value, exact) >= 0.01) v.fail(std::string(name) + fmt(" = %.6f, expected %.6f", r.value, exact));
        if (t >= 60.0) v.fail(std::string(name) + fmt(" took %.1fs", t));
    }
    if (v.pass) v.detail = fmt("cauchy=%.6f direct=%.6f exact=%.6f", cau.value, dir.value, exact);
    return v;
}

Verdict vertex_decomposition() {
    Verdict v;
    test::Rng rng(2024);
    double worst2 = 0.0;
    for (int i = 0; i < 50; ++i) {
        const ConvexBody K = test::random_polygon(rng, test::uniform_int(rng, 5, 12));
        const ConvexBody G = test::random_nested(rng, K, test::uniform_int(rng, 3, 10));
        const auto spec = QuadratureSpec::deterministic(4096);
        const auto direct = funk_area_direct(K, G, spec);
        const auto dec = funk_area_vertex_decomposition(K, G, spec).total;
        planar_instances.push_back({K, G, direct});
        const double e = relative(dec.value, direct.value);
        worst2 = std::max(worst2, e);
        if (e >= 1e-4) v.fail(fmt("d=2 instance %.0f: relative deviation %.3g", i, e));
    }
    double worst3 = 0.0;
    for (int i = 0; i < 20; ++i) {
        const ConvexBody K = test::random_polytope(rng, 3, test::uniform_int(rng, 8, 20));
        const ConvexBody G = test::random_nested(rng, K, test::uniform_int(rng, 4, 12));
        const auto direct = funk_area_direct(K, G, QuadratureSpec::deterministic(60000));
        const auto dec = funk_area_vertex_decomposition(K, G, QuadratureSpec::monte_carlo(100000, 42 + i)).total;
        spatial_instances.push_back({K, G, direct});
        const double z = std::abs(dec.value - direct.value) / std::hypot(dec.std_error, direct.std_error);
        worst3 = std::max(worst3, z);
        if (!(z <= 3.0)) v.fail(fmt("d=3 instance %.0f: %.2f combined standard errors", i, z));
    }
    if (v.pass) v.detail = fmt("d=2 worst relative deviation %.2e over 50; d=3 worst %.2f SE over 20", worst2, worst3);
    return v;
}

Verdict crofton_equivalence() {
    Verdict v;
    double worst = 0.0;
    double slowest = 0.0;
    int count = 0;
    std::uint64_t seed = 42;
    for (const auto* set : {&ball_instances, &planar_instances, &spatial_instances}) {
        for (const auto& inst : *set) {
            const auto [r, t] = timed([&] { return crofton_estimate(inst.K, inst.G, 1000000, seed++); });
            const double z = std::abs(r.value - inst.direct.value) / std::hypot(r.std_error, inst.direct.std_error);
            worst = std::max(worst, z);
            slowest = std::max(slowest, t);
            if (!(z <= 3.0)) v.fail(fmt("instance %.0f: %.2f standard errors", count, z));
            if (t >= 120.0) v.fail(fmt("instance %.0f took %.1fs", count, t));
            ++count;
        }
    }
    if (v.pass) v.detail = fmt("%.0f instances, worst %.2f SE, slowest %.2fs", count, worst, slowest);
    else v.detail += fmt(" (worst %.2f SE over %.0f instances)", worst, count);
    return v;
}

Verdict minkowski_limit() {
    Verdict v;
    const ConvexBody K = Ellipsoid::unit_ball(2);
    const ConvexBody G = Polytope::cube(2, 0.5);
    const auto study = minkowski_limit_study(K, G, {10, 100, 1000}, QuadratureSpec::deterministic(4096));
    if (std::abs(study.limit - 4.0) >= 1e-6) v.fail(fmt("minkowski_area = %.10f", study.limit));
    for (std::size_t i = 0; i + 1 < study.rows.size(); ++i)
        if (!(study.rows[i + 1].error < study.rows[i].error)) v.fail("error does not decrease");
    for (double q : study.ratios)
        if (!(q >= 10.0 / 3.0 && q <= 30.0)) v.fail(fmt("error ratio per decade %.2f is outside [3.33, 30]", q));
    v.detail += fmt(" | errors %.3e %.3e %.3e", study.rows[0].error, study.rows[1].error, study.rows[2].error);
    v.detail += fmt(" ratios %.2f %.2f", study.ratios[0], study.ratios[1]);
    return v;
}

Verdict faifman_bounds() {
    Verdict v;
    test::Rng rng(606);
    double lo = INFINITY;
    double hi = 0.0;
    const double beta = faifman_factor(2);
    const auto spec = QuadratureSpec::deterministic(20000);
    for (int i = 0; i < 30; ++i) {
        const ConvexBody K = i % 5 == 4 ? ConvexBody(Ellipsoid::unit_ball(3))
                                        : ConvexBody(test::random_polytope(rng, 3, test::uniform_int(rng, 6, 16)));
        const ConvexBody G = i % 3 == 2 ? ConvexBody(test::random_nested_ball(rng, K))
                                        : ConvexBody(test::random_nested(rng, K, test::uniform_int(rng, 4, 10)));
        const double f = funk_area_direct(K, G, spec).value;
        const double h = hilbert_area_direct(K, G, spec).value;
        const double q = h / f;
        lo = std::min(lo, q);
        hi = std::max(hi, q);
        if (q < 1.0 - 1e-3 || q > beta * (1.0 + 1e-3)) v.fail(fmt("pair %.0f: area_H / area_F = %.6f", i, q));
    }
    if (v.pass) v.detail = fmt("area_H / area_F in [%.6f, %.6f], beta(2) = %.1f", lo, hi, beta);
    return v;
}

Verdict cone_invariance() {
    Verdict v;
    auto vec = [](double x, double y) {
        Vector p(2);
        p << x, y;
        return p;
    };
    const PointedCone Kc({vec(1, 1), vec(1, -1)});
    const PointedCone Gc({vec(1, 0.5), vec(1, -0.5)});
    const auto spec = QuadratureSpec::deterministic(4096);
    const double c = cone_funk_volume(Kc, Gc, spec).value;
    std::string values = fmt("cone=%.9f", c);
    for (const auto& n : {vec(1, 0), vec(1, 0.3), vec(1, -0.6)}) {
        const Hyperplane H{n.normalized(), 1.0 / n.norm()};
        const double s = cone_section_volume(Kc, Gc, H, spec).value;
        values += fmt(" section=%.9f", s);
        if (std::abs(s - c) >= 1e-5) v.fail(fmt("section %.9f vs cone %.9f", s, c));
    }
    if (std::abs(c - std::log(3.0)) >= 1e-5) v.fail(fmt("cone volume %.9f vs ln 3", c));
    if (v.pass) v.detail = values;
    return v;
}

Verdict duality_suite() {
    Verdict v;
    test::Rng rng(808);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int d = 2 + i % 3;
        const auto K = test::random_polytope(rng, d, test::uniform_int(rng, d + 2, 3 * d + 6));
        const auto P = K.polar();
        // Bipolarity.
        const double bip = test::hausdorff(K.vertices(), P.polar().vertices());
        // Projection-section duality on a random 2-D (d = 2: 1-D) subspace.
        const int k = d == 2 ? 1 : 2;
        const Matrix E = test::random_rotation(rng, d).leftCols(k);
        const auto section = test::section_by_subspace(K.vertices(), E);
        std::vector<Vector> projected;
        for (const auto& p : P.vertices()) projected.push_back(E.transpose() * p);
        double ps = 0.0;
        if (k == 1) {
            double slo = INFINITY, shi = -INFINITY, plo = INFINITY, phi = -INFINITY;
            for (const auto& p : section) slo = std::min(slo, p[0]), shi = std::max(shi, p[0]);
            for (const auto& p : projected) plo = std::min(plo, p[0]), phi = std::max(phi, p[0]);
            ps = std::max(std::abs(1.0 / slo - plo), std::abs(1.0 / shi - phi));
        } else {
            const auto polar_section = Polytope::from_vertices(section).polar();
            ps = test::hausdorff(polar_section.vertices(), test::extreme_points(projected));
        }
        // Facet cover: each vertex's dual facet is a facet of K°, and they are all of them.
        double cover = 0.0;
        std::vector<bool> used(P.halfspaces().size(), false);
        for (const auto& x : K.vertices()) {
            const auto F = polar_facet(K, x);
            int match = -1;
            for (std::size_t f = 0; f < P.halfspaces().size(); ++f)
                if ((P.halfspaces()[f].normal - x.normalized()).norm() < 1e-9) match = static_cast<int>(f);
            if (match < 0) {
                cover = INFINITY;
                continue;
            }
            used[static_cast<std::size_t>(match)] = true;
            std::vector<Vector> facet;
            for (int j : P.facet_vertices()[static_cast<std::size_t>(match)]) facet.push_back(P.vertices()[static_cast<std::size_t>(j)]);
            cover = std::max(cover, test::hausdorff(F.vertices(), facet));
        }
        for (bool u : used)
            if (!u) cover = INFINITY;
        const double e = std::max({bip, ps, cover});
        worst = std::max(worst, e);
        if (!(e <= 1e-7)) v.fail(fmt("polytope %.0f (d=%.0f): bipolar %.2e projection-section %.2e facet cover %.2e", i, d, bip) + fmt(" %.2e %.2e", ps, cover));
    }
    if (v.pass) v.detail = fmt("100 polytopes, worst Hausdorff %.2e", worst);
    return v;
}

Verdict gnomonic_caps() {
    Verdict v;
    std::string values;
    for (double theta : {0.1, 0.5, 1.0, 1.3}) {
        const Vector u = Vector::Unit(2, 0);
        const auto r = gnomonic_area(u, [&](const Vector& x) { return x.dot(u) >= std::cos(theta); },
                                     QuadratureSpec::deterministic(4096));
        const double exact = 2 * std::tan(theta);
        if (std::abs(r.value - exact) >= 1e-6) v.fail(fmt("d=2 theta %.2f: %.9f vs %.9f", theta, r.value, exact));
        values += fmt("d2(%.1f) err %.1e ", theta, std::abs(r.value - exact));
    }
    for (double theta : {0.2, 0.6, 1.0}) {
        const Vector u = Vector::Unit(3, 2);
        const auto r = gnomonic_area(u, [&](const Vector& x) { return x.dot(u) >= std::cos(theta); },
                                     QuadratureSpec::monte_carlo(1000000, 42), std::min(pi / 2, theta * 1.05));
        const double exact = pi * std::tan(theta) * std::tan(theta);
        if (relative(r.value, exact) >= 0.005) v.fail(fmt("d=3 theta %.2f: %.6f vs %.6f", theta, r.value, exact));
        values += fmt("d3(%.1f) rel %.1e ", theta, relative(r.value, exact));
    }
    if (v.pass) v.detail = values;
    return v;
}

Verdict reproducibility() {
    Verdict v;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("funk_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    };
    const auto cube = write("cube.json", R"({"type":"polytope","vertices":[[-1,-1,-1],[1,-1,-1],[-1,1,-1],[1,1,-1],[-1,-1,1],[1,-1,1],[-1,1,1],[1,1,1]]})");
    const auto ball = write("ball.json", R"({"type":"ball","center":[0.1,0,0],"radius":0.4})");
    const auto square = write("square.json", R"({"type":"polytope","vertices":[[-1,-1],[1,-1],[1,1],[-1,1]]})");
    const auto disk = write("disk.json", R"({"type":"ball","center":[0.1,0.2],"radius":0.5})");
    struct Case {
        std::string command, model, method, k, g;
        std::int64_t budget;
    };
    const std::vector<Case> cases{
        {"area", "funk", "direct", cube, ball, 20000},        {"area", "funk", "cauchy", cube, ball, 20000},
        {"area", "funk", "vertex", cube, ball, 20000},        {"area", "funk", "crofton", cube, ball, 50000},
        {"area", "funk", "double-integral", cube, ball, 2000}, {"area", "hilbert", "direct", cube, ball, 20000},
        {"area", "minkowski", "cauchy", cube, ball, 20000},   {"volume", "funk", "direct", cube, ball, 20000},
        {"area", "funk", "crofton", square, disk, 50000},     {"validate", "funk", "direct", cube, ball, 5000},
        {"convergence", "funk", "crofton", square, disk, 8000},
    };
    auto strip = [](const std::string& csv) {
        std::istringstream in(csv);
        std::string line;
        std::string out;
        int drop = -1;
        while (std::getline(in, line)) {
            std::vector<std::string> cells;
            std::istringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ',')) cells.push_back(cell);
            if (cells.empty()) continue;
            if (cells[0] == "method" || cells[0] == "check")
                for (std::size_t i = 0; i < cells.size(); ++i)
                    if (cells[i] == "seconds") drop = static_cast<int>(i);
            for (std::size_t i = 0; i < cells.size(); ++i)
                if (static_cast<int>(i) != drop) out += cells[i] + ",";
            out += "\n";
        }
        return out;
    };
    int checked = 0;
    for (const auto& c : cases) {
        std::string reference;
        for (int threads : {1, 2, 8}) {
            cli::RunConfig cfg;
            cfg.command = c.command;
            cfg.model = c.model;
            cfg.method = c.method;
            cfg.body_k = c.k;
            cfg.body_g = c.g;
            cfg.budget = c.budget;
            cfg.threads = threads;
            std::ostringstream out;
            std::ostringstream err;
            const int status = cli::run(cfg, out, err);
            if (status != cli::ok) v.fail(c.command + " " + c.method + " exited with " + std::to_string(status) + ": " + err.str());
            const auto s = strip(out.str());
            if (threads == 1) reference = s;
            else if (s != reference) v.fail(c.command + " " + c.model + " " + c.method + " differs at " + std::to_string(threads) + " threads");
        }
        ++checked;
    }
    fs::remove_all(dir);
    if (v.pass) v.detail = fmt("%.0f configurations identical at 1, 2 and 8 threads", checked);
    return v;
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"klein disk perimeter", klein_disk},
        {"hyperbolic sphere area", hyperbolic_sphere},
        {"vertex decomposition", vertex_decomposition},
        {"crofton equivalence", crofton_equivalence},
        {"minkowski limit", minkowski_limit},
        {"faifman bounds", faifman_bounds},
        {"cone section invariance", cone_invariance},
        {"duality suite", duality_suite},
        {"gnomonic conversion", gnomonic_caps},
        {"reproducibility", reproducibility},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = Clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        failures += v.pass ? 0 : 1;
        std::printf("criterion %zu %s: %s (%.1fs) %s\n", i + 1, criteria[i].first, v.pass ? "PASS" : "FAIL",
                    seconds_since(t0), v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
