#include "funk/geom_core.hpp"

#include "funk/hull.hpp"

#include <algorithm>
#include <cmath>

namespace funk {

double unit_ball_volume(int d) { return std::pow(pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0); }

double sphere_area(int d) { return d * unit_ball_volume(d); }

std::vector<Vector> sample_sphere(const SphericalSampler& sampler, std::int64_t n) {
    std::vector<Vector> out(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = sampler.sample(static_cast<std::uint64_t>(i));
    return out;
}

Matrix orthonormal_complement(const Vector& normal) {
    const auto d = normal.size();
    Eigen::HouseholderQR<Matrix> qr(Matrix(normal.normalized()));
    const Matrix q = qr.householderQ() * Matrix::Identity(d, d);
    return q.rightCols(d - 1);
}

Vector plane_coordinates(const Matrix& basis, const Vector& origin, const Vector& p) {
    return basis.transpose() * (p - origin);
}

double hull_measure(std::span<const Vector> coords) {
    if (coords.empty()) return 0.0;
    return convex_volume(coords);
}

double region_measure(const EmbeddedRegion& region) {
    if (const auto* poly = std::get_if<PolytopalRegion>(&region.shape)) {
        if (poly->vertices.size() < 2) return 0.0;
        const Matrix basis = orthonormal_complement(region.plane.normal);
        std::vector<Vector> coords;
        coords.reserve(poly->vertices.size());
        for (const auto& v : poly->vertices) coords.push_back(plane_coordinates(basis, poly->vertices.front(), v));
        return hull_measure(coords);
    }
    const auto& ell = std::get<EllipsoidalRegion>(region.shape);
    const auto k = static_cast<int>(ell.form.rows());
    const double det = ell.form.determinant();
    if (!(det > 0.0)) return 0.0;
    return unit_ball_volume(k) / std::sqrt(det);
}

EstimateReport summarize_samples(std::span<const double> contributions, std::uint64_t seed) {
    EstimateReport r;
    r.seed = seed;
    r.samples = static_cast<std::int64_t>(contributions.size());
    if (contributions.empty()) return r;
    double sum = 0.0;
    for (double c : contributions) sum += c;
    const double n = static_cast<double>(contributions.size());
    const double mean = sum / n;
    double ss = 0.0;
    for (double c : contributions) ss += (c - mean) * (c - mean);
    r.value = mean;
    r.std_error = contributions.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    return r;
}

std::vector<QuadratureNode> gauss_legendre(int n, double a, double b) {
    std::vector<QuadratureNode> nodes(static_cast<std::size_t>(n));
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    // Legendre P_n and its derivative at x.
    auto legendre = [n](double x) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        return std::pair{p1, n * (x * p1 - p0) / (x * x - 1.0)};
    };
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double dp = legendre(x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[static_cast<std::size_t>(i)] = {mid - half * x, half * w};
        nodes[static_cast<std::size_t>(n - 1 - i)] = {mid + half * x, half * w};
    }
    return nodes;
}

std::vector<QuadratureNode> composite_gauss_legendre(double a, double b, int panels, int order) {
    panels = std::max(1, panels);
    std::vector<QuadratureNode> out;
    out.reserve(static_cast<std::size_t>(panels * order));
    const auto ref = gauss_legendre(order, 0.0, 1.0);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        for (const auto& q : ref) out.push_back({lo + h * q.x, h * q.w});
    }
    return out;
}

std::vector<QuadratureNode> circle_quadrature(int n) {
    if (n < 4) throw InvariantError("circle_quadrature: need at least 4 nodes");
    std::vector<QuadratureNode> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = {2.0 * pi * k / n, 2.0 * pi / n};
    return out;
}

const TriangleRule& triangle_rule() {
    static const TriangleRule rule = [] {
        TriangleRule r;
        const double a1 = 0.445948490915965;
        const double w1 = 0.223381589678011;
        const double a2 = 0.091576213509771;
        const double w2 = 0.109951743655322;
        for (auto [a, w] : {std::pair{a1, w1}, std::pair{a2, w2}}) {
            const double b = 1.0 - 2.0 * a;
            r.barycentric.emplace_back(a, a, b);
            r.barycentric.emplace_back(a, b, a);
            r.barycentric.emplace_back(b, a, a);
            r.weights.insert(r.weights.end(), 3, w);
        }
        return r;
    }();
    return rule;
}

double cap_area(int d, double half_angle) {
    half_angle = std::clamp(half_angle, 0.0, pi);
    if (d == 2) return 2.0 * half_angle;
    if (d == 3) return 2.0 * pi * (1.0 - std::cos(half_angle));
    double s = 0.0;
    for (const auto& q : composite_gauss_legendre(0.0, half_angle, 8, 16)) s += q.w * std::pow(std::sin(q.x), d - 2);
    return sphere_area(d - 1) * s;
}

Vector sample_cap(RandomStream& rng, const Vector& axis, double half_angle) {
    const int d = static_cast<int>(axis.size());
    const Vector a = axis.normalized();
    if (d == 2) {
        const double t = half_angle * (2.0 * rng.uniform() - 1.0);
        Vector perp(2);
        perp << -a[1], a[0];
        return std::cos(t) * a + std::sin(t) * perp;
    }
    if (d == 3) {
        const double z = 1.0 - rng.uniform() * (1.0 - std::cos(half_angle));
        const double phi = 2.0 * pi * rng.uniform();
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const Matrix b = orthonormal_complement(a);
        return z * a + r * (std::cos(phi) * b.col(0) + std::sin(phi) * b.col(1));
    }
    const double c = std::cos(half_angle);
    for (;;) {
        Vector x = rng.unit_vector(d);
        if (x.dot(a) >= c) return x;
        if (half_angle >= pi / 2 && -x.dot(a) >= c) return -x;
    }
}

namespace {

EstimateReport gnomonic_area_planar(const Vector& u, const SphereRegion& omega, const QuadratureSpec& spec,
                                    double half_angle, double equator_eps) {
    Vector w(2);
    w << -u[1], u[0];
    auto point = [&](double t) -> Vector { return std::cos(t) * u + std::sin(t) * w; };
    const int scan = static_cast<int>(std::max<std::int64_t>(spec.budget, 256));
    double lim = std::min(half_angle, pi / 2);
    int first = -1;
    int last = -1;
    for (;;) {
        first = last = -1;
        for (int i = 0; i < scan; ++i) {
            if (omega(point(-lim + (i + 0.5) * (2.0 * lim / scan)))) {
                if (first < 0) first = i;
                last = i;
            }
        }
        const bool touches = first == 0 || last == scan - 1;
        if (!touches || first < 0) break;
        if (lim >= pi / 2) throw NumericalGuardError("gnomonic_area: region touches the equator of u");
        lim = pi / 2;
    }
    EstimateReport r;
    r.samples = spec.budget;
    r.seed = spec.seed;
    if (first < 0) return r;
    auto refine = [&](double in, double out) {
        for (int it = 0; it < 80; ++it) {
            const double m = 0.5 * (in + out);
            (omega(point(m)) ? in : out) = m;
        }
        return in;
    };
    const double step = 2.0 * lim / scan;
    const double a = refine(-lim + (first + 0.5) * step, -lim + (first - 0.5) * step);
    const double b = refine(-lim + (last + 0.5) * step, -lim + (last + 1.5) * step);
    if (std::cos(a) <= equator_eps || std::cos(b) <= equator_eps)
        throw NumericalGuardError("gnomonic_area: region touches the equator of u");
    const int panels = static_cast<int>(std::max<std::int64_t>(1, spec.budget / 8));
    double s = 0.0;
    for (const auto& q : composite_gauss_legendre(a, b, panels)) {
        const double c = std::cos(q.x);
        s += q.w / (c * c);
    }
    r.value = s;
    return r;
}

} // namespace

EstimateReport gnomonic_area(const Vector& u, const SphereRegion& omega, const QuadratureSpec& spec,
                             double bounding_half_angle, double equator_eps) {
    spec.validate();
    const int d = static_cast<int>(u.size());
    if (!spec.is_monte_carlo()) {
        if (d != 2) throw InvariantError("gnomonic_area: deterministic quadrature is available for d = 2 only");
        return gnomonic_area_planar(u, omega, spec, bounding_half_angle, equator_eps);
    }
    const double cap = cap_area(d, bounding_half_angle);
    const bool hemisphere = bounding_half_angle >= pi / 2;
    std::vector<double> contrib(static_cast<std::size_t>(spec.budget));
    parallel_for(spec.budget, spec.threads, [&](std::int64_t i) {
        RandomStream rng(spec.seed, static_cast<std::uint64_t>(i));
        const Vector x = sample_cap(rng, u, bounding_half_angle);
        double y = 0.0;
        if (hemisphere && omega(x - 2.0 * x.dot(u) * u))
            throw NumericalGuardError("gnomonic_area: region crosses the equator of u");
        if (omega(x)) {
            const double c = x.dot(u);
            if (c <= equator_eps) throw NumericalGuardError("gnomonic_area: region touches the equator of u");
            y = cap * std::pow(c, -d);
        }
        contrib[static_cast<std::size_t>(i)] = y;
    });
    return summarize_samples(contrib, spec.seed);
}

} // namespace funk
