#include "funk/cauchy.hpp"

#include "funk/holmes_thompson.hpp"
#include "funk/random.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace funk {
namespace {

double angle_of(const Vector& v) {
    const double a = std::atan2(v[1], v[0]);
    return a < 0.0 ? a + 2.0 * pi : a;
}

Vector direction(double phi) {
    Vector u(2);
    u << std::cos(phi), std::sin(phi);
    return u;
}

// ∫_0^{2 pi} f(u(phi)) dphi: composite Gauss-Legendre between breakpoints, or
// the trapezoidal rule when the integrand is smooth and periodic.
template <typename F>
EstimateReport circle_integral(std::vector<double> breaks, const QuadratureSpec& spec, F&& f) {
    std::vector<QuadratureNode> nodes;
    for (auto& b : breaks) b = std::fmod(std::fmod(b, 2.0 * pi) + 2.0 * pi, 2.0 * pi);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(), [](double a, double b) { return b - a < 1e-12; }),
                 breaks.end());
    if (breaks.size() > 1 && breaks.back() - breaks.front() > 2.0 * pi - 1e-12) breaks.pop_back();
    if (breaks.empty()) {
        nodes = circle_quadrature(static_cast<int>(std::max<std::int64_t>(spec.budget, 4)));
    } else {
        const std::size_t m = breaks.size();
        for (std::size_t i = 0; i < m; ++i) {
            const double a = breaks[i];
            const double b = i + 1 < m ? breaks[i + 1] : breaks.front() + 2.0 * pi;
            const int panels = std::max(1, static_cast<int>(std::lround(spec.budget / 8.0 * (b - a) / (2.0 * pi))));
            const auto arc = composite_gauss_legendre(a, b, panels);
            nodes.insert(nodes.end(), arc.begin(), arc.end());
        }
    }
    std::vector<double> values(nodes.size());
    parallel_for(static_cast<std::int64_t>(nodes.size()), spec.threads, [&](std::int64_t i) {
        values[static_cast<std::size_t>(i)] = f(direction(nodes[static_cast<std::size_t>(i)].x));
    });
    EstimateReport r;
    for (std::size_t i = 0; i < nodes.size(); ++i) r.value += nodes[i].w * values[i];
    r.samples = static_cast<std::int64_t>(nodes.size());
    r.seed = spec.seed;
    return r;
}

// ∫_{S^{d-1}} f dsigma by uniform directions; sample i reads stream i.
template <typename F>
EstimateReport sphere_integral(int d, const QuadratureSpec& spec, F&& f) {
    const double area = sphere_area(d);
    std::vector<double> values(static_cast<std::size_t>(spec.budget));
    parallel_for(spec.budget, spec.threads, [&](std::int64_t i) {
        RandomStream rng(spec.seed, static_cast<std::uint64_t>(i));
        values[static_cast<std::size_t>(i)] = area * f(rng.unit_vector(d));
    });
    return summarize_samples(values, spec.seed);
}

template <typename F>
EstimateReport direction_integral(int d, std::vector<double> breaks, const QuadratureSpec& spec, F&& f) {
    spec.validate();
    if (spec.is_monte_carlo()) return sphere_integral(d, spec, f);
    if (d != 2) throw InvariantError("deterministic direction quadrature is available for d = 2 only");
    return circle_integral(std::move(breaks), spec, f);
}

// Seed for an inner estimator, a pure function of the outer direction.
std::uint64_t direction_seed(std::uint64_t seed, const Vector& u) {
    std::uint64_t h = mix64(seed);
    for (double x : u) h = mix64(h ^ std::bit_cast<std::uint64_t>(x));
    return h;
}

EstimateReport scaled(EstimateReport r, double factor) {
    r.value *= factor;
    r.std_error *= std::abs(factor);
    return r;
}

std::vector<double> facet_normal_angles(const Polytope& K) {
    std::vector<double> out;
    for (const auto& h : K.halfspaces()) out.push_back(angle_of(h.normal));
    return out;
}

Vector outer_normal_at(const ConvexBody& K, const Vector& p) {
    const auto& E = std::get<Ellipsoid>(K);
    return E.form * (p - E.center);
}

// Directions u where v_K(u) crosses the line through an edge of the polygon G.
std::vector<double> edge_line_crossings(const ConvexBody& K, const Polytope& G) {
    std::vector<double> out;
    for (const auto& f : G.facet_vertices()) {
        const Vector& a = G.vertices()[f[0]];
        const Vector e = G.vertices()[f[1]] - a;
        for (double sign : {1.0, -1.0}) out.push_back(angle_of(outer_normal_at(K, ray_exit(K, a, sign * e).point)));
    }
    return out;
}

// Directions u where v_K(u) is parallel to an edge of the polygon G.
std::vector<double> edge_direction_crossings(const ConvexBody& K, const Polytope& G) {
    std::vector<double> out;
    const Vector o = Vector::Zero(2);
    for (const auto& f : G.facet_vertices()) {
        const Vector e = G.vertices()[f[1]] - G.vertices()[f[0]];
        for (double sign : {1.0, -1.0}) out.push_back(angle_of(outer_normal_at(K, ray_exit(K, o, sign * e).point)));
    }
    return out;
}

std::vector<double> cauchy_breaks(const ConvexBody& K, const ConvexBody& G) {
    if (dimension(K) != 2) return {};
    if (const auto* P = std::get_if<Polytope>(&K)) return facet_normal_angles(*P);
    const auto* PG = std::get_if<Polytope>(&G);
    if (is_ellipsoid(K) && PG) return edge_line_crossings(K, *PG);
    return {};
}

double shadow_measure_at(const ConvexBody& K, const ConvexBody& G, const Vector& u) {
    return region_measure(cone_slice(G, support_point(K, u), u));
}

EmbeddedRegion ellipsoid_cone_slice(const Ellipsoid& E, const Vector& apex, const Vector& u) {
    const Vector c = E.center - apex;
    const Vector Ac = E.form * c;
    const double outside = c.dot(Ac) - 1.0;
    if (!(outside > 0.0)) throw ContainmentError("central shadow: apex lies inside G");
    const double h = u.dot(E.center) + std::sqrt(u.dot(E.inverse() * u));
    if (!(h - apex.dot(u) < -1e-12 * std::max(1.0, c.norm())))
        throw ContainmentError("central shadow: G is not strictly below the supporting hyperplane");
    // cone(E - apex) = {y : (y^T A c)^2 >= (c^T A c - 1) y^T A y, y^T A c >= 0}
    const Matrix M = Ac * Ac.transpose() - outside * E.form;
    const Matrix B = orthonormal_complement(u);
    const Matrix P = -B.transpose() * M * B;
    const Vector q = B.transpose() * (M * u);
    Eigen::LLT<Matrix> llt(P);
    if (llt.info() != Eigen::Success) throw ContainmentError("central shadow: slice is unbounded");
    const Vector zc = -llt.solve(q);
    const double rho = u.dot(M * u) - q.dot(zc);
    if (!(rho > 0.0)) throw ContainmentError("central shadow: slice is empty");
    return {Hyperplane{u, -1.0}, EllipsoidalRegion{Vector(-u + B * zc), B, P / rho}};
}

} // namespace

EmbeddedRegion cone_slice(std::span<const Vector> points, const Vector& apex, const Vector& u) {
    PolytopalRegion r;
    for (const auto& g : points) {
        const Vector y = g - apex;
        const double depth = y.dot(u);
        if (!(depth < -1e-12 * std::max(1.0, y.norm())))
            throw ContainmentError("central shadow: G is not strictly below the supporting hyperplane");
        r.vertices.push_back(y / -depth);
    }
    return {Hyperplane{u, -1.0}, r};
}

EmbeddedRegion cone_slice(const ConvexBody& G, const Vector& apex, const Vector& u) {
    if (const auto* P = std::get_if<Polytope>(&G)) return cone_slice(P->vertices(), apex, u);
    if (const auto* E = std::get_if<Ellipsoid>(&G)) return ellipsoid_cone_slice(*E, apex, u);
    throw InvariantError("central shadow needs a polytope or ellipsoid G");
}

EmbeddedRegion central_shadow(const ShadowQuery& q) { return cone_slice(q.G, support_point(q.K, q.u), q.u); }

double shadow_measure(const ShadowQuery& q) { return region_measure(central_shadow(q)); }

double cone_half_angle(const ConvexBody& G, const Vector& apex, const Vector& axis) {
    const Vector a = axis.normalized();
    auto angle = [&](const Vector& y) { return std::acos(std::clamp(y.normalized().dot(a), -1.0, 1.0)); };
    double half = 0.0;
    if (const auto* P = std::get_if<Polytope>(&G)) {
        for (const auto& g : P->vertices()) half = std::max(half, angle(g - apex));
    } else if (const auto* E = std::get_if<Ellipsoid>(&G)) {
        const Vector c = E->center - apex;
        Eigen::SelfAdjointEigenSolver<Matrix> es(E->form);
        const double rmax = 1.0 / std::sqrt(es.eigenvalues().minCoeff());
        half = angle(c) + std::asin(std::min(1.0, rmax / c.norm()));
    } else {
        half = pi / 2;
    }
    return std::min(pi / 2, half * (1.0 + 1e-9) + 1e-12);
}

EstimateReport shadow_measure_gnomonic(const ShadowQuery& q, const QuadratureSpec& spec) {
    const Vector v = support_point(q.K, q.u);
    const Vector down = -q.u;
    const SphereRegion sigma = [&](const Vector& s) { return ray_meets(q.G, v, s); };
    return gnomonic_area(down, sigma, spec, cone_half_angle(q.G, v, down));
}

EstimateReport funk_area_cauchy(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& spec) {
    const int d = dimension(K);
    require_contained(K, G);
    const auto r = direction_integral(d, cauchy_breaks(K, G), spec,
                                      [&](const Vector& u) { return shadow_measure_at(K, G, u); });
    return scaled(r, 1.0 / unit_ball_volume(d - 1));
}

double spherical_image_measure(const PointedCone& N, std::int64_t samples, std::uint64_t seed) {
    const int d = N.dimension();
    const auto rays = N.extreme_rays();
    if (d == 2) return std::acos(std::clamp(rays[0].dot(rays[1]), -1.0, 1.0));
    if (d == 3) {
        const Vector w = N.center();
        const Matrix B = orthonormal_complement(w);
        std::vector<std::pair<double, Vector>> ordered;
        for (const auto& r : rays) ordered.emplace_back(std::atan2(r.dot(B.col(1)), r.dot(B.col(0))), r.normalized());
        std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        double total = 0.0;
        for (std::size_t i = 0; i < ordered.size(); ++i) {
            const Vector& a = ordered[i].second;
            const Vector& b = ordered[(i + 1) % ordered.size()].second;
            Eigen::Matrix3d m;
            m << w, a, b;
            const double triple = std::abs(m.determinant());
            total += 2.0 * std::atan2(triple, 1.0 + w.dot(a) + a.dot(b) + b.dot(w));
        }
        return total;
    }
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < samples; ++i) {
        RandomStream rng(seed, static_cast<std::uint64_t>(i));
        hits += N.contains(rng.unit_vector(d)) ? 1 : 0;
    }
    return sphere_area(d) * double(hits) / double(samples);
}

VertexDecomposition funk_area_vertex_decomposition(const ConvexBody& K, const ConvexBody& G,
                                                   const QuadratureSpec& spec) {
    spec.validate();
    const auto* P = std::get_if<Polytope>(&K);
    if (!P) throw InvariantError("vertex decomposition needs a polytopal K");
    require_contained(K, G);
    const int d = P->dimension();
    const double norm = unit_ball_volume(d - 1);
    if (!spec.is_monte_carlo() && d != 2)
        throw InvariantError("deterministic vertex decomposition is available for d = 2 only");

    VertexDecomposition out;
    std::vector<double> caps;
    std::vector<double> halves;
    for (const auto& v : P->vertices()) {
        PointedCone N = vertex_normal_cone(*P, v);
        const double sigma = spherical_image_measure(N, std::max<std::int64_t>(spec.budget, 1000), spec.seed);
        double half = 0.0;
        for (const auto& g : N.generators())
            half = std::max(half, std::acos(std::clamp(g.normalized().dot(N.axis()), -1.0, 1.0)));
        half = std::min(pi, half * (1.0 + 1e-9) + 1e-12);
        halves.push_back(half);
        caps.push_back(cap_area(d, half));
        out.contributions.push_back({v, std::move(N), sigma, {}});
    }
    double cap_total = 0.0;
    for (double c : caps) cap_total += c;

    std::uint64_t offset = 0;
    double variance = 0.0;
    for (std::size_t j = 0; j < out.contributions.size(); ++j) {
        auto& c = out.contributions[j];
        auto f = [&](const Vector& u) { return region_measure(cone_slice(G, c.vertex, u)); };
        if (!spec.is_monte_carlo()) {
            const Vector w = c.normal_cone.center();
            Vector perp(2);
            perp << -w[1], w[0];
            double a = pi;
            double b = -pi;
            for (const auto& e : c.normal_cone.extreme_rays()) {
                const double phi = std::atan2(e.dot(perp), e.dot(w));
                a = std::min(a, phi);
                b = std::max(b, phi);
            }
            const int panels = std::max(1, static_cast<int>(std::lround(spec.budget / 8.0 * (b - a) / (2.0 * pi))));
            const auto nodes = composite_gauss_legendre(a, b, panels);
            std::vector<double> values(nodes.size());
            parallel_for(static_cast<std::int64_t>(nodes.size()), spec.threads, [&](std::int64_t i) {
                const double phi = nodes[static_cast<std::size_t>(i)].x;
                values[static_cast<std::size_t>(i)] = f(Vector(std::cos(phi) * w + std::sin(phi) * perp));
            });
            for (std::size_t i = 0; i < nodes.size(); ++i) c.value.value += nodes[i].w * values[i] / norm;
            c.value.samples = static_cast<std::int64_t>(nodes.size());
            c.value.seed = spec.seed;
        } else {
            const auto n = std::max<std::int64_t>(16, std::llround(double(spec.budget) * caps[j] / cap_total));
            std::vector<double> values(static_cast<std::size_t>(n));
            std::vector<char> inside(static_cast<std::size_t>(n));
            parallel_for(n, spec.threads, [&](std::int64_t i) {
                RandomStream rng(spec.seed, offset + static_cast<std::uint64_t>(i));
                const Vector u = sample_cap(rng, c.normal_cone.axis(), halves[j]);
                const bool in = c.normal_cone.contains(u);
                inside[static_cast<std::size_t>(i)] = in;
                values[static_cast<std::size_t>(i)] = in ? f(u) : 0.0;
            });
            offset += static_cast<std::uint64_t>(n);
            std::vector<double> accepted;
            for (std::size_t i = 0; i < values.size(); ++i)
                if (inside[i]) accepted.push_back(values[i]);
            if (d <= 3 && accepted.size() >= 2) {
                // Exact sigma(U_v) times the mean over accepted directions.
                c.value = scaled(summarize_samples(accepted, spec.seed), c.spherical_measure / norm);
            } else {
                for (auto& x : values) x *= caps[j] / norm;
                c.value = summarize_samples(values, spec.seed);
            }
            c.value.samples = n;
        }
        out.total.value += c.value.value;
        variance += c.value.std_error * c.value.std_error;
        out.total.samples += c.value.samples;
    }
    out.total.std_error = std::sqrt(variance);
    out.total.seed = spec.seed;
    return out;
}

EstimateReport funk_area_double_integral(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& spec) {
    const int d = dimension(K);
    require_contained(K, G);
    const auto r = direction_integral(d, cauchy_breaks(K, G), spec, [&](const Vector& u) {
        const Vector v = support_point(K, u);
        const Vector down = -u;
        const SphereRegion sigma = [&](const Vector& s) { return ray_meets(G, v, s); };
        const auto inner = spec.is_monte_carlo() ? QuadratureSpec::monte_carlo(64, direction_seed(spec.seed, u))
                                                 : QuadratureSpec::deterministic(256);
        return gnomonic_area(down, sigma, inner, cone_half_angle(G, v, down)).value;
    });
    return scaled(r, 1.0 / unit_ball_volume(d - 1));
}

EmbeddedRegion minkowski_shadow(const ConvexBody& K, const ConvexBody& G, const Vector& u) {
    const int d = dimension(K);
    require_interior(K, Vector::Zero(d), "minkowski shadow");
    const double h = support_function(K, u);
    const Vector v = support_point(K, u);
    const Matrix M = (Matrix::Identity(d, d) - v * u.transpose() / h) / h;
    const Hyperplane plane{u, 0.0};
    if (const auto* P = std::get_if<Polytope>(&G)) {
        PolytopalRegion r;
        for (const auto& g : P->vertices()) r.vertices.push_back(M * g);
        return {plane, r};
    }
    if (const auto* E = std::get_if<Ellipsoid>(&G)) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(E->form);
        const Matrix B = orthonormal_complement(u);
        const Matrix W = B.transpose() * M * es.operatorInverseSqrt();
        const Matrix S = W * W.transpose();
        return {plane, EllipsoidalRegion{Vector(M * E->center), B, S.llt().solve(Matrix::Identity(d - 1, d - 1))}};
    }
    throw InvariantError("minkowski shadow needs a polytope or ellipsoid G");
}

EstimateReport minkowski_area(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& spec) {
    const int d = dimension(K);
    if (dimension(G) != d) throw InvariantError("K and G have different dimensions");
    require_interior(K, Vector::Zero(d), "minkowski area");
    std::vector<double> breaks;
    if (d == 2) {
        if (const auto* P = std::get_if<Polytope>(&K)) breaks = facet_normal_angles(*P);
        else if (const auto* PG = std::get_if<Polytope>(&G); PG && is_ellipsoid(K))
            breaks = edge_direction_crossings(K, *PG);
    }
    const auto r = direction_integral(d, breaks, spec,
                                      [&](const Vector& u) { return region_measure(minkowski_shadow(K, G, u)); });
    return scaled(r, 1.0 / unit_ball_volume(d - 1));
}

LimitStudy minkowski_limit_study(const ConvexBody& K, const ConvexBody& G, const std::vector<double>& radii,
                                 const QuadratureSpec& spec) {
    const int d = dimension(K);
    LimitStudy study;
    study.limit = minkowski_area(K, G, spec).value;
    for (double r : radii) {
        const auto value = funk_area_cauchy(scale(K, r), G, spec);
        LimitRow row{r, scaled(value, std::pow(r, d - 1)), 0.0};
        row.error = std::abs(row.scaled.value - study.limit);
        study.rows.push_back(row);
    }
    for (std::size_t i = 0; i + 1 < study.rows.size(); ++i)
        study.ratios.push_back(study.rows[i].error / study.rows[i + 1].error);
    return study;
}

} // namespace funk
