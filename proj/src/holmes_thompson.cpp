#include "funk/holmes_thompson.hpp"

#include "funk/hull.hpp"
#include "funk/random.hpp"

#include <algorithm>
#include <cmath>

namespace funk {
namespace {

constexpr double containment_margin = 1e-6;

BoundarySample make_sample(const Vector& x, const Vector& normal, double weight) {
    return {x, Hyperplane{normal, normal.dot(x)}, weight};
}

struct EllipsoidFrame {
    Matrix sqrt_form; // A^{1/2}
    Matrix inv_sqrt;  // A^{-1/2}
    double det_inv_sqrt = 1.0;
};

EllipsoidFrame frame_of(const Ellipsoid& E) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(E.form);
    return {es.operatorSqrt(), es.operatorInverseSqrt(), 1.0 / std::sqrt(es.eigenvalues().prod())};
}

// Uniform barycentric coordinates on a k-simplex.
Vector dirichlet(RandomStream& rng, int k1) {
    Vector w(k1);
    for (int i = 0; i < k1; ++i) w[i] = -std::log(rng.uniform());
    return w / w.sum();
}

Vector simplex_point(const std::vector<Vector>& verts, const Vector& bary) {
    Vector p = Vector::Zero(verts.front().size());
    for (std::size_t i = 0; i < verts.size(); ++i) p += bary[static_cast<Eigen::Index>(i)] * verts[i];
    return p;
}

std::size_t pick_cumulative(const std::vector<double>& cumulative, double r) {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
    return std::min(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

// Points and weights of the degree-4 rule on the triangle (a, b, c) split into m^2 congruent pieces.
template <typename Emit>
void subdivided_triangle(const Vector& a, const Vector& b, const Vector& c, int m, double area, Emit&& emit) {
    const auto& rule = triangle_rule();
    const double piece = area / (static_cast<double>(m) * m);
    auto grid = [&](int i, int j) -> Vector { return a + (double(i) / m) * (b - a) + (double(j) / m) * (c - a); };
    auto cell = [&](const Vector& p, const Vector& q, const Vector& r) {
        for (std::size_t k = 0; k < rule.weights.size(); ++k) {
            const auto& l = rule.barycentric[k];
            emit(Vector(l[0] * p + l[1] * q + l[2] * r), piece * rule.weights[k]);
        }
    };
    for (int i = 0; i < m; ++i)
        for (int j = 0; i + j < m; ++j) {
            cell(grid(i, j), grid(i + 1, j), grid(i, j + 1));
            if (i + j + 2 <= m) cell(grid(i + 1, j), grid(i + 1, j + 1), grid(i, j + 1));
        }
}

std::vector<BoundarySample> polygon_boundary(const Polytope& G, std::int64_t budget) {
    const auto& hs = G.halfspaces();
    const auto& fv = G.facet_vertices();
    double perimeter = 0.0;
    for (const auto& f : fv) perimeter += (G.vertices()[f[0]] - G.vertices()[f[1]]).norm();
    if (budget < 4 * static_cast<std::int64_t>(fv.size()))
        throw InvariantError("boundary quadrature: budget too small for facet count");
    std::vector<BoundarySample> out;
    for (std::size_t e = 0; e < fv.size(); ++e) {
        const Vector& a = G.vertices()[fv[e][0]];
        const Vector& b = G.vertices()[fv[e][1]];
        const double len = (b - a).norm();
        const int panels = std::max(1, static_cast<int>(std::floor(budget / 4.0 * len / perimeter)));
        for (const auto& q : composite_gauss_legendre(0.0, 1.0, panels, 4))
            out.push_back(make_sample(a + q.x * (b - a), hs[e].normal, len * q.w));
    }
    return out;
}

std::vector<BoundarySample> ellipse_boundary(const Ellipsoid& E, std::int64_t budget) {
    const auto f = frame_of(E);
    std::vector<BoundarySample> out;
    for (const auto& q : circle_quadrature(static_cast<int>(budget))) {
        Vector s(2);
        s << std::cos(q.x), std::sin(q.x);
        const Vector n = f.sqrt_form * s;
        out.push_back(make_sample(E.center + f.inv_sqrt * s, n.normalized(), q.w * f.det_inv_sqrt * n.norm()));
    }
    return out;
}

std::vector<BoundarySample> polyhedron_boundary(const Polytope& G, std::int64_t budget) {
    const auto pieces = boundary_pieces(G);
    const auto t = static_cast<std::int64_t>(pieces.size());
    if (budget < 6 * t) throw InvariantError("boundary quadrature: budget too small for facet count");
    const int m = std::max(1, static_cast<int>(std::floor(std::sqrt(double(budget) / (6.0 * t)))));
    std::vector<BoundarySample> out;
    for (const auto& p : pieces)
        subdivided_triangle(p.vertices[0], p.vertices[1], p.vertices[2], m, p.measure,
                            [&](const Vector& x, double w) { out.push_back(make_sample(x, p.normal, w)); });
    return out;
}

std::vector<BoundarySample> ellipsoid3_boundary(const Ellipsoid& E, std::int64_t budget) {
    const auto f = frame_of(E);
    const int nz = std::max(2, static_cast<int>(std::floor(std::sqrt(budget / 2.0))));
    const int nphi = 2 * nz;
    std::vector<BoundarySample> out;
    for (const auto& qz : gauss_legendre(nz, -1.0, 1.0)) {
        const double r = std::sqrt(std::max(0.0, 1.0 - qz.x * qz.x));
        for (int k = 0; k < nphi; ++k) {
            const double phi = 2.0 * pi * k / nphi;
            Vector s(3);
            s << r * std::cos(phi), r * std::sin(phi), qz.x;
            const Vector n = f.sqrt_form * s;
            const double w = qz.w * (2.0 * pi / nphi) * f.det_inv_sqrt * n.norm();
            out.push_back(make_sample(E.center + f.inv_sqrt * s, n.normalized(), w));
        }
    }
    return out;
}

std::vector<BoundarySample> sampled_boundary(const ConvexBody& G, const QuadratureSpec& spec) {
    const int d = dimension(G);
    const auto n = spec.budget;
    std::vector<BoundarySample> out(static_cast<std::size_t>(n));
    if (const auto* P = std::get_if<Polytope>(&G)) {
        const auto pieces = boundary_pieces(*P);
        std::vector<double> cumulative;
        double total = 0.0;
        for (const auto& p : pieces) cumulative.push_back(total += p.measure);
        for (std::int64_t i = 0; i < n; ++i) {
            RandomStream rng(spec.seed, static_cast<std::uint64_t>(i));
            const auto& p = pieces[pick_cumulative(cumulative, rng.uniform() * total)];
            out[static_cast<std::size_t>(i)] =
                make_sample(simplex_point(p.vertices, dirichlet(rng, d)), p.normal, total / double(n));
        }
        return out;
    }
    const auto& E = std::get<Ellipsoid>(G);
    const auto f = frame_of(E);
    const double area = sphere_area(d);
    for (std::int64_t i = 0; i < n; ++i) {
        RandomStream rng(spec.seed, static_cast<std::uint64_t>(i));
        const Vector s = rng.unit_vector(d);
        const Vector nrm = f.sqrt_form * s;
        out[static_cast<std::size_t>(i)] =
            make_sample(E.center + f.inv_sqrt * s, nrm.normalized(), area / double(n) * f.det_inv_sqrt * nrm.norm());
    }
    return out;
}

// Polar vertices of K - x for a polytope K.
std::vector<Vector> shifted_polar_vertices(const Polytope& K, const Vector& x) {
    std::vector<Vector> q;
    q.reserve(K.halfspaces().size());
    for (const auto& h : K.halfspaces()) {
        const double slack = h.offset - h.normal.dot(x);
        if (!(slack > 0.0)) throw InvariantError("Holmes-Thompson density: point is not interior to K");
        q.push_back(h.normal / slack);
    }
    return q;
}

// k-measure of ½ Delta(conv(points)) in R^k.
double half_difference_measure(const std::vector<Vector>& points) {
    const int k = static_cast<int>(points.front().size());
    const ConvexHull hull = convex_hull(points);
    if (!hull.full_dimensional) return 0.0;
    std::vector<Vector> diffs;
    for (int a : hull.vertices)
        for (int b : hull.vertices)
            if (a != b) diffs.push_back(points[a] - points[b]);
    return convex_volume(diffs) * std::pow(0.5, k);
}

double volume_polar_measure(const ConvexBody& K, const Vector& x, Geometry kind) {
    if (const auto* P = std::get_if<Polytope>(&K)) {
        const auto q = shifted_polar_vertices(*P, x);
        return kind == Geometry::funk ? convex_volume(q) : half_difference_measure(q);
    }
    if (const auto* E = std::get_if<Ellipsoid>(&K)) return ellipsoid_polar_measure(E->center - x, E->form);
    throw InvariantError("Holmes-Thompson density needs a polytope or ellipsoid K");
}

struct VolumeNode {
    Vector x;
    double w;
};

std::vector<VolumeNode> interior_nodes(const ConvexBody& G, const QuadratureSpec& spec) {
    const int d = dimension(G);
    std::vector<VolumeNode> out;
    if (!spec.is_monte_carlo()) {
        if (d == 1) {
            const Vector c = interior_point(G);
            const Vector e = Vector::Ones(1);
            const double lo = c[0] - 1.0 / gauge(translate(G, -c), -e);
            const double hi = c[0] + 1.0 / gauge(translate(G, -c), e);
            const int panels = static_cast<int>(std::max<std::int64_t>(1, spec.budget / 8));
            for (const auto& q : composite_gauss_legendre(lo, hi, panels)) out.push_back({Vector::Constant(1, q.x), q.w});
            return out;
        }
        if (d != 2) throw InvariantError("deterministic volume quadrature is available for d <= 2");
        if (const auto* P = std::get_if<Polytope>(&G)) {
            const auto tris = triangulate(P->vertices());
            const auto t = static_cast<std::int64_t>(tris.size());
            if (spec.budget < 6 * t) throw InvariantError("volume quadrature: budget too small for the triangulation");
            const int m = std::max(1, static_cast<int>(std::floor(std::sqrt(double(spec.budget) / (6.0 * t)))));
            for (const auto& s : tris)
                subdivided_triangle(s.vertices[0], s.vertices[1], s.vertices[2], m, s.volume,
                                    [&](const Vector& x, double w) { out.push_back({x, w}); });
            return out;
        }
        const auto& E = std::get<Ellipsoid>(G);
        const auto f = frame_of(E);
        const int nr = std::max(2, static_cast<int>(std::floor(std::sqrt(spec.budget / 2.0))));
        const int nt = 2 * nr;
        for (const auto& qr : gauss_legendre(nr, 0.0, 1.0))
            for (int k = 0; k < nt; ++k) {
                const double t = 2.0 * pi * k / nt;
                Vector s(2);
                s << qr.x * std::cos(t), qr.x * std::sin(t);
                out.push_back({E.center + f.inv_sqrt * s, qr.w * qr.x * (2.0 * pi / nt) * f.det_inv_sqrt});
            }
        return out;
    }
    const auto n = spec.budget;
    out.resize(static_cast<std::size_t>(n));
    if (const auto* P = std::get_if<Polytope>(&G)) {
        const auto simplices = triangulate(P->vertices());
        std::vector<double> cumulative;
        double total = 0.0;
        for (const auto& s : simplices) cumulative.push_back(total += s.volume);
        for (std::int64_t i = 0; i < n; ++i) {
            RandomStream rng(spec.seed, static_cast<std::uint64_t>(i));
            const auto& s = simplices[pick_cumulative(cumulative, rng.uniform() * total)];
            out[static_cast<std::size_t>(i)] = {simplex_point(s.vertices, dirichlet(rng, d + 1)), total / double(n)};
        }
        return out;
    }
    const auto* E = std::get_if<Ellipsoid>(&G);
    if (!E) throw InvariantError("volume quadrature needs a polytope or ellipsoid G");
    const auto f = frame_of(*E);
    const double vol = unit_ball_volume(d) * f.det_inv_sqrt;
    for (std::int64_t i = 0; i < n; ++i) {
        RandomStream rng(spec.seed, static_cast<std::uint64_t>(i));
        const Vector dir = rng.unit_vector(d);
        const double r = std::pow(rng.uniform(), 1.0 / d);
        out[static_cast<std::size_t>(i)] = {E->center + f.inv_sqrt * (r * dir), vol / double(n)};
    }
    return out;
}

template <typename Density>
EstimateReport integrate(const std::vector<double>& weights, std::int64_t count, const QuadratureSpec& spec,
                         Density&& density) {
    std::vector<double> values(weights.size());
    parallel_for(static_cast<std::int64_t>(weights.size()), spec.threads,
                 [&](std::int64_t i) { values[static_cast<std::size_t>(i)] = density(i); });
    if (spec.is_monte_carlo()) {
        for (std::size_t i = 0; i < values.size(); ++i) values[i] *= weights[i] * double(count);
        return summarize_samples(values, spec.seed);
    }
    EstimateReport r;
    for (std::size_t i = 0; i < values.size(); ++i) r.value += weights[i] * values[i];
    r.samples = count;
    r.seed = spec.seed;
    return r;
}

void require_samples_inside(const ConvexBody& K, const std::vector<BoundarySample>& samples) {
    for (const auto& s : samples)
        if (!(relative_gauge(K, s.point) <= 1.0 - containment_margin))
            throw ContainmentError("G is not contained in the interior of K");
}

EstimateReport area_direct(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& spec, Geometry kind) {
    spec.validate();
    if (dimension(K) != dimension(G)) throw InvariantError("K and G have different dimensions");
    require_contained(K, G);
    const auto samples = boundary_samples(G, spec);
    require_samples_inside(K, samples);
    std::vector<double> w;
    for (const auto& s : samples) w.push_back(s.weight);
    const double norm = unit_ball_volume(dimension(K) - 1);
    return integrate(w, static_cast<std::int64_t>(samples.size()), spec, [&](std::int64_t i) {
        const auto& s = samples[static_cast<std::size_t>(i)];
        return projected_polar_measure(K, s.point, s.tangent.normal, kind) / norm;
    });
}

EstimateReport volume_direct(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& spec, Geometry kind) {
    spec.validate();
    if (dimension(K) != dimension(G)) throw InvariantError("K and G have different dimensions");
    require_contained(K, G);
    const auto nodes = interior_nodes(G, spec);
    std::vector<double> w;
    for (const auto& q : nodes) w.push_back(q.w);
    const double norm = unit_ball_volume(dimension(K));
    return integrate(w, static_cast<std::int64_t>(nodes.size()), spec, [&](std::int64_t i) {
        return volume_polar_measure(K, nodes[static_cast<std::size_t>(i)].x, kind) / norm;
    });
}

} // namespace

std::vector<BoundaryPiece> boundary_pieces(const Polytope& G) {
    std::vector<BoundaryPiece> out;
    const int d = G.dimension();
    for (std::size_t f = 0; f < G.facet_vertices().size(); ++f) {
        const Vector& n = G.halfspaces()[f].normal;
        std::vector<Vector> verts;
        for (int i : G.facet_vertices()[f]) verts.push_back(G.vertices()[i]);
        if (d == 2) {
            out.push_back({n, verts, (verts[1] - verts[0]).norm()});
            continue;
        }
        const Matrix B = orthonormal_complement(n);
        std::vector<Vector> coords;
        for (const auto& v : verts) coords.push_back(plane_coordinates(B, verts.front(), v));
        for (const auto& s : triangulate(coords)) {
            BoundaryPiece p{n, {}, s.volume};
            for (const auto& z : s.vertices) p.vertices.push_back(verts.front() + B * z);
            out.push_back(std::move(p));
        }
    }
    return out;
}

std::vector<BoundarySample> boundary_samples(const ConvexBody& G, const QuadratureSpec& spec) {
    spec.validate();
    const int d = dimension(G);
    if (d < 2) throw InvariantError("boundary quadrature needs d >= 2");
    if (std::holds_alternative<SupportOracle>(G))
        throw InvariantError("boundary quadrature needs a polytope or ellipsoid G");
    if (spec.is_monte_carlo()) return sampled_boundary(G, spec);
    const auto* P = std::get_if<Polytope>(&G);
    const auto* E = std::get_if<Ellipsoid>(&G);
    if (d == 2) return P ? polygon_boundary(*P, spec.budget) : ellipse_boundary(*E, spec.budget);
    if (d == 3) return P ? polyhedron_boundary(*P, spec.budget) : ellipsoid3_boundary(*E, spec.budget);
    throw InvariantError("deterministic boundary quadrature is available for d <= 3");
}

double ellipsoid_polar_measure(const Vector& z0, const Matrix& F) {
    const int k = static_cast<int>(z0.size());
    const Matrix Q = F.llt().solve(Matrix::Identity(k, k)) - z0 * z0.transpose();
    Eigen::LLT<Matrix> llt(Q);
    if (llt.info() != Eigen::Success) throw InvariantError("polar of ellipsoid: origin is not interior");
    const double s = 1.0 + z0.dot(llt.solve(z0));
    const double det = Q.determinant();
    return unit_ball_volume(k) * std::pow(s, 0.5 * k) / std::sqrt(det);
}

double projected_polar_measure(const ConvexBody& K, const Vector& x, const Vector& normal, Geometry kind) {
    const Matrix B = orthonormal_complement(normal);
    if (const auto* P = std::get_if<Polytope>(&K)) {
        std::vector<Vector> z;
        for (const auto& q : shifted_polar_vertices(*P, x)) z.push_back(B.transpose() * q);
        if (kind == Geometry::funk || z.front().size() == 1) return hull_measure(z);
        return half_difference_measure(z);
    }
    if (const auto* E = std::get_if<Ellipsoid>(&K)) {
        // Section of K - x by normal^perp, then polar inside the section.
        const Vector c = E->center - x;
        const Matrix A2 = B.transpose() * E->form * B;
        const Vector b = B.transpose() * (E->form * c);
        const Vector z0 = A2.llt().solve(b);
        const double rho = 1.0 - c.dot(E->form * c) + b.dot(z0);
        if (!(rho > 0.0)) throw InvariantError("Holmes-Thompson density: point is not interior to K");
        return ellipsoid_polar_measure(z0, A2 / rho);
    }
    throw InvariantError("Holmes-Thompson density needs a polytope or ellipsoid K");
}

double funk_area_element(const ConvexBody& K, const BoundarySample& s) {
    return projected_polar_measure(K, s.point, s.tangent.normal, Geometry::funk) /
           unit_ball_volume(dimension(K) - 1);
}

double hilbert_area_element(const ConvexBody& K, const BoundarySample& s) {
    return projected_polar_measure(K, s.point, s.tangent.normal, Geometry::hilbert) /
           unit_ball_volume(dimension(K) - 1);
}

double minkowski_area_element(const ConvexBody& K, const Vector& normal) {
    const int d = dimension(K);
    require_interior(K, Vector::Zero(d), "minkowski area");
    return projected_polar_measure(K, Vector::Zero(d), normal, Geometry::funk) / unit_ball_volume(d - 1);
}

double funk_volume_element(const ConvexBody& K, const Vector& x) {
    require_interior(K, x, "funk volume element");
    return volume_polar_measure(K, x, Geometry::funk) / unit_ball_volume(dimension(K));
}

double hilbert_volume_element(const ConvexBody& K, const Vector& x) {
    require_interior(K, x, "hilbert volume element");
    return volume_polar_measure(K, x, Geometry::hilbert) / unit_ball_volume(dimension(K));
}

void require_contained(const ConvexBody& K, const ConvexBody& G) {
    const int d = dimension(K);
    if (dimension(G) != d) throw InvariantError("K and G have different dimensions");
    auto check = [&](const Vector& p) {
        if (!(relative_gauge(K, p) <= 1.0 - containment_margin))
            throw ContainmentError("G is not contained in the interior of K");
    };
    if (const auto* P = std::get_if<Polytope>(&G)) {
        for (const auto& v : P->vertices()) check(v);
        return;
    }
    if (const auto* PK = std::get_if<Polytope>(&K)) {
        const Vector& c = PK->interior();
        for (const auto& h : PK->halfspaces()) {
            const double depth = h.offset - h.normal.dot(c);
            if (!((h.offset - support_function(G, h.normal)) / depth >= containment_margin))
                throw ContainmentError("G is not contained in the interior of K");
        }
        return;
    }
    const SphericalSampler sampler{7, d};
    check(interior_point(G));
    for (std::int64_t i = 0; i < 2000 * d; ++i) check(support_point(G, sampler.sample(static_cast<std::uint64_t>(i))));
}

EstimateReport funk_area_direct(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& spec) {
    return area_direct(K, G, spec, Geometry::funk);
}

EstimateReport hilbert_area_direct(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& spec) {
    return area_direct(K, G, spec, Geometry::hilbert);
}

EstimateReport minkowski_area_direct(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& spec) {
    spec.validate();
    const int d = dimension(K);
    if (dimension(G) != d) throw InvariantError("K and G have different dimensions");
    require_interior(K, Vector::Zero(d), "minkowski area");
    const auto samples = boundary_samples(G, spec);
    std::vector<double> w;
    for (const auto& s : samples) w.push_back(s.weight);
    return integrate(w, static_cast<std::int64_t>(samples.size()), spec, [&](std::int64_t i) {
        return minkowski_area_element(K, samples[static_cast<std::size_t>(i)].tangent.normal);
    });
}

EstimateReport funk_volume(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& spec) {
    return volume_direct(K, G, spec, Geometry::funk);
}

EstimateReport hilbert_volume(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& spec) {
    return volume_direct(K, G, spec, Geometry::hilbert);
}

double faifman_factor(int d) {
    if (d < 1) throw InvariantError("faifman_factor: d must be at least 1");
    double r = 1.0;
    for (int i = 1; i <= d; ++i) r *= double(d + i) / i;
    return r / std::pow(2.0, d);
}

EstimateReport cone_funk_volume(const PointedCone& Kc, const PointedCone& Gc, const QuadratureSpec& spec) {
    spec.validate();
    const int d = Kc.dimension();
    if (Gc.dimension() != d) throw InvariantError("cones of different dimensions");
    for (const auto& g : Gc.generators())
        if (!Kc.contains_interior(g, 1e-9)) throw ContainmentError("Gc is not strictly inside Kc");
    const double norm = unit_ball_volume(d - 1);
    auto density = [&](const Vector& s) { return region_measure(dual_cross_section(Kc, s)) / norm; };
    const Vector& w = Gc.axis();

    if (!spec.is_monte_carlo()) {
        if (d != 2) throw InvariantError("deterministic cone volume is available for d = 2 only");
        const Vector c = Gc.center();
        Vector perp(2);
        perp << -c[1], c[0];
        const auto rays = Gc.extreme_rays();
        double a = pi;
        double b = -pi;
        for (const auto& e : rays) {
            const double phi = std::atan2(e.dot(perp), e.dot(c));
            a = std::min(a, phi);
            b = std::max(b, phi);
        }
        const int panels = static_cast<int>(std::max<std::int64_t>(1, spec.budget / 8));
        const auto nodes = composite_gauss_legendre(a, b, panels);
        std::vector<double> weights;
        for (const auto& q : nodes) weights.push_back(q.w);
        return integrate(weights, static_cast<std::int64_t>(nodes.size()), spec, [&](std::int64_t i) {
            const double phi = nodes[static_cast<std::size_t>(i)].x;
            return density(Vector(std::cos(phi) * c + std::sin(phi) * perp));
        });
    }

    double half = 0.0;
    for (const auto& g : Gc.generators()) half = std::max(half, std::acos(std::clamp(g.normalized().dot(w), -1.0, 1.0)));
    half = std::min(pi, half * (1.0 + 1e-9));
    const double cap = cap_area(d, half);
    std::vector<double> contrib(static_cast<std::size_t>(spec.budget));
    parallel_for(spec.budget, spec.threads, [&](std::int64_t i) {
        RandomStream rng(spec.seed, static_cast<std::uint64_t>(i));
        const Vector s = sample_cap(rng, w, half);
        contrib[static_cast<std::size_t>(i)] = Gc.contains(s) ? cap * density(s) : 0.0;
    });
    return summarize_samples(contrib, spec.seed);
}

bool is_admissible(const PointedCone& Kc, const Hyperplane& H) {
    if (!(std::abs(H.offset) > 1e-12)) return false;
    const double sign = H.offset > 0.0 ? 1.0 : -1.0;
    for (const auto& g : Kc.generators())
        if (!(sign * g.dot(H.normal) > 1e-12 * g.norm())) return false;
    return true;
}

EstimateReport cone_section_volume(const PointedCone& Kc, const PointedCone& Gc, const Hyperplane& H,
                                   const QuadratureSpec& spec) {
    if (!is_admissible(Kc, H)) throw InvariantError("hyperplane is not admissible for the cone");
    for (const auto& g : Gc.generators())
        if (!Kc.contains_interior(g, 1e-9)) throw ContainmentError("Gc is not strictly inside Kc");
    const Vector p0 = H.offset * H.normal;
    const Matrix B = orthonormal_complement(H.normal);
    auto section = [&](const PointedCone& C) {
        std::vector<Vector> z;
        for (const auto& g : C.generators()) z.push_back(B.transpose() * ((H.offset / g.dot(H.normal)) * g - p0));
        return Polytope::from_vertices(z);
    };
    return funk_volume(section(Kc), section(Gc), spec);
}

} // namespace funk
