#include "funk/bodies.hpp"

#include "funk/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace funk {
namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

int matrix_rank(const std::vector<Vector>& rows, int d, double threshold = 1e-10) {
    if (rows.empty()) return 0;
    Matrix m(static_cast<Eigen::Index>(rows.size()), d);
    for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    Eigen::FullPivLU<Matrix> lu(m);
    lu.setThreshold(threshold);
    return static_cast<int>(lu.rank());
}

// Calls fn on every k-subset of {0, ..., n-1} in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
    if (k > n) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

Vector numeric_gradient(const std::function<double(const Vector&)>& f, const Vector& y) {
    const double h = 1e-6 * std::max(1.0, y.norm());
    Vector g(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        Vector a = y;
        Vector b = y;
        a[i] += h;
        b[i] -= h;
        g[i] = (f(a) - f(b)) / (2.0 * h);
    }
    return g;
}

} // namespace

// ---------------------------------------------------------------------------
// Polytope

Polytope Polytope::from_vertices(const std::vector<Vector>& points) {
    if (points.empty()) throw InvariantError("polytope: no vertices");
    const auto d = points.front().size();
    for (const auto& p : points)
        if (p.size() != d) throw InvariantError("polytope: vertices of mixed dimension");
    const ConvexHull hull = convex_hull(points);
    if (!hull.full_dimensional) throw InvariantError("polytope: vertices are not full-dimensional");

    Polytope P;
    std::vector<int> remap(points.size(), -1);
    for (int i : hull.vertices) {
        remap[static_cast<std::size_t>(i)] = static_cast<int>(P.vertices_.size());
        P.vertices_.push_back(points[static_cast<std::size_t>(i)]);
    }
    for (const auto& f : hull.facets) {
        P.halfspaces_.push_back({f.normal, f.offset});
        std::vector<int> fv;
        for (int i : f.vertices) fv.push_back(remap[static_cast<std::size_t>(i)]);
        P.facet_vertices_.push_back(std::move(fv));
    }
    P.interior_ = Vector::Zero(d);
    for (const auto& v : P.vertices_) P.interior_ += v;
    P.interior_ /= static_cast<double>(P.vertices_.size());
    return P;
}

Polytope Polytope::from_halfspaces(const std::vector<Halfspace>& halfspaces, const Vector& interior) {
    std::vector<Vector> dual;
    for (const auto& h : halfspaces) {
        const double n = h.normal.norm();
        const double slack = h.offset - h.normal.dot(interior);
        if (!(n > 0.0) || !(slack > 1e-12 * std::max(1.0, std::abs(h.offset))))
            throw InvariantError("polytope: interior point violates a halfspace");
        dual.push_back(h.normal / slack);
    }
    const ConvexHull hull = convex_hull(dual);
    if (!hull.full_dimensional) throw InvariantError("polytope: halfspace intersection is unbounded");
    std::vector<Vector> verts;
    for (const auto& f : hull.facets) {
        if (!(f.offset > 1e-12)) throw InvariantError("polytope: halfspace intersection is unbounded");
        verts.push_back(interior + f.normal / f.offset);
    }
    return from_vertices(verts);
}

Polytope Polytope::cube(int d, double half_side) {
    std::vector<Vector> v;
    for (int mask = 0; mask < (1 << d); ++mask) {
        Vector p(d);
        for (int i = 0; i < d; ++i) p[i] = (mask >> i & 1) ? half_side : -half_side;
        v.push_back(p);
    }
    return from_vertices(v);
}

std::vector<int> Polytope::vertex_facets(int i) const {
    std::vector<int> out;
    for (std::size_t f = 0; f < facet_vertices_.size(); ++f)
        if (std::find(facet_vertices_[f].begin(), facet_vertices_[f].end(), i) != facet_vertices_[f].end())
            out.push_back(static_cast<int>(f));
    return out;
}

int Polytope::find_vertex(const Vector& v) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if ((vertices_[i] - v).norm() <= 1e-9 * std::max(1.0, v.norm())) return static_cast<int>(i);
    return -1;
}

Polytope Polytope::polar() const {
    for (const auto& h : halfspaces_)
        if (!(h.offset > 1e-12)) throw InvariantError("polar: origin is not interior to the polytope");
    Polytope P;
    for (const auto& h : halfspaces_) P.vertices_.push_back(h.normal / h.offset);
    for (std::size_t j = 0; j < vertices_.size(); ++j) {
        const double n = vertices_[j].norm();
        P.halfspaces_.push_back({vertices_[j] / n, 1.0 / n});
        P.facet_vertices_.push_back(vertex_facets(static_cast<int>(j)));
    }
    P.interior_ = Vector::Zero(dimension());
    return P;
}

// ---------------------------------------------------------------------------
// Ellipsoid

Ellipsoid::Ellipsoid(Vector c, Matrix a) : center(std::move(c)), form(std::move(a)) {
    if (form.rows() != center.size() || form.cols() != center.size())
        throw InvariantError("ellipsoid: form and center dimensions differ");
    if ((form - form.transpose()).norm() > 1e-9 * std::max(1.0, form.norm()))
        throw InvariantError("ellipsoid: form is not symmetric");
    form = 0.5 * (form + form.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(form);
    if (!(es.eigenvalues().minCoeff() > 0.0)) throw InvariantError("ellipsoid: form is not positive definite");
    inverse_ = form.llt().solve(Matrix::Identity(form.rows(), form.cols()));
}

Ellipsoid Ellipsoid::ball(const Vector& c, double radius) {
    if (!(radius > 0.0)) throw InvariantError("ball: radius must be positive");
    const auto d = c.size();
    return {c, Matrix::Identity(d, d) / (radius * radius)};
}

// ---------------------------------------------------------------------------
// Generic body operations

int dimension(const ConvexBody& K) {
    return std::visit(overloaded{[](const Polytope& P) { return P.dimension(); },
                                 [](const Ellipsoid& E) { return E.dimension(); },
                                 [](const SupportOracle& S) { return S.dimension; }},
                      K);
}

Vector interior_point(const ConvexBody& K) {
    return std::visit(overloaded{[](const Polytope& P) { return P.interior(); },
                                 [](const Ellipsoid& E) { return E.center; },
                                 [](const SupportOracle& S) { return S.interior; }},
                      K);
}

bool is_polytope(const ConvexBody& K) { return std::holds_alternative<Polytope>(K); }
bool is_ellipsoid(const ConvexBody& K) { return std::holds_alternative<Ellipsoid>(K); }

double support_function(const ConvexBody& K, const Vector& u) {
    return std::visit(overloaded{[&](const Polytope& P) {
                                     double h = -std::numeric_limits<double>::infinity();
                                     for (const auto& v : P.vertices()) h = std::max(h, u.dot(v));
                                     return h;
                                 },
                                 [&](const Ellipsoid& E) {
                                     return u.dot(E.center) + std::sqrt(std::max(0.0, u.dot(E.inverse() * u)));
                                 },
                                 [&](const SupportOracle& S) { return S.support(u); }},
                      K);
}

Vector support_point(const ConvexBody& K, const Vector& u) {
    return std::visit(
        overloaded{[&](const Polytope& P) {
                       const double h = support_function(K, u);
                       const double tol = 1e-12 * std::max(1.0, std::abs(h));
                       const Vector* best = nullptr;
                       for (const auto& v : P.vertices()) {
                           if (u.dot(v) < h - tol) continue;
                           if (!best || std::lexicographical_compare(v.begin(), v.end(), best->begin(), best->end()))
                               best = &v;
                       }
                       return *best;
                   },
                   [&](const Ellipsoid& E) {
                       const Vector w = E.inverse() * u;
                       return Vector(E.center + w / std::sqrt(u.dot(w)));
                   },
                   [&](const SupportOracle& S) { return S.support_point(u); }},
        K);
}

double relative_gauge(const ConvexBody& K, const Vector& x) {
    return std::visit(overloaded{[&](const Polytope& P) {
                                     const Vector& c = P.interior();
                                     double m = 0.0;
                                     for (const auto& h : P.halfspaces())
                                         m = std::max(m, h.normal.dot(x - c) / (h.offset - h.normal.dot(c)));
                                     return m;
                                 },
                                 [&](const Ellipsoid& E) { return E.centered_gauge(x - E.center); },
                                 [&](const SupportOracle& S) { return S.gauge(x - S.interior); }},
                      K);
}

bool contains(const ConvexBody& K, const Vector& x, double tol) { return relative_gauge(K, x) <= 1.0 + tol; }

void require_interior(const ConvexBody& K, const Vector& x, const char* what) {
    if (x.size() != dimension(K)) throw InvariantError(std::string(what) + ": dimension mismatch");
    if (!(relative_gauge(K, x) < 1.0 - 1e-12)) throw InvariantError(std::string(what) + ": point is not interior");
}

RayHit ray_exit(const ConvexBody& K, const Vector& x, const Vector& v) {
    if (!(v.norm() > 0.0)) throw InvariantError("ray_exit: zero direction");
    require_interior(K, x, "ray_exit");
    const double t = std::visit(
        overloaded{[&](const Polytope& P) {
                       double best = std::numeric_limits<double>::infinity();
                       for (const auto& h : P.halfspaces()) {
                           const double rate = h.normal.dot(v);
                           if (rate > 0.0) best = std::min(best, (h.offset - h.normal.dot(x)) / rate);
                       }
                       return best;
                   },
                   [&](const Ellipsoid& E) {
                       const Vector y = x - E.center;
                       const Vector Av = E.form * v;
                       const double a = v.dot(Av);
                       const double b = y.dot(Av);
                       const double c = y.dot(E.form * y) - 1.0;
                       const double disc = std::sqrt(b * b - a * c);
                       return b >= 0.0 ? -c / (b + disc) : (disc - b) / a;
                   },
                   [&](const SupportOracle& S) {
                       auto inside = [&](double s) { return S.gauge(x + s * v - S.interior) <= 1.0; };
                       double lo = 0.0;
                       double hi = 1.0;
                       while (inside(hi)) {
                           lo = hi;
                           hi *= 2.0;
                           if (hi > 1e300) throw InvariantError("ray_exit: body is unbounded");
                       }
                       for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
                           const double m = 0.5 * (lo + hi);
                           (inside(m) ? lo : hi) = m;
                       }
                       return 0.5 * (lo + hi);
                   }},
        K);
    return {x + t * v, t};
}

bool ray_meets(const ConvexBody& K, const Vector& base, const Vector& s) {
    return std::visit(
        overloaded{[&](const Polytope& P) {
                       double lo = 0.0;
                       double hi = std::numeric_limits<double>::infinity();
                       for (const auto& h : P.halfspaces()) {
                           const double rate = h.normal.dot(s);
                           const double slack = h.offset - h.normal.dot(base);
                           if (rate > 0.0) hi = std::min(hi, slack / rate);
                           else if (rate < 0.0) lo = std::max(lo, slack / rate);
                           else if (slack < 0.0) return false;
                           if (lo > hi) return false;
                       }
                       return true;
                   },
                   [&](const Ellipsoid& E) {
                       const Vector y = base - E.center;
                       const Vector As = E.form * s;
                       const double a = s.dot(As);
                       const double b = y.dot(As);
                       const double c = y.dot(E.form * y) - 1.0;
                       const double disc = b * b - a * c;
                       if (disc < 0.0) return false;
                       return c <= 0.0 || -b + std::sqrt(disc) >= 0.0;
                   },
                   [&](const SupportOracle& S) {
                       // The gauge is convex along the ray; minimize it by ternary search.
                       auto f = [&](double t) { return S.gauge(base + t * s - S.interior); };
                       double hi = 1.0;
                       while (f(2.0 * hi) < f(hi) && hi < 1e300) hi *= 2.0;
                       double lo = 0.0;
                       hi *= 2.0;
                       for (int it = 0; it < 200; ++it) {
                           const double m1 = lo + (hi - lo) / 3.0;
                           const double m2 = hi - (hi - lo) / 3.0;
                           if (f(m1) < f(m2)) hi = m2;
                           else lo = m1;
                       }
                       return f(0.5 * (lo + hi)) <= 1.0;
                   }},
        K);
}

double gauge(const ConvexBody& K, const Vector& x) {
    return std::visit(
        overloaded{[&](const Polytope& P) {
                       double m = 0.0;
                       for (const auto& h : P.halfspaces()) {
                           if (!(h.offset > 1e-12)) throw InvariantError("gauge: origin is not interior");
                           m = std::max(m, h.normal.dot(x) / h.offset);
                       }
                       return m;
                   },
                   [&](const Ellipsoid& E) {
                       const Vector Ac = E.form * E.center;
                       const double alpha = 1.0 - E.center.dot(Ac);
                       if (!(alpha > 1e-12)) throw InvariantError("gauge: origin is not interior");
                       const double q = x.dot(E.form * x);
                       if (q == 0.0) return 0.0;
                       const double b = x.dot(Ac);
                       const double r = std::sqrt(b * b + alpha * q);
                       return b <= 0.0 ? (r - b) / alpha : q / (b + r);
                   },
                   [&](const SupportOracle& S) {
                       if (S.interior.norm() == 0.0) return S.gauge(x);
                       if (x.norm() == 0.0) return 0.0;
                       return 1.0 / ray_exit(K, Vector::Zero(S.dimension), x).t;
                   }},
        K);
}

ConvexBody polar_body(const ConvexBody& K) {
    return std::visit(
        overloaded{[](const Polytope& P) -> ConvexBody { return P.polar(); },
                   [](const Ellipsoid& E) -> ConvexBody {
                       const Vector& c = E.center;
                       if (!(1.0 - c.dot(E.form * c) > 1e-12)) throw InvariantError("polar: origin is not interior");
                       const Matrix Q = E.inverse() - c * c.transpose();
                       const Vector Qc = Q.llt().solve(c);
                       return Ellipsoid(-Qc, Q / (1.0 + c.dot(Qc)));
                   },
                   [](const SupportOracle& S) -> ConvexBody {
                       if (S.interior.norm() != 0.0)
                           throw InvariantError("polar: support oracle must be centered at the origin");
                       SupportOracle P;
                       P.dimension = S.dimension;
                       P.interior = Vector::Zero(S.dimension);
                       P.support = S.gauge;
                       P.gauge = S.support;
                       P.support_point = [g = S.gauge](const Vector& y) { return numeric_gradient(g, y); };
                       return P;
                   }},
        K);
}

ConvexBody difference_body(const ConvexBody& K) {
    return std::visit(overloaded{[](const Polytope& P) -> ConvexBody {
                                     std::vector<Vector> d;
                                     for (const auto& a : P.vertices())
                                         for (const auto& b : P.vertices()) d.push_back(a - b);
                                     return Polytope::from_vertices(d);
                                 },
                                 [](const Ellipsoid& E) -> ConvexBody {
                                     return Ellipsoid(Vector::Zero(E.dimension()), E.form / 4.0);
                                 },
                                 [](const SupportOracle&) -> ConvexBody {
                                     throw InvariantError("difference body of a support oracle is not supported");
                                 }},
                      K);
}

ConvexBody affine_image(const ConvexBody& K, const Matrix& M, const Vector& b) {
    Eigen::FullPivLU<Matrix> lu(M);
    if (!lu.isInvertible()) throw InvariantError("affine_image: map is singular");
    const Matrix Minv = lu.inverse();
    return std::visit(overloaded{[&](const Polytope& P) -> ConvexBody {
                                     std::vector<Vector> v;
                                     for (const auto& p : P.vertices()) v.push_back(M * p + b);
                                     return Polytope::from_vertices(v);
                                 },
                                 [&](const Ellipsoid& E) -> ConvexBody {
                                     return Ellipsoid(M * E.center + b, Minv.transpose() * E.form * Minv);
                                 },
                                 [&](const SupportOracle& S) -> ConvexBody {
                                     SupportOracle T;
                                     T.dimension = S.dimension;
                                     T.interior = M * S.interior + b;
                                     T.support = [S, M, b](const Vector& u) {
                                         return S.support(M.transpose() * u) + u.dot(b);
                                     };
                                     T.support_point = [S, M, b](const Vector& u) {
                                         return Vector(M * S.support_point(M.transpose() * u) + b);
                                     };
                                     T.gauge = [S, Minv](const Vector& y) { return S.gauge(Minv * y); };
                                     return T;
                                 }},
                      K);
}

ConvexBody translate(const ConvexBody& K, const Vector& x) {
    const int d = dimension(K);
    return affine_image(K, Matrix::Identity(d, d), x);
}

ConvexBody scale(const ConvexBody& K, double alpha) {
    if (!(alpha > 0.0)) throw InvariantError("scale: factor must be positive");
    const int d = dimension(K);
    return affine_image(K, alpha * Matrix::Identity(d, d), Vector::Zero(d));
}

// ---------------------------------------------------------------------------
// Cones

PointedCone::PointedCone(std::vector<Vector> generators) : generators_(std::move(generators)) {
    if (generators_.empty()) throw InvariantError("cone: no generators");
    const int d = static_cast<int>(generators_.front().size());
    std::vector<Vector> unit;
    for (const auto& g : generators_) {
        if (g.size() != d || !(g.norm() > 0.0)) throw InvariantError("cone: generators must be nonzero d-vectors");
        unit.push_back(g.normalized());
    }
    if (matrix_rank(unit, d) < d) throw InvariantError("cone: generators are not full-dimensional");

    const double tol = 1e-10;
    auto add_ray = [&](const Vector& n) {
        for (const auto& p : polar_rays_)
            if ((p - n).norm() < 1e-9) return;
        polar_rays_.push_back(n);
    };
    const int n = static_cast<int>(unit.size());
    if (d == 1) {
        add_ray(Vector::Constant(1, unit.front()[0] > 0.0 ? -1.0 : 1.0));
    } else {
        for_each_subset(n, d - 1, [&](const std::vector<int>& idx) {
            Matrix B(d - 1, d);
            for (int r = 0; r < d - 1; ++r) B.row(r) = unit[static_cast<std::size_t>(idx[r])].transpose();
            Eigen::FullPivLU<Matrix> lu(B);
            lu.setThreshold(1e-10);
            if (lu.rank() != d - 1) return;
            const Vector nrm = lu.kernel().col(0).normalized();
            double lo = 0.0;
            double hi = 0.0;
            for (const auto& g : unit) {
                const double s = g.dot(nrm);
                lo = std::min(lo, s);
                hi = std::max(hi, s);
            }
            if (hi <= tol) add_ray(nrm);
            else if (lo >= -tol) add_ray(-nrm);
        });
    }
    if (matrix_rank(polar_rays_, d) < d) throw InvariantError("cone: generators do not span a pointed cone");
    Vector s = Vector::Zero(d);
    for (const auto& p : polar_rays_) s += p;
    axis_ = (-s).normalized();
}

Vector PointedCone::center() const {
    Vector s = Vector::Zero(dimension());
    for (const auto& r : extreme_rays()) s += r.normalized();
    return s.normalized();
}

bool PointedCone::contains(const Vector& s, double tol) const {
    const double scale = s.norm();
    for (const auto& p : polar_rays_)
        if (s.dot(p) > tol * scale) return false;
    return true;
}

bool PointedCone::contains_interior(const Vector& s, double margin) const {
    const double scale = s.norm();
    if (!(scale > 0.0)) return false;
    for (const auto& p : polar_rays_)
        if (!(s.dot(p) < -margin * scale)) return false;
    return true;
}

std::vector<Vector> PointedCone::extreme_rays() const {
    const int d = dimension();
    std::vector<Vector> out;
    for (const auto& g : generators_) {
        const Vector u = g.normalized();
        bool dup = false;
        for (const auto& e : out) dup = dup || (e - u).norm() < 1e-9;
        if (dup) continue;
        std::vector<Vector> active;
        for (const auto& p : polar_rays_)
            if (std::abs(u.dot(p)) <= 1e-10) active.push_back(p);
        if (matrix_rank(active, d) == d - 1) out.push_back(u);
    }
    return out;
}

PointedCone vertex_normal_cone(const Polytope& K, const Vector& v) {
    const int i = K.find_vertex(v);
    if (i < 0) throw InvariantError("normal cone: point is not a vertex");
    std::vector<Vector> gens;
    for (int f : K.vertex_facets(i)) gens.push_back(K.halfspaces()[static_cast<std::size_t>(f)].normal);
    return PointedCone(std::move(gens));
}

PointedCone tangent_cone(const ConvexBody& K, const Vector& v) {
    const auto* P = std::get_if<Polytope>(&K);
    if (!P) throw InvariantError("tangent cone: exact generators need a polytope");
    if (!contains(K, v, 1e-9) || relative_gauge(K, v) < 1.0 - 1e-9)
        throw InvariantError("tangent cone: point is not on the boundary");
    std::vector<Vector> gens;
    for (const auto& w : P->vertices())
        if ((w - v).norm() > 1e-12 * std::max(1.0, v.norm())) gens.push_back(w - v);
    return PointedCone(std::move(gens));
}

EmbeddedRegion dual_cross_section(const PointedCone& C, const Vector& x) {
    if (!C.contains_interior(x)) throw InvariantError("dual cross-section: x is not interior to the cone");
    PolytopalRegion r;
    for (const auto& p : C.polar_rays()) r.vertices.push_back(p / (-x.dot(p)));
    const double n = x.norm();
    return {Hyperplane{x / n, -1.0 / n}, r};
}

EmbeddedRegion polar_facet(const Polytope& K, const Vector& v) {
    for (const auto& h : K.halfspaces())
        if (!(h.offset > 1e-12)) throw InvariantError("polar facet: origin is not interior");
    const int i = K.find_vertex(v);
    if (i < 0) throw InvariantError("polar facet: point is not a vertex");
    PolytopalRegion r;
    for (int f : K.vertex_facets(i)) {
        const auto& h = K.halfspaces()[static_cast<std::size_t>(f)];
        r.vertices.push_back(h.normal / h.offset);
    }
    return {dual_hyperplane(v), r};
}

bool spherical_section_membership(const PointedCone& C, const Vector& s) { return C.contains(s); }

} // namespace funk
