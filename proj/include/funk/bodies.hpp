#ifndef FUNK_BODIES_HPP
#define FUNK_BODIES_HPP

#include "funk/geom_core.hpp"
#include "funk/types.hpp"

#include <functional>
#include <variant>
#include <vector>

namespace funk {

/// {x : <normal, x> <= offset}, normal of unit length.
struct Halfspace {
    Vector normal;
    double offset = 0.0;
};

/// Full-dimensional convex polytope holding both its V- and H-representation
/// together with the vertex/facet incidences.
class Polytope {
public:
    /// Convex hull of the points; interior points are dropped.
    static Polytope from_vertices(const std::vector<Vector>& points);
    /// Bounded intersection of halfspaces around a strictly interior point.
    static Polytope from_halfspaces(const std::vector<Halfspace>& halfspaces, const Vector& interior);
    static Polytope cube(int d, double half_side = 1.0);

    int dimension() const { return static_cast<int>(interior_.size()); }
    const std::vector<Vector>& vertices() const { return vertices_; }
    const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
    /// facet_vertices()[i] lists the vertex indices on facet i.
    const std::vector<std::vector<int>>& facet_vertices() const { return facet_vertices_; }
    /// Facet indices incident to vertex i.
    std::vector<int> vertex_facets(int i) const;
    /// Index of the vertex equal to v within 1e-9, or -1.
    int find_vertex(const Vector& v) const;
    const Vector& interior() const { return interior_; }

    /// Polar body; requires the origin to be strictly interior.
    Polytope polar() const;

private:
    std::vector<Vector> vertices_;
    std::vector<Halfspace> halfspaces_;
    std::vector<std::vector<int>> facet_vertices_;
    Vector interior_;
};

/// {x : (x - c)^T A (x - c) <= 1} with A symmetric positive definite.
struct Ellipsoid {
    Vector center;
    Matrix form;

    Ellipsoid(Vector center, Matrix form);
    static Ellipsoid ball(const Vector& center, double radius);
    static Ellipsoid unit_ball(int d) { return ball(Vector::Zero(d), 1.0); }

    int dimension() const { return static_cast<int>(center.size()); }
    /// A^{-1}, whose quadratic form gives the squared support function.
    const Matrix& inverse() const { return inverse_; }
    /// Gauge of E - c.
    double centered_gauge(const Vector& y) const { return std::sqrt(std::max(0.0, y.dot(form * y))); }

private:
    Matrix inverse_;
};

/// Body known only through evaluators. `gauge` is the gauge of K - interior.
struct SupportOracle {
    int dimension = 0;
    std::function<double(const Vector&)> support;
    std::function<Vector(const Vector&)> support_point;
    std::function<double(const Vector&)> gauge;
    Vector interior;
};

using ConvexBody = std::variant<Polytope, Ellipsoid, SupportOracle>;

int dimension(const ConvexBody& K);
/// A strictly interior point of K.
Vector interior_point(const ConvexBody& K);
bool is_polytope(const ConvexBody& K);
bool is_ellipsoid(const ConvexBody& K);

/// h_K(u) = sup_{x in K} <u, x>.
double support_function(const ConvexBody& K, const Vector& u);

/// A point of K on the supporting hyperplane with outer normal u. For
/// polytopes ties are broken by the lexicographically smallest vertex.
Vector support_point(const ConvexBody& K, const Vector& u);

/// Gauge mu_K(x) = inf{lambda > 0 : x in lambda K}; needs O in int K.
double gauge(const ConvexBody& K, const Vector& x);

/// Gauge of K - interior_point(K), used for membership and margins.
double relative_gauge(const ConvexBody& K, const Vector& x);

/// Closed membership with relative slack tol in the gauge.
bool contains(const ConvexBody& K, const Vector& x, double tol = 1e-12);

/// Throws InvariantError unless x is strictly interior (gauge margin 1e-12).
void require_interior(const ConvexBody& K, const Vector& x, const char* what);

struct RayHit {
    Vector point;
    double t = 0.0;
};

/// Boundary point x + t v of K hit by the ray from interior point x.
RayHit ray_exit(const ConvexBody& K, const Vector& x, const Vector& v);

/// True when the ray {base + t s : t >= 0} meets K (closed body).
bool ray_meets(const ConvexBody& K, const Vector& base, const Vector& s);

/// K°; for an ellipsoid not centered at O the polar is again an ellipsoid.
ConvexBody polar_body(const ConvexBody& K);

/// Delta(K) = K + (-K).
ConvexBody difference_body(const ConvexBody& K);

ConvexBody translate(const ConvexBody& K, const Vector& x);
/// alpha K, scaling about the origin (alpha > 0).
ConvexBody scale(const ConvexBody& K, double alpha);
/// {M x + b : x in K}, M invertible.
ConvexBody affine_image(const ConvexBody& K, const Matrix& M, const Vector& b);

/// Convex cone spanned by nonzero generators, apex at the origin. The
/// constructor enumerates the polar cone's extreme rays (unit vectors) and
/// rejects cones that are not pointed or not full-dimensional.
class PointedCone {
public:
    explicit PointedCone(std::vector<Vector> generators);

    int dimension() const { return static_cast<int>(axis_.size()); }
    const std::vector<Vector>& generators() const { return generators_; }
    /// Extreme rays of the polar cone C° = {y : <y, z> <= 0 for z in C}.
    const std::vector<Vector>& polar_rays() const { return polar_rays_; }
    /// Unit vector w with <g, w> > 0 for every generator (interior to the dual cone).
    const Vector& axis() const { return axis_; }
    /// Normalised sum of the unit extreme rays, a direction interior to C.
    Vector center() const;

    /// Closed membership: <s, p> <= tol |s| for every polar ray p.
    bool contains(const Vector& s, double tol = 1e-12) const;
    /// Strict interiority with the given margin.
    bool contains_interior(const Vector& s, double margin = 1e-12) const;
    /// Generators that are extreme rays of C.
    std::vector<Vector> extreme_rays() const;

private:
    std::vector<Vector> generators_;
    std::vector<Vector> polar_rays_;
    Vector axis_;
};

/// Normal cone of K at vertex v, spanned by the incident facet normals.
PointedCone vertex_normal_cone(const Polytope& K, const Vector& v);

/// cone(K - v) for a boundary point v of a polytope.
PointedCone tangent_cone(const ConvexBody& K, const Vector& v);

/// F_C(x) = C° ∩ {y : <x, y> = -1} for x in the interior of C.
EmbeddedRegion dual_cross_section(const PointedCone& C, const Vector& x);

/// The facet of K° on the plane <v, .> = 1.
EmbeddedRegion polar_facet(const Polytope& K, const Vector& v);

/// s in C (closed cone).
bool spherical_section_membership(const PointedCone& C, const Vector& s);

} // namespace funk

#endif // FUNK_BODIES_HPP
