#ifndef FUNK_GEOM_CORE_HPP
#define FUNK_GEOM_CORE_HPP

#include "funk/random.hpp"
#include "funk/types.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

namespace funk {

/// {y : <y, normal> = offset}, normal of unit length.
struct Hyperplane {
    Vector normal;
    double offset = 0.0;

    int dimension() const { return static_cast<int>(normal.size()); }
    double signed_distance(const Vector& p) const { return normal.dot(p) - offset; }
    bool contains(const Vector& p) const {
        return std::abs(signed_distance(p)) <= 1e-9 * std::max(1.0, std::abs(offset));
    }
};

/// The dual hyperplane z* = {u : <u, z> = 1}.
template <typename Derived>
Hyperplane dual_hyperplane(const Eigen::MatrixBase<Derived>& z) {
    const double n = z.norm();
    if (!(n > 0.0)) throw InvariantError("dual_hyperplane: zero vector has no dual hyperplane");
    return {Vector(z / n), 1.0 / n};
}

/// Central projection of the open hemisphere around u onto u*: x / <x, u>.
template <typename DerivedU, typename DerivedX>
Vector gnomonic_project(const Eigen::MatrixBase<DerivedU>& u, const Eigen::MatrixBase<DerivedX>& x,
                        double eps = 1e-9) {
    const double c = x.dot(u);
    if (!(c > eps)) throw NumericalGuardError("gnomonic_project: point is on or beyond the equator of u");
    return Vector(x / c);
}

/// m-dimensional measure of the simplex spanned by m + 1 points in R^n
/// (square root of the Gram determinant over m!).
template <typename Scalar = double>
Scalar simplex_measure(std::span<const Vector> pts) {
    const auto m = static_cast<Eigen::Index>(pts.size()) - 1;
    if (m <= 0) return Scalar(0);
    Matrix e(pts.front().size(), m);
    for (Eigen::Index j = 0; j < m; ++j) e.col(j) = pts[static_cast<std::size_t>(j + 1)] - pts[0];
    const double g = (e.transpose() * e).determinant();
    Scalar fact = 1;
    for (Eigen::Index j = 2; j <= m; ++j) fact *= static_cast<Scalar>(j);
    return static_cast<Scalar>(std::sqrt(std::max(0.0, g))) / fact;
}

/// d x (d-1) matrix whose orthonormal columns span normal^perp.
Matrix orthonormal_complement(const Vector& normal);

/// Convex polytope given by points on a hyperplane.
struct PolytopalRegion {
    std::vector<Vector> vertices;
};

/// {point + basis z : z^T form z <= 1} inside a hyperplane; basis is d x (d-1)
/// with orthonormal columns spanning the plane's direction space.
struct EllipsoidalRegion {
    Vector center;
    Matrix basis;
    Matrix form;
};

/// A convex region of a hyperplane measured by the plane's own (d-1)-measure.
struct EmbeddedRegion {
    Hyperplane plane;
    std::variant<PolytopalRegion, EllipsoidalRegion> shape;

    bool is_polytopal() const { return std::holds_alternative<PolytopalRegion>(shape); }
    const std::vector<Vector>& vertices() const { return std::get<PolytopalRegion>(shape).vertices; }
};

/// Orthonormal in-plane coordinates of p relative to origin.
Vector plane_coordinates(const Matrix& basis, const Vector& origin, const Vector& p);

/// (d-1)-measure of the region; degenerate regions measure 0.
double region_measure(const EmbeddedRegion& region);

/// Measure of a polytopal region in R^k given by in-plane coordinates.
double hull_measure(std::span<const Vector> coords);

// ---------------------------------------------------------------------------
// Quadrature and estimators

struct QuadratureSpec {
    enum class Mode { deterministic, monte_carlo };

    Mode mode = Mode::deterministic;
    std::int64_t budget = 4096;
    std::uint64_t seed = 42;
    int threads = 1;

    static QuadratureSpec deterministic(std::int64_t budget) { return {Mode::deterministic, budget, 42, 1}; }
    static QuadratureSpec monte_carlo(std::int64_t budget, std::uint64_t seed = 42) {
        return {Mode::monte_carlo, budget, seed, 1};
    }
    /// Deterministic with 4096 nodes for d = 2, Monte-Carlo with 1e5 samples otherwise.
    static QuadratureSpec defaults_for(int d) { return d == 2 ? deterministic(4096) : monte_carlo(100000); }

    bool is_monte_carlo() const { return mode == Mode::monte_carlo; }
    QuadratureSpec with_threads(int t) const {
        auto s = *this;
        s.threads = t;
        return s;
    }
    void validate() const {
        if (budget < 1) throw InvariantError("quadrature budget must be at least 1");
    }
};

/// Return contract of every estimator; std_error is 0 for deterministic rules.
struct EstimateReport {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Mean and standard error of per-sample contributions, summed in index order.
EstimateReport summarize_samples(std::span<const double> contributions, std::uint64_t seed);

struct QuadratureNode {
    double x;
    double w;
};

/// n-point Gauss-Legendre rule on [a, b].
std::vector<QuadratureNode> gauss_legendre(int n, double a, double b);

/// Composite Gauss-Legendre: `panels` equal panels of `order` points each.
std::vector<QuadratureNode> composite_gauss_legendre(double a, double b, int panels, int order = 8);

/// Equal-weight trapezoidal nodes on the circle: angle 2 pi k / n, weight 2 pi / n.
std::vector<QuadratureNode> circle_quadrature(int n);

/// Symmetric degree-4 rule on the reference triangle: barycentric nodes and
/// weights summing to one.
struct TriangleRule {
    std::vector<Eigen::Vector3d> barycentric;
    std::vector<double> weights;
};
const TriangleRule& triangle_rule();

/// sigma of the spherical cap {x : <x, axis> >= cos(half_angle)} in S^{d-1}.
double cap_area(int d, double half_angle);

/// Uniform sample from the cap around `axis` with the given half-angle.
Vector sample_cap(RandomStream& rng, const Vector& axis, double half_angle);

/// Membership test for a region of the sphere.
using SphereRegion = std::function<bool(const Vector&)>;

/// lambda_{d-1} of the gnomonic image P_u(Omega), computed as the weighted
/// spherical integral of |<x,u>|^{-d} over Omega.
///
/// Omega must lie in the open hemisphere around u and, when given, inside the
/// cap of half-angle `bounding_half_angle` around u. Deterministic mode needs
/// d = 2 and a connected arc, located by scanning the cap; Monte-Carlo mode
/// samples the cap uniformly. Sampled points of Omega within `equator_eps` of
/// the equator raise NumericalGuardError, as does, when the cap is the whole
/// hemisphere, a sample whose mirror image below the equator lies in Omega.
EstimateReport gnomonic_area(const Vector& u, const SphereRegion& omega, const QuadratureSpec& spec,
                             double bounding_half_angle = pi / 2, double equator_eps = 1e-9);

} // namespace funk

#endif // FUNK_GEOM_CORE_HPP
