#ifndef FUNK_HOLMES_THOMPSON_HPP
#define FUNK_HOLMES_THOMPSON_HPP

#include "funk/bodies.hpp"
#include "funk/geom_core.hpp"
#include "funk/metrics.hpp"

#include <vector>

namespace funk {

/// Point of ∂G with its tangent hyperplane (outer unit normal) and the
/// (d-1)-measure of the boundary patch it represents.
struct BoundarySample {
    Vector point;
    Hyperplane tangent;
    double weight = 0.0;
};

/// Boundary quadrature of G.
///
/// Deterministic rules exist for d = 2 (Gauss-Legendre per polygon edge,
/// trapezoid on ellipses) and d = 3 (subdivided facet triangles with a
/// degree-4 rule, Gauss-Legendre x trapezoid on ellipsoids). Monte-Carlo
/// draws uniform boundary points in any dimension; each weight is then
/// lambda(∂G) / n.
std::vector<BoundarySample> boundary_samples(const ConvexBody& G, const QuadratureSpec& spec);

/// Polytope boundary split into (d-1)-simplices tagged with the facet normal.
struct BoundaryPiece {
    Vector normal;
    std::vector<Vector> vertices;
    double measure = 0.0;
};
std::vector<BoundaryPiece> boundary_pieces(const Polytope& G);

/// lambda_{d-1} of the orthogonal projection of the polar Finsler ball at x
/// onto the hyperplane normal^perp.
double projected_polar_measure(const ConvexBody& K, const Vector& x, const Vector& normal, Geometry kind);

/// Holmes-Thompson area densities at a boundary sample of G.
double funk_area_element(const ConvexBody& K, const BoundarySample& s);
double hilbert_area_element(const ConvexBody& K, const BoundarySample& s);
/// Normed-space density (1 / omega_{d-1}) lambda_{d-1}(proj K°), O in int K.
double minkowski_area_element(const ConvexBody& K, const Vector& normal);

/// Holmes-Thompson volume densities (1 / omega_d) lambda_d(polar Finsler ball).
double funk_volume_element(const ConvexBody& K, const Vector& x);
double hilbert_volume_element(const ConvexBody& K, const Vector& x);

/// lambda_k of the polar about 0 of {z : (z - z0)^T F (z - z0) <= 1}, 0 interior.
double ellipsoid_polar_measure(const Vector& z0, const Matrix& F);

/// Throws ContainmentError unless G ⊂ int K with gauge margin 1e-6.
void require_contained(const ConvexBody& K, const ConvexBody& G);

EstimateReport funk_area_direct(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& spec);
EstimateReport hilbert_area_direct(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& spec);
/// Holmes-Thompson area of G in the normed space with unit ball K.
EstimateReport minkowski_area_direct(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& spec);

/// Volume integrals over G. Deterministic rules cover d <= 2.
EstimateReport funk_volume(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& spec);
EstimateReport hilbert_volume(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& spec);

/// C(2d, d) / 2^d.
double faifman_factor(int d);

/// (1 / omega_{d-1}) ∫_{S ∩ Gc} lambda_{d-1}(F_Kc(s)) dsigma(s). Deterministic
/// (d = 2 only) integrates over the angular interval of Gc.
EstimateReport cone_funk_volume(const PointedCone& Kc, const PointedCone& Gc, const QuadratureSpec& spec);

/// True when H cuts Kc in a bounded nonempty set.
bool is_admissible(const PointedCone& Kc, const Hyperplane& H);

/// Funk volume of Gc ∩ H inside Kc ∩ H, in the intrinsic coordinates of H.
EstimateReport cone_section_volume(const PointedCone& Kc, const PointedCone& Gc, const Hyperplane& H,
                                   const QuadratureSpec& spec);

} // namespace funk

#endif // FUNK_HOLMES_THOMPSON_HPP
