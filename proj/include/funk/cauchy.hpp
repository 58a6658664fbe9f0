#ifndef FUNK_CAUCHY_HPP
#define FUNK_CAUCHY_HPP

#include "funk/bodies.hpp"
#include "funk/geom_core.hpp"

#include <span>
#include <vector>

namespace funk {

struct ShadowQuery {
    ConvexBody K;
    ConvexBody G;
    Vector u;
};

/// Slice of cone(G - apex) by the plane {y : <y, u> = -1}. Every point of G
/// must satisfy <g - apex, u> < 0, otherwise ContainmentError.
EmbeddedRegion cone_slice(const ConvexBody& G, const Vector& apex, const Vector& u);
/// Same for the cone over a finite point set (possibly a single point).
EmbeddedRegion cone_slice(std::span<const Vector> points, const Vector& apex, const Vector& u);

/// Central shadow S_K(G, u) = -u* ∩ cone(G - v_K(u)).
EmbeddedRegion central_shadow(const ShadowQuery& q);

/// lambda_{d-1}(S_K(G, u)).
double shadow_measure(const ShadowQuery& q);

/// The same measure as the gnomonic integral of |<s, u>|^{-d} over
/// Sigma(G, v_K(u)). Deterministic for d = 2, Monte-Carlo otherwise.
EstimateReport shadow_measure_gnomonic(const ShadowQuery& q, const QuadratureSpec& spec);

/// Upper bound on the angle between `axis` and the directions of cone(G - apex)
/// (exact for polytopes), capped at pi / 2.
double cone_half_angle(const ConvexBody& G, const Vector& apex, const Vector& axis);

/// Funk area of G in K from the central shadows:
/// (1 / omega_{d-1}) ∫ lambda_{d-1}(S_K(G, u)) dsigma(u).
EstimateReport funk_area_cauchy(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& spec);

struct VertexContribution {
    Vector vertex;
    PointedCone normal_cone;
    double spherical_measure = 0.0; // sigma(U_v)
    EstimateReport value;
};

struct VertexDecomposition {
    EstimateReport total;
    std::vector<VertexContribution> contributions;
};

/// sigma of the spherical image of a cone: exact for d = 2, 3 and
/// Monte-Carlo for larger d.
double spherical_image_measure(const PointedCone& N, std::int64_t samples = 200000, std::uint64_t seed = 42);

/// Funk area as the sum over vertices v of K of the cone Funk volumes
/// vol_{K_v}(G_v), each integrated over the spherical image of the normal cone.
VertexDecomposition funk_area_vertex_decomposition(const ConvexBody& K, const ConvexBody& G,
                                                   const QuadratureSpec& spec);

/// (1 / omega_{d-1}) ∫_S ∫_{Sigma(G, v_K(u))} |<s, u>|^{-d} dsigma(s) dsigma(u).
EstimateReport funk_area_double_integral(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& spec);

/// S^M_K(G, u) = Pi_u(G) with Pi_u(g) = (g - (<g, u> / h) v) / h, h = h_K(u), v = v_K(u).
EmbeddedRegion minkowski_shadow(const ConvexBody& K, const ConvexBody& G, const Vector& u);

/// (1 / omega_{d-1}) ∫ lambda_{d-1}(S^M_K(G, u)) dsigma(u).
EstimateReport minkowski_area(const ConvexBody& K, const ConvexBody& G, const QuadratureSpec& spec);

struct LimitRow {
    double r = 0.0;
    EstimateReport scaled; // r^{d-1} area_{rK}(G)
    double error = 0.0;    // |scaled - limit|
};

struct LimitStudy {
    double limit = 0.0; // minkowski_area(K, G)
    std::vector<LimitRow> rows;
    /// error_i / error_{i+1} for consecutive radii.
    std::vector<double> ratios;
};

LimitStudy minkowski_limit_study(const ConvexBody& K, const ConvexBody& G, const std::vector<double>& radii,
                                 const QuadratureSpec& spec);

} // namespace funk

#endif // FUNK_CAUCHY_HPP
