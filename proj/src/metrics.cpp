#include "funk/metrics.hpp"

#include <cmath>

namespace funk {

double funk_distance(const ConvexBody& K, const Vector& x, const Vector& y) {
    require_interior(K, x, "funk_distance");
    require_interior(K, y, "funk_distance");
    if ((y - x).norm() == 0.0) return 0.0;
    const double t = ray_exit(K, x, y - x).t;
    return std::log(t / (t - 1.0));
}

double hilbert_distance(const ConvexBody& K, const Vector& x, const Vector& y) {
    return 0.5 * (funk_distance(K, x, y) + funk_distance(K, y, x));
}

double funk_norm(const ConvexBody& K, const Vector& x, const Vector& v) {
    require_interior(K, x, "funk_norm");
    if (v.norm() == 0.0) return 0.0;
    return 1.0 / ray_exit(K, x, v).t;
}

double hilbert_norm(const ConvexBody& K, const Vector& x, const Vector& v) {
    return 0.5 * (funk_norm(K, x, v) + funk_norm(K, x, -v));
}

ConvexBody polar_finsler_ball(const ConvexBody& K, const Vector& x, Geometry kind) {
    require_interior(K, x, "polar_finsler_ball");
    const ConvexBody polar = polar_body(translate(K, -x));
    if (kind == Geometry::funk) return polar;
    return scale(difference_body(polar), 0.5);
}

FinslerBall finsler_ball(const ConvexBody& K, const Vector& x, Geometry kind) {
    require_interior(K, x, "finsler_ball");
    if (kind == Geometry::funk) return {kind, x, translate(K, -x)};
    return {kind, x, polar_body(polar_finsler_ball(K, x, kind))};
}

} // namespace funk
