#ifndef FUNK_METRICS_HPP
#define FUNK_METRICS_HPP

#include "funk/bodies.hpp"

namespace funk {

enum class Geometry { funk, hilbert };

/// d_F(x, y) = ln(|x - y'| / |y - y'|), y' the exit point of the ray x -> y.
double funk_distance(const ConvexBody& K, const Vector& x, const Vector& y);

/// (d_F(x, y) + d_F(y, x)) / 2.
double hilbert_distance(const ConvexBody& K, const Vector& x, const Vector& y);

/// 1 / t where x + t v is the exit point; 0 for v = 0.
double funk_norm(const ConvexBody& K, const Vector& x, const Vector& v);

/// (1/t+ + 1/t-) / 2 for the exits along v and -v.
double hilbert_norm(const ConvexBody& K, const Vector& x, const Vector& v);

/// Unit ball of the Finsler norm at x, recentred at the origin.
struct FinslerBall {
    Geometry kind;
    Vector base_point;
    ConvexBody body;
};

FinslerBall finsler_ball(const ConvexBody& K, const Vector& x, Geometry kind);

/// Polar of the Finsler ball at x: (K - x)° for Funk, ½ Delta((K - x)°) for Hilbert.
ConvexBody polar_finsler_ball(const ConvexBody& K, const Vector& x, Geometry kind);

} // namespace funk

#endif // FUNK_METRICS_HPP
