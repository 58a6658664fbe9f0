#ifndef FUNK_CROFTON_HPP
#define FUNK_CROFTON_HPP

#include "funk/bodies.hpp"
#include "funk/geom_core.hpp"

#include <functional>

namespace funk {

/// Ray l(u, s) = {v_K(u) + t s : t >= 0} with <s, u> < 0.
struct OrientedLine {
    Vector u;
    Vector s;
    Vector base;
};

OrientedLine oriented_line(const ConvexBody& K, const Vector& u, const Vector& s);

/// (1 / omega_{d-1}) |<s, u>|^{-d}; orthogonal pairs raise NumericalGuardError.
double line_density(const Vector& u, const Vector& s);

bool ray_intersects(const OrientedLine& line, const ConvexBody& G);

using LineTarget = std::function<bool(const OrientedLine&)>;

/// Monte-Carlo Crofton estimate of the Funk area of G in K: u uniform on the
/// sphere, s uniform on the hemisphere <s, u> < 0, each line weighted by
/// sigma(S) sigma(S) / 2 times its density when it meets G. Draws with
/// |<s, u>| < 1e-6 are redrawn.
EstimateReport crofton_estimate(const ConvexBody& K, const ConvexBody& G, std::int64_t n, std::uint64_t seed,
                                int threads = 1);

/// The same estimator for an arbitrary hit predicate; line i depends only on
/// (seed, i), so two targets evaluated with one seed share their lines.
EstimateReport crofton_estimate(const ConvexBody& K, const LineTarget& target, std::int64_t n, std::uint64_t seed,
                                int threads = 1);

} // namespace funk

#endif // FUNK_CROFTON_HPP
