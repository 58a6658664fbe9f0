#include "funk/crofton.hpp"

#include "funk/holmes_thompson.hpp"
#include "funk/random.hpp"

#include <cmath>

namespace funk {

OrientedLine oriented_line(const ConvexBody& K, const Vector& u, const Vector& s) {
    if (!(s.dot(u) < 0.0)) throw InvariantError("oriented line: direction must point into the body side");
    return {u, s, support_point(K, u)};
}

double line_density(const Vector& u, const Vector& s) {
    const double c = std::abs(s.dot(u));
    if (!(c > 1e-12)) throw NumericalGuardError("line density: s is orthogonal to u");
    const int d = static_cast<int>(u.size());
    return std::pow(c, -d) / unit_ball_volume(d - 1);
}

bool ray_intersects(const OrientedLine& line, const ConvexBody& G) { return ray_meets(G, line.base, line.s); }

EstimateReport crofton_estimate(const ConvexBody& K, const LineTarget& target, std::int64_t n, std::uint64_t seed,
                                int threads) {
    if (n < 1) throw InvariantError("crofton: sample count must be at least 1");
    const int d = dimension(K);
    const double area = sphere_area(d);
    const double scale = area * (0.5 * area);
    std::vector<double> values(static_cast<std::size_t>(n));
    parallel_for(n, threads, [&](std::int64_t i) {
        RandomStream rng(seed, static_cast<std::uint64_t>(i));
        const Vector u = rng.unit_vector(d);
        Vector s;
        do {
            s = rng.unit_vector(d);
            if (s.dot(u) > 0.0) s = -s;
        } while (!(std::abs(s.dot(u)) >= 1e-6));
        const OrientedLine line{u, s, support_point(K, u)};
        values[static_cast<std::size_t>(i)] = target(line) ? scale * line_density(u, s) : 0.0;
    });
    return summarize_samples(values, seed);
}

EstimateReport crofton_estimate(const ConvexBody& K, const ConvexBody& G, std::int64_t n, std::uint64_t seed,
                                int threads) {
    require_contained(K, G);
    return crofton_estimate(K, [&](const OrientedLine& l) { return ray_intersects(l, G); }, n, seed, threads);
}

} // namespace funk
