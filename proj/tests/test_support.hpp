#ifndef FUNK_TEST_SUPPORT_HPP
#define FUNK_TEST_SUPPORT_HPP

#include "funk/bodies.hpp"
#include "funk/hull.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace funk::test {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

inline int uniform_int(Rng& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

inline Vector unit_vector(Rng& rng, int d) {
    std::normal_distribution<double> n;
    Vector v(d);
    do {
        for (int i = 0; i < d; ++i) v[i] = n(rng);
    } while (v.norm() < 1e-9);
    return v.normalized();
}

inline Matrix random_rotation(Rng& rng, int d) {
    Matrix a(d, d);
    std::normal_distribution<double> n;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = n(rng);
    return Eigen::HouseholderQR<Matrix>(a).householderQ() * Matrix::Identity(d, d);
}

/// n points in convex position on a random ellipse-like curve around the
/// origin, with the origin well inside.
inline Polytope random_polygon(Rng& rng, int n) {
    for (;;) {
        std::vector<double> angles(static_cast<std::size_t>(n));
        for (auto& a : angles) a = uniform(rng, 0.0, 2.0 * pi);
        std::sort(angles.begin(), angles.end());
        double gap = angles.front() + 2.0 * pi - angles.back();
        for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
        if (gap > 0.8 * pi) continue;
        const double sx = uniform(rng, 0.7, 1.3);
        const double sy = uniform(rng, 0.7, 1.3);
        std::vector<Vector> pts;
        for (double a : angles) {
            Vector p(2);
            p << sx * std::cos(a), sy * std::sin(a);
            pts.push_back(p);
        }
        const auto K = Polytope::from_vertices(pts);
        if (static_cast<int>(K.vertices().size()) != n) continue;
        if (relative_gauge(K, Vector::Zero(2)) > 0.7) continue;
        return K;
    }
}

/// Hull of n random points near the unit sphere, origin well inside.
inline Polytope random_polytope(Rng& rng, int d, int n) {
    for (;;) {
        std::vector<Vector> pts;
        for (int i = 0; i < n; ++i) pts.push_back(uniform(rng, 0.8, 1.2) * unit_vector(rng, d));
        const auto K = Polytope::from_vertices(pts);
        if (relative_gauge(K, Vector::Zero(d)) > 0.7) continue;
        return K;
    }
}

/// Random polytope placed strictly inside K (gauge margin at least 0.1).
inline Polytope random_nested(Rng& rng, const ConvexBody& K, int n) {
    const int d = dimension(K);
    for (;;) {
        const auto P = d == 2 ? random_polygon(rng, n) : random_polytope(rng, d, n);
        const Vector c = 0.2 * uniform(rng, 0.0, 1.0) * unit_vector(rng, d);
        const double s = uniform(rng, 0.15, 0.5);
        std::vector<Vector> pts;
        for (const auto& v : P.vertices()) pts.push_back(c + s * v);
        const bool inside = std::all_of(pts.begin(), pts.end(), [&](const Vector& p) { return gauge(K, p) < 0.9; });
        if (inside) return Polytope::from_vertices(pts);
    }
}

/// Lower bound on the distance from an interior point x to the boundary of K.
inline double boundary_distance(const ConvexBody& K, const Vector& x) {
    if (const auto* P = std::get_if<Polytope>(&K)) {
        double m = INFINITY;
        for (const auto& h : P->halfspaces()) m = std::min(m, h.offset - h.normal.dot(x));
        return m;
    }
    const auto& E = std::get<Ellipsoid>(K);
    const double shortest = 1.0 / std::sqrt(Eigen::SelfAdjointEigenSolver<Matrix>(E.form).eigenvalues().maxCoeff());
    return (1.0 - E.centered_gauge(x - E.center)) * shortest;
}

/// Random ball well inside a polytope or ellipsoid K.
inline Ellipsoid random_nested_ball(Rng& rng, const ConvexBody& K) {
    const int d = dimension(K);
    const Vector c = interior_point(K);
    const Vector v = unit_vector(rng, d);
    const Vector center = c + uniform(rng, 0.0, 0.3) * ray_exit(K, c, v).t * v;
    return Ellipsoid::ball(center, uniform(rng, 0.2, 0.6) * boundary_distance(K, center));
}

/// max over a of min over b |a - b|, symmetrised: Hausdorff distance of finite sets.
inline double hausdorff(const std::vector<Vector>& a, const std::vector<Vector>& b) {
    auto directed = [](const std::vector<Vector>& x, const std::vector<Vector>& y) {
        double worst = 0.0;
        for (const auto& p : x) {
            double best = INFINITY;
            for (const auto& q : y) best = std::min(best, (p - q).norm());
            worst = std::max(worst, best);
        }
        return worst;
    };
    if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : INFINITY;
    return std::max(directed(a, b), directed(b, a));
}

/// Extreme points of a finite set.
inline std::vector<Vector> extreme_points(const std::vector<Vector>& pts) {
    const auto h = convex_hull(pts);
    std::vector<Vector> out;
    for (int i : h.vertices) out.push_back(pts[static_cast<std::size_t>(i)]);
    return out;
}

/// Section of conv(points) by the subspace spanned by the orthonormal columns
/// of E, in E-coordinates. Each cut keeps the points on the hyperplane and all
/// segment crossings, then continues in the hyperplane's own coordinates.
inline std::vector<Vector> section_by_subspace(const std::vector<Vector>& points, const Matrix& E) {
    const int d = static_cast<int>(E.rows());
    const Matrix Q = Eigen::HouseholderQR<Matrix>(E).householderQ() * Matrix::Identity(d, d);
    const Matrix N = Q.rightCols(d - E.cols());
    Matrix C = Matrix::Identity(d, d);
    std::vector<Vector> current = points;
    for (int k = 0; k < N.cols(); ++k) {
        const Vector n = C.transpose() * N.col(k);
        std::vector<Vector> next;
        for (std::size_t i = 0; i < current.size(); ++i) {
            const double si = n.dot(current[i]);
            if (std::abs(si) < 1e-13) next.push_back(current[i]);
            for (std::size_t j = i + 1; j < current.size(); ++j) {
                const double sj = n.dot(current[j]);
                if ((si < -1e-13 && sj > 1e-13) || (si > 1e-13 && sj < -1e-13))
                    next.push_back(current[i] + (si / (si - sj)) * (current[j] - current[i]));
            }
        }
        const Matrix B = orthonormal_complement(n);
        current.clear();
        for (const auto& p : next) current.push_back(B.transpose() * p);
        current = extreme_points(current);
        C = C * B;
    }
    std::vector<Vector> coords;
    for (const auto& p : current) coords.push_back(E.transpose() * (C * p));
    return coords;
}

} // namespace funk::test

#endif // FUNK_TEST_SUPPORT_HPP
