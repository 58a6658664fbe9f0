#include "funk/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace funk {
namespace {

double cross2(const Vector& o, const Vector& a, const Vector& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

Vector centroid_of(std::span<const Vector> points) {
    Vector c = Vector::Zero(points.front().size());
    for (const auto& p : points) c += p;
    return c / static_cast<double>(points.size());
}

double spread(std::span<const Vector> points, const Vector& c) {
    double s = 0.0;
    for (const auto& p : points) s = std::max(s, (p - c).norm());
    return s;
}

ConvexHull hull_1d(std::span<const Vector> points, double rel_tol) {
    ConvexHull h;
    h.dimension = 1;
    int lo = 0;
    int hi = 0;
    for (int i = 1; i < static_cast<int>(points.size()); ++i) {
        if (points[i][0] < points[lo][0]) lo = i;
        if (points[i][0] > points[hi][0]) hi = i;
    }
    const double len = points[hi][0] - points[lo][0];
    const double scale = std::max(std::abs(points[hi][0]), std::abs(points[lo][0]));
    if (!(len > rel_tol * scale) || len <= 0.0) return h;
    h.full_dimensional = true;
    h.vertices = {lo, hi};
    h.facets.push_back({Vector::Constant(1, -1.0), -points[lo][0], {lo}});
    h.facets.push_back({Vector::Constant(1, 1.0), points[hi][0], {hi}});
    h.simplices = {{lo}, {hi}};
    h.interior = Vector::Constant(1, 0.5 * (points[lo][0] + points[hi][0]));
    return h;
}

ConvexHull hull_2d(std::span<const Vector> points, double rel_tol) {
    ConvexHull h;
    h.dimension = 2;
    const int n = static_cast<int>(points.size());
    if (n < 3) return h;
    const Vector c = centroid_of(points);
    const double scale = spread(points, c);
    if (scale <= 0.0) return h;
    const double eps = rel_tol * scale * scale;

    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return points[a][0] < points[b][0] || (points[a][0] == points[b][0] && points[a][1] < points[b][1]);
    });
    std::vector<int> chain(2 * static_cast<std::size_t>(n));
    int k = 0;
    for (int i : idx) {
        while (k >= 2 && cross2(points[chain[k - 2]], points[chain[k - 1]], points[i]) <= eps) --k;
        chain[k++] = i;
    }
    for (int j = n - 2, t = k + 1; j >= 0; --j) {
        const int i = idx[j];
        while (k >= t && cross2(points[chain[k - 2]], points[chain[k - 1]], points[i]) <= eps) --k;
        chain[k++] = i;
    }
    chain.resize(static_cast<std::size_t>(std::max(0, k - 1)));
    if (chain.size() < 3) return h;

    std::vector<Vector> ring;
    for (int i : chain) ring.push_back(points[i]);
    if (polygon_area(ring) <= eps) return h;

    h.full_dimensional = true;
    h.vertices = chain;
    const int m = static_cast<int>(chain.size());
    h.interior = centroid_of(ring);
    for (int i = 0; i < m; ++i) {
        const int a = chain[i];
        const int b = chain[(i + 1) % m];
        const Vector e = points[b] - points[a];
        Vector nrm(2);
        nrm << e[1], -e[0];
        nrm.normalize();
        h.facets.push_back({nrm, nrm.dot(points[a]), {a, b}});
        h.simplices.push_back({a, b});
    }
    return h;
}

struct Cell {
    std::vector<int> verts; // sorted
    Vector normal;
    double offset = 0.0;
    bool alive = true;
};

Vector plane_normal(const std::vector<Vector>& q, const std::vector<int>& verts) {
    const int k = static_cast<int>(q.front().size());
    if (k == 3) {
        const Eigen::Vector3d a = q[verts[1]] - q[verts[0]];
        const Eigen::Vector3d b = q[verts[2]] - q[verts[0]];
        const Eigen::Vector3d nrm = a.cross(b);
        return Vector(nrm.normalized());
    }
    Matrix m(k - 1, k);
    for (int j = 1; j < k; ++j) m.row(j - 1) = (q[verts[j]] - q[verts[0]]).transpose();
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    return svd.matrixV().col(k - 1).normalized();
}

Cell make_cell(const std::vector<Vector>& q, std::vector<int> verts, const Vector& inside) {
    std::sort(verts.begin(), verts.end());
    Cell c;
    c.normal = plane_normal(q, verts);
    c.offset = c.normal.dot(q[verts[0]]);
    if (c.normal.dot(inside) > c.offset) {
        c.normal = -c.normal;
        c.offset = -c.offset;
    }
    c.verts = std::move(verts);
    return c;
}

ConvexHull hull_nd(std::span<const Vector> points, double rel_tol) {
    const int k = static_cast<int>(points.front().size());
    const int n = static_cast<int>(points.size());
    ConvexHull h;
    h.dimension = k;
    if (n < k + 1) return h;

    const Vector center = centroid_of(points);
    std::vector<Vector> q;
    q.reserve(points.size());
    for (const auto& p : points) q.push_back(p - center);
    const double scale = spread(points, center);
    if (scale <= 0.0) return h;
    const double eps = rel_tol * scale;

    // Initial simplex: greedily maximize distance to the current affine span.
    std::vector<int> chosen;
    int first = 0;
    for (int i = 1; i < n; ++i)
        if (q[i][0] < q[first][0]) first = i;
    chosen.push_back(first);
    std::vector<Vector> basis;
    for (int step = 0; step < k; ++step) {
        int best = -1;
        double best_d = 0.0;
        Vector best_r;
        for (int i = 0; i < n; ++i) {
            Vector r = q[i] - q[first];
            for (const auto& b : basis) r -= b.dot(r) * b;
            const double d = r.norm();
            if (d > best_d) {
                best_d = d;
                best = i;
                best_r = r;
            }
        }
        if (best < 0 || best_d <= 1e3 * eps) return h;
        chosen.push_back(best);
        basis.push_back(best_r / best_d);
    }

    Vector inside = Vector::Zero(k);
    for (int i : chosen) inside += q[i];
    inside /= static_cast<double>(k + 1);

    std::vector<Cell> cells;
    for (int j = 0; j <= k; ++j) {
        std::vector<int> verts;
        for (int t = 0; t <= k; ++t)
            if (t != j) verts.push_back(chosen[t]);
        cells.push_back(make_cell(q, verts, inside));
    }

    std::vector<int> order;
    for (int i = 0; i < n; ++i)
        if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) order.push_back(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return (q[a] - inside).squaredNorm() > (q[b] - inside).squaredNorm(); });

    std::vector<int> visible;
    for (int p : order) {
        visible.clear();
        for (int c = 0; c < static_cast<int>(cells.size()); ++c)
            if (cells[c].alive && cells[c].normal.dot(q[p]) - cells[c].offset > eps) visible.push_back(c);
        if (visible.empty()) continue;

        std::map<std::vector<int>, int> ridges;
        for (int c : visible) {
            const auto& v = cells[c].verts;
            for (int j = 0; j < k; ++j) {
                std::vector<int> ridge;
                ridge.reserve(static_cast<std::size_t>(k - 1));
                for (int t = 0; t < k; ++t)
                    if (t != j) ridge.push_back(v[t]);
                ++ridges[ridge];
            }
            cells[c].alive = false;
        }
        for (auto& [ridge, count] : ridges) {
            if (count != 1) continue;
            std::vector<int> verts = ridge;
            verts.push_back(p);
            cells.push_back(make_cell(q, verts, inside));
        }
        if (cells.size() > 64 * static_cast<std::size_t>(n) + 1024) {
            std::erase_if(cells, [](const Cell& c) { return !c.alive; });
        }
    }

    for (const auto& c : cells) {
        if (!c.alive) continue;
        h.simplices.push_back(c.verts);
        bool merged = false;
        for (auto& f : h.facets) {
            if ((f.normal - c.normal).norm() < 1e-7 && std::abs(f.offset - c.offset) < 10.0 * eps) {
                f.vertices.insert(f.vertices.end(), c.verts.begin(), c.verts.end());
                merged = true;
                break;
            }
        }
        if (!merged) h.facets.push_back({c.normal, c.offset, c.verts});
    }

    std::vector<int> candidates;
    for (const auto& s : h.simplices) candidates.insert(candidates.end(), s.begin(), s.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (int v : candidates) {
        std::vector<Vector> tight;
        for (const auto& f : h.facets)
            if (std::abs(f.normal.dot(q[v]) - f.offset) <= 10.0 * eps) tight.push_back(f.normal);
        if (static_cast<int>(tight.size()) < k) continue;
        Matrix m(static_cast<Eigen::Index>(tight.size()), k);
        for (std::size_t r = 0; r < tight.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = tight[r].transpose();
        Eigen::FullPivLU<Matrix> lu(m);
        lu.setThreshold(1e-7);
        if (lu.rank() == k) h.vertices.push_back(v);
    }
    for (auto& f : h.facets) {
        f.vertices.clear();
        for (int v : h.vertices)
            if (std::abs(f.normal.dot(q[v]) - f.offset) <= 10.0 * eps) f.vertices.push_back(v);
        f.offset += f.normal.dot(center);
    }
    h.full_dimensional = true;
    h.interior = inside + center;
    return h;
}

} // namespace

ConvexHull convex_hull(std::span<const Vector> points, double rel_tol) {
    if (points.empty()) return {};
    const auto k = points.front().size();
    if (k == 1) return hull_1d(points, rel_tol);
    if (k == 2) return hull_2d(points, rel_tol);
    return hull_nd(points, rel_tol);
}

double simplex_volume(std::span<const Vector> vertices) {
    const auto k = static_cast<Eigen::Index>(vertices.size()) - 1;
    Matrix m(k, k);
    for (Eigen::Index j = 0; j < k; ++j) m.col(j) = vertices[static_cast<std::size_t>(j + 1)] - vertices[0];
    double fact = 1.0;
    for (Eigen::Index j = 2; j <= k; ++j) fact *= static_cast<double>(j);
    return std::abs(m.determinant()) / fact;
}

double polygon_area(std::span<const Vector> ccw) {
    double a = 0.0;
    const std::size_t m = ccw.size();
    for (std::size_t i = 0; i < m; ++i) {
        const auto& p = ccw[i];
        const auto& r = ccw[(i + 1) % m];
        a += p[0] * r[1] - p[1] * r[0];
    }
    return 0.5 * a;
}

double convex_volume(std::span<const Vector> points) {
    if (points.empty()) return 0.0;
    const auto hull = convex_hull(points);
    if (!hull.full_dimensional) return 0.0;
    if (hull.dimension == 1) return points[hull.vertices[1]][0] - points[hull.vertices[0]][0];
    if (hull.dimension == 2) {
        std::vector<Vector> ring;
        for (int i : hull.vertices) ring.push_back(points[i]);
        return polygon_area(ring);
    }
    double vol = 0.0;
    std::vector<Vector> simplex;
    for (const auto& cell : hull.simplices) {
        simplex.assign(1, hull.interior);
        for (int i : cell) simplex.push_back(points[i]);
        vol += simplex_volume(simplex);
    }
    return vol;
}

std::vector<Simplex> triangulate(std::span<const Vector> points) {
    std::vector<Simplex> out;
    if (points.empty()) return out;
    const auto hull = convex_hull(points);
    if (!hull.full_dimensional) return out;
    for (const auto& cell : hull.simplices) {
        Simplex s;
        s.vertices.push_back(hull.interior);
        for (int i : cell) s.vertices.push_back(points[i]);
        s.volume = simplex_volume(s.vertices);
        if (s.volume > 0.0) out.push_back(std::move(s));
    }
    return out;
}

} // namespace funk
