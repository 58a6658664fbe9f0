#ifndef FUNK_HULL_HPP
#define FUNK_HULL_HPP

#include "funk/types.hpp"

#include <span>
#include <vector>

namespace funk {

struct HullFacet {
    Vector normal; // outer, unit
    double offset = 0.0;
    std::vector<int> vertices; // extreme points lying on the facet
};

/// Convex hull of a point set in R^k, k = points[0].size().
///
/// k = 1 and k = 2 use direct methods (min/max, monotone chain). For k >= 3
/// an incremental beneath-beyond construction produces a simplicial boundary
/// (`simplices`), whose coplanar cells are then merged into true facets.
/// Lower-dimensional input yields full_dimensional == false and no facets.
struct ConvexHull {
    int dimension = 0;
    bool full_dimensional = false;
    std::vector<int> vertices; // extreme points; counter-clockwise for k = 2
    std::vector<HullFacet> facets;
    std::vector<std::vector<int>> simplices; // boundary cells, k indices each
    Vector interior;                         // strictly interior point
};

ConvexHull convex_hull(std::span<const Vector> points, double rel_tol = 1e-10);

/// k-volume of the convex hull of points in R^k (0 for degenerate input).
double convex_volume(std::span<const Vector> points);

struct Simplex {
    std::vector<Vector> vertices; // k + 1 points in R^k
    double volume = 0.0;
};

/// Fan triangulation of conv(points) from an interior point.
std::vector<Simplex> triangulate(std::span<const Vector> points);

/// |det(p1 - p0, ..., pk - p0)| / k! for k + 1 points in R^k.
double simplex_volume(std::span<const Vector> vertices);

/// Area of a planar polygon given as a counter-clockwise vertex list.
double polygon_area(std::span<const Vector> ccw);

} // namespace funk

#endif // FUNK_HULL_HPP
