#pragma once

#include <vector>

#include "lunekit/sphere.hpp"

namespace lunekit {

// Facet structure of the closed convex cone positively spanned by a set of
// generators in R^d (d = 3 or 4). Normals are unit vectors oriented so that
// every generator has nonnegative dot product. extreme[i] marks generators
// spanning extreme rays; facet_members[f] lists the generators lying on
// facet plane f.
struct ConeHull {
    std::vector<Vec> facet_normals;
    std::vector<char> extreme;
    std::vector<std::vector<int>> facet_members;
};

// Requires the generators to positively span a pointed, full-dimensional
// cone contained in an open half-space (this is exactly properness of the
// corresponding spherical body). Throws GeometryError otherwise, and for
// ambient dimension outside {3, 4} (exact enumeration is only supported at
// desk scale).
//
// Implementation: an interior direction w of the cone is found by max-margin
// ascent, generators are centrally projected onto the hyperplane w.x = 1,
// and the facet structure is read off a (d-1)-dimensional Euclidean convex
// hull of the projections. Facet normals are recomputed from the original
// generators for accuracy.
ConeHull cone_hull(const std::vector<Vec>& generators, double tol_angle = 1e-9);

// Euclidean convex hull facets of full-dimensional point sets in R^2 / R^3,
// as half-spaces normal.x <= offset containing all points. Vertices are the
// extreme points. Exposed for reuse (Wulff vertex recovery lifts through
// these) and for oracle testing.
struct EuclideanHull {
    std::vector<Vec> facet_normals;   // unit outward normals
    std::vector<double> facet_offsets;
    std::vector<char> extreme;        // per input point
    std::vector<std::vector<int>> facet_members;
};

EuclideanHull convex_hull_2d(const std::vector<Vec>& points);
EuclideanHull convex_hull_3d(const std::vector<Vec>& points);

// max over unit w of min_i w.points[i], by projected supergradient ascent
// with deterministic restarts. The maximizing w certifies properness when
// the value is positive.
struct MarginResult {
    Vec direction;
    double margin;
};

MarginResult max_min_margin(const std::vector<Vec>& points);

// Numerical rank of the span of the given vectors.
int span_rank(const std::vector<Vec>& vectors, double tol = 1e-9);

} // namespace lunekit
