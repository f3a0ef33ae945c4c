// Copyright 2026 The celltwin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <vector>

namespace celltwin::geom {

// Absolute tolerance for geometric predicates, in map units (metres).
inline constexpr double kEps = 1e-9;

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

inline bool operator==(const Point2D& a, const Point2D& b) { return a.x == b.x && a.y == b.y; }

struct Segment {
  Point2D p, q;
};

struct Triangle {
  Point2D a, b, c;
};

/// Simple polygon with optional holes. Rings are stored open (no repeated
/// closing vertex); the outer ring is counter-clockwise, holes clockwise.
struct Polygon {
  std::vector<Point2D> outer;
  std::vector<std::vector<Point2D>> holes;
};

double distance2d(const Point2D& a, const Point2D& b);

/// Euclidean separation of two positions with heights h1, h2 (metres).
double distance3d(const Point2D& p1, double h1, const Point2D& p2, double h2);

/// Signed ring area (positive for counter-clockwise).
double ring_signed_area(const std::vector<Point2D>& ring);

/// Total polygon area (outer minus holes).
double area(const Polygon& poly);

/// Normalizes ring orientations (outer CCW, holes CW) in place.
void normalize_orientation(Polygon& poly);

/// Rejects rings with <3 vertices, repeated/degenerate edges, zero area or
/// self-intersections. `index` names the offending polygon in the error.
void validate_polygon(const Polygon& poly, std::size_t index);

/// Point-in-polygon with boundary points counting as inside; holes excluded.
bool point_in_polygon(const Point2D& p, const Polygon& poly);

/// Distance from a point to the polygon boundary (outer ring and holes).
double distance_to_boundary(const Point2D& p, const Polygon& poly);

/// Union of a set of polygons into the minimal set of disjoint polygons.
/// Interior holes created by the union are removed, so every output polygon
/// has an empty holes list.
std::vector<Polygon> polygon_union(const std::vector<Polygon>& polygons);

/// Union after closing gaps of at most `gap_eps` metres: polygons are
/// offset outward by gap_eps, unioned, then offset back inward. Holes are
/// removed as in polygon_union.
std::vector<Polygon> merge_with_gap_tolerance(const std::vector<Polygon>& polygons,
                                              double gap_eps);

/// Interior representative point: the area centroid when it lies strictly
/// inside, otherwise the pole of inaccessibility refined to `precision`.
Point2D representative_point(const Polygon& poly, double precision = 0.05);

/// Incircle centre (a*A + b*B + c*C)/(a+b+c) with side lengths opposite
/// each vertex. Throws ValidationError on a degenerate triangle.
Point2D triangle_incentre(const Triangle& t);

/// Delaunay triangulation (Bowyer-Watson, lexicographic insertion order so
/// co-circular ties resolve deterministically). Returns an empty vector when
/// fewer than 3 distinct points are given or all points are collinear.
std::vector<Triangle> delaunay(const std::vector<Point2D>& points);

/// True iff the segment crosses or touches any boundary edge of the polygon
/// (vertex grazing counts) or either endpoint lies strictly inside.
bool segment_intersects_polygon(const Segment& s, const Polygon& poly);

/// Segment-segment intersection including endpoint touches and collinear
/// overlap.
bool segments_intersect(const Segment& a, const Segment& b);

/// Widens a polyline into a polygon strip of the given total width.
std::vector<Polygon> buffer_polyline(const std::vector<Point2D>& polyline, double width);

struct BBox {
  double minx = 0, miny = 0, maxx = 0, maxy = 0;
  bool contains(const Point2D& p) const {
    return p.x >= minx && p.x <= maxx && p.y >= miny && p.y <= maxy;
  }
};

BBox bbox_of(const Polygon& poly);

/// Conservative quick-reject: false only when the segment certainly misses
/// the box.
bool segment_may_hit_bbox(const Segment& s, const BBox& box);

}  // namespace celltwin::geom
