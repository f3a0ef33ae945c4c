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

#include "celltwin/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "celltwin/util.hpp"

namespace celltwin::geom {

namespace bg = boost::geometry;
using BPoint = bg::model::d2::point_xy<double>;
using BPoly = bg::model::polygon<BPoint, false, true>;  // CCW, closed
using BMulti = bg::model::multi_polygon<BPoly>;

double distance2d(const Point2D& a, const Point2D& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double distance3d(const Point2D& p1, double h1, const Point2D& p2, double h2) {
  const double dx = p1.x - p2.x, dy = p1.y - p2.y, dz = h1 - h2;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double ring_signed_area(const std::vector<Point2D>& ring) {
  double s = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2D& a = ring[i];
    const Point2D& b = ring[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

double area(const Polygon& poly) {
  double s = std::abs(ring_signed_area(poly.outer));
  for (const auto& h : poly.holes) s -= std::abs(ring_signed_area(h));
  return s;
}

void normalize_orientation(Polygon& poly) {
  if (ring_signed_area(poly.outer) < 0) std::reverse(poly.outer.begin(), poly.outer.end());
  for (auto& h : poly.holes)
    if (ring_signed_area(h) > 0) std::reverse(h.begin(), h.end());
}

namespace {

double cross(const Point2D& o, const Point2D& a, const Point2D& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const Point2D& p, const Point2D& a, const Point2D& b) {
  if (std::abs(cross(a, b, p)) > kEps * std::max(1.0, distance2d(a, b))) return false;
  return p.x >= std::min(a.x, b.x) - kEps && p.x <= std::max(a.x, b.x) + kEps &&
         p.y >= std::min(a.y, b.y) - kEps && p.y <= std::max(a.y, b.y) + kEps;
}

int orientation_sign(const Point2D& a, const Point2D& b, const Point2D& c) {
  const double v = cross(a, b, c);
  const double scale = std::max({1.0, std::abs(a.x), std::abs(a.y), std::abs(b.x),
                                 std::abs(b.y), std::abs(c.x), std::abs(c.y)});
  if (v > kEps * scale) return 1;
  if (v < -kEps * scale) return -1;
  return 0;
}

bool point_in_ring(const Point2D& p, const std::vector<Point2D>& ring, bool boundary_counts) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (on_segment(p, ring[i], ring[(i + 1) % n])) return boundary_counts;
  }
  // Crossing number on the open interior.
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2D& a = ring[i];
    const Point2D& b = ring[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xint = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < xint) inside = !inside;
    }
  }
  return inside;
}

double point_segment_distance(const Point2D& p, const Point2D& a, const Point2D& b) {
  const double abx = b.x - a.x, aby = b.y - a.y;
  const double len2 = abx * abx + aby * aby;
  if (len2 == 0.0) return distance2d(p, a);
  double t = ((p.x - a.x) * abx + (p.y - a.y) * aby) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance2d(p, {a.x + t * abx, a.y + t * aby});
}

double ring_boundary_distance(const Point2D& p, const std::vector<Point2D>& ring) {
  double d = std::numeric_limits<double>::infinity();
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i)
    d = std::min(d, point_segment_distance(p, ring[i], ring[(i + 1) % n]));
  return d;
}

BPoly to_boost(const Polygon& poly) {
  BPoly out;
  for (const auto& p : poly.outer) bg::append(out.outer(), BPoint(p.x, p.y));
  if (!poly.outer.empty()) bg::append(out.outer(), BPoint(poly.outer[0].x, poly.outer[0].y));
  for (const auto& hole : poly.holes) {
    out.inners().emplace_back();
    for (const auto& p : hole) bg::append(out.inners().back(), BPoint(p.x, p.y));
    if (!hole.empty()) bg::append(out.inners().back(), BPoint(hole[0].x, hole[0].y));
  }
  bg::correct(out);
  return out;
}

/// Converts outer rings only: union results drop their holes here
/// (courtyards become solid interior).
std::vector<Polygon> from_boost_outer(const BMulti& multi) {
  std::vector<Polygon> out;
  out.reserve(multi.size());
  for (const auto& bp : multi) {
    Polygon p;
    const auto& ring = bp.outer();
    // boost rings are closed; drop the repeated last vertex
    for (std::size_t i = 0; i + 1 < ring.size(); ++i)
      p.outer.push_back({bg::get<0>(ring[i]), bg::get<1>(ring[i])});
    normalize_orientation(p);
    if (p.outer.size() >= 3 && std::abs(ring_signed_area(p.outer)) > kEps) out.push_back(std::move(p));
  }
  return out;
}

BMulti buffer_multi(const BMulti& in, double distance) {
  bg::strategy::buffer::distance_symmetric<double> dist(distance);
  bg::strategy::buffer::join_miter join(10.0);
  bg::strategy::buffer::end_flat end;
  bg::strategy::buffer::point_square point;
  bg::strategy::buffer::side_straight side;
  BMulti out;
  bg::buffer(in, out, dist, side, join, end, point);
  return out;
}

}  // namespace

void validate_polygon(const Polygon& poly, std::size_t index) {
  const auto fail = [index](const std::string& why) {
    throw ValidationError("polygon " + std::to_string(index) + ": " + why);
  };
  const auto check_ring = [&](const std::vector<Point2D>& ring, const char* what) {
    if (ring.size() < 3) fail(std::string(what) + " has fewer than 3 vertices");
    for (const auto& p : ring)
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) fail(std::string(what) + " has non-finite vertex");
    if (std::abs(ring_signed_area(ring)) <= kEps) fail(std::string(what) + " is degenerate (zero area)");
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i)
      if (distance2d(ring[i], ring[(i + 1) % n]) <= kEps) fail(std::string(what) + " has a zero-length edge");
    // Non-adjacent edge pairs must not intersect.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const std::size_t in = (i + 1) % n, jn = (j + 1) % n;
        if (j == i || jn == i || in == j) continue;
        if (segments_intersect({ring[i], ring[in]}, {ring[j], ring[jn]}))
          fail(std::string(what) + " is self-intersecting");
      }
    }
  };
  check_ring(poly.outer, "outer ring");
  for (const auto& h : poly.holes) check_ring(h, "hole ring");
}

bool point_in_polygon(const Point2D& p, const Polygon& poly) {
  if (!point_in_ring(p, poly.outer, true)) return false;
  for (const auto& h : poly.holes) {
    // Strictly inside a hole means outside the polygon; hole boundary is
    // still polygon boundary and counts as inside.
    const std::size_t n = h.size();
    for (std::size_t i = 0; i < n; ++i)
      if (on_segment(p, h[i], h[(i + 1) % n])) return true;
    if (point_in_ring(p, h, false)) return false;
  }
  return true;
}

double distance_to_boundary(const Point2D& p, const Polygon& poly) {
  double d = ring_boundary_distance(p, poly.outer);
  for (const auto& h : poly.holes) d = std::min(d, ring_boundary_distance(p, h));
  return d;
}

std::vector<Polygon> polygon_union(const std::vector<Polygon>& polygons) {
  BMulti acc;
  for (std::size_t i = 0; i < polygons.size(); ++i) {
    validate_polygon(polygons[i], i);
    BMulti next;
    bg::union_(acc, to_boost(polygons[i]), next);
    acc = std::move(next);
  }
  return from_boost_outer(acc);
}

std::vector<Polygon> merge_with_gap_tolerance(const std::vector<Polygon>& polygons,
                                              double gap_eps) {
  if (gap_eps <= 0.0) return polygon_union(polygons);
  BMulti grown_union;
  for (std::size_t i = 0; i < polygons.size(); ++i) {
    validate_polygon(polygons[i], i);
    BMulti one;
    one.push_back(to_boost(polygons[i]));
    BMulti grown = buffer_multi(one, gap_eps);
    BMulti next;
    bg::union_(grown_union, grown, next);
    grown_union = std::move(next);
  }
  // Remove holes before deflating so courtyards stay solid.
  BMulti solid;
  for (auto& bp : grown_union) {
    BPoly outer_only;
    outer_only.outer() = bp.outer();
    solid.push_back(std::move(outer_only));
  }
  return from_boost_outer(buffer_multi(solid, -gap_eps));
}

namespace {

Point2D centroid(const Polygon& poly) {
  // Signed accumulation over all rings; with outer and holes oppositely
  // oriented this yields the hole-subtracted area centroid.
  double cx = 0.0, cy = 0.0, a = 0.0;
  const auto accumulate = [&](const std::vector<Point2D>& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point2D& p = ring[i];
      const Point2D& q = ring[(i + 1) % n];
      const double w = p.x * q.y - q.x * p.y;
      a += w;
      cx += (p.x + q.x) * w;
      cy += (p.y + q.y) * w;
    }
  };
  accumulate(poly.outer);
  for (const auto& h : poly.holes) accumulate(h);
  a *= 0.5;
  return {cx / (6.0 * a), cy / (6.0 * a)};
}

/// Signed distance to the boundary: positive inside, negative outside.
double signed_distance(const Point2D& p, const Polygon& poly) {
  const double d = distance_to_boundary(p, poly);
  return point_in_polygon(p, poly) ? d : -d;
}

/// Pole of inaccessibility by quadtree refinement of the bounding box.
Point2D pole_of_inaccessibility(const Polygon& poly, double precision) {
  double minx = poly.outer[0].x, maxx = minx, miny = poly.outer[0].y, maxy = miny;
  for (const auto& p : poly.outer) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  struct Cell {
    Point2D c;
    double half;
    double d;       // signed distance at centre
    double upper;   // d + half*sqrt(2): best possible in the cell
  };
  const auto make_cell = [&](Point2D c, double half) {
    const double d = signed_distance(c, poly);
    return Cell{c, half, d, d + half * std::sqrt(2.0)};
  };
  const auto cmp = [](const Cell& a, const Cell& b) { return a.upper < b.upper; };
  std::priority_queue<Cell, std::vector<Cell>, decltype(cmp)> queue(cmp);

  const double step = std::min(maxx - minx, maxy - miny) / 2.0;
  if (step <= 0.0) return {minx, miny};
  for (double x = minx; x < maxx; x += step)
    for (double y = miny; y < maxy; y += step)
      queue.push(make_cell({x + step / 2.0, y + step / 2.0}, step / 2.0));

  Cell best = make_cell(centroid(poly), 0.0);
  while (!queue.empty()) {
    const Cell cell = queue.top();
    queue.pop();
    if (cell.d > best.d) best = cell;
    if (cell.upper - best.d <= precision) continue;
    const double h = cell.half / 2.0;
    queue.push(make_cell({cell.c.x - h, cell.c.y - h}, h));
    queue.push(make_cell({cell.c.x + h, cell.c.y - h}, h));
    queue.push(make_cell({cell.c.x - h, cell.c.y + h}, h));
    queue.push(make_cell({cell.c.x + h, cell.c.y + h}, h));
  }
  return best.c;
}

}  // namespace

Point2D representative_point(const Polygon& poly, double precision) {
  if (area(poly) <= kEps) throw ValidationError("representative_point: zero-area polygon");
  const Point2D c = centroid(poly);
  if (point_in_polygon(c, poly) && distance_to_boundary(c, poly) > kEps) return c;
  return pole_of_inaccessibility(poly, precision);
}

Point2D triangle_incentre(const Triangle& t) {
  const double la = distance2d(t.b, t.c);  // opposite a
  const double lb = distance2d(t.a, t.c);  // opposite b
  const double lc = distance2d(t.a, t.b);  // opposite c
  const double perim = la + lb + lc;
  const double tri_area = 0.5 * std::abs(cross(t.a, t.b, t.c));
  if (perim <= 0.0 || tri_area < kEps * (perim / 3.0) * (perim / 3.0))
    throw ValidationError("triangle_incentre: degenerate triangle");
  return {(la * t.a.x + lb * t.b.x + lc * t.c.x) / perim,
          (la * t.a.y + lb * t.b.y + lc * t.c.y) / perim};
}

namespace {

struct Circumcircle {
  Point2D c;
  double r2;
  bool valid;
};

Circumcircle circumcircle(const Point2D& a, const Point2D& b, const Point2D& c) {
  const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
  if (std::abs(d) < 1e-14) return {{0, 0}, 0, false};
  const double a2 = a.x * a.x + a.y * a.y;
  const double b2 = b.x * b.x + b.y * b.y;
  const double c2 = c.x * c.x + c.y * c.y;
  const double ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d;
  const double uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d;
  const double dx = a.x - ux, dy = a.y - uy;
  return {{ux, uy}, dx * dx + dy * dy, true};
}

}  // namespace

std::vector<Triangle> delaunay(const std::vector<Point2D>& points) {
  std::vector<Point2D> pts = points;
  std::sort(pts.begin(), pts.end(), [](const Point2D& a, const Point2D& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point2D& a, const Point2D& b) {
                          return distance2d(a, b) <= kEps;
                        }),
            pts.end());
  if (pts.size() < 3) return {};
  bool collinear = true;
  for (std::size_t i = 2; i < pts.size() && collinear; ++i)
    if (orientation_sign(pts[0], pts[1], pts[i]) != 0) collinear = false;
  if (collinear) return {};

  double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
  for (const auto& p : pts) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  const double span = std::max(maxx - minx, maxy - miny);
  const double cx = (minx + maxx) / 2.0, cy = (miny + maxy) / 2.0;
  // Super-triangle comfortably containing every point.
  std::vector<Point2D> v = pts;
  const std::size_t s0 = v.size(), s1 = s0 + 1, s2 = s0 + 2;
  v.push_back({cx - 30.0 * span, cy - 20.0 * span});
  v.push_back({cx + 30.0 * span, cy - 20.0 * span});
  v.push_back({cx, cy + 30.0 * span});

  struct Tri {
    std::size_t i, j, k;
    Circumcircle cc;
  };
  const auto make_tri = [&](std::size_t i, std::size_t j, std::size_t k) {
    return Tri{i, j, k, circumcircle(v[i], v[j], v[k])};
  };
  std::vector<Tri> tris{make_tri(s0, s1, s2)};

  struct Edge {
    std::size_t a, b;
  };
  for (std::size_t pi = 0; pi < pts.size(); ++pi) {
    const Point2D& p = v[pi];
    std::vector<Tri> keep;
    std::vector<Edge> boundary;
    keep.reserve(tris.size());
    for (const auto& t : tris) {
      const double dx = p.x - t.cc.c.x, dy = p.y - t.cc.c.y;
      const bool bad = t.cc.valid && (dx * dx + dy * dy < t.cc.r2 * (1.0 - 1e-12));
      if (bad) {
        const Edge edges[3] = {{t.i, t.j}, {t.j, t.k}, {t.k, t.i}};
        for (const auto& e : edges) {
          bool shared = false;
          for (std::size_t b = 0; b < boundary.size(); ++b) {
            if ((boundary[b].a == e.b && boundary[b].b == e.a) ||
                (boundary[b].a == e.a && boundary[b].b == e.b)) {
              boundary.erase(boundary.begin() + static_cast<std::ptrdiff_t>(b));
              shared = true;
              break;
            }
          }
          if (!shared) boundary.push_back(e);
        }
      } else {
        keep.push_back(t);
      }
    }
    tris = std::move(keep);
    for (const auto& e : boundary) {
      if (orientation_sign(v[e.a], v[e.b], p) == 0) continue;
      tris.push_back(make_tri(e.a, e.b, pi));
    }
  }

  std::vector<Triangle> out;
  for (const auto& t : tris) {
    if (t.i >= s0 || t.j >= s0 || t.k >= s0) continue;
    Triangle tri{v[t.i], v[t.j], v[t.k]};
    if (orientation_sign(tri.a, tri.b, tri.c) == 0) continue;
    out.push_back(tri);
  }
  // Canonical vertex and triangle order for reproducible output.
  const auto pt_less = [](const Point2D& a, const Point2D& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  };
  for (auto& t : out) {
    Point2D vv[3] = {t.a, t.b, t.c};
    std::sort(vv, vv + 3, pt_less);
    t = {vv[0], vv[1], vv[2]};
  }
  std::sort(out.begin(), out.end(), [&](const Triangle& x, const Triangle& y) {
    if (!(x.a == y.a)) return pt_less(x.a, y.a);
    if (!(x.b == y.b)) return pt_less(x.b, y.b);
    return pt_less(x.c, y.c);
  });
  return out;
}

bool segments_intersect(const Segment& s1, const Segment& s2) {
  const int d1 = orientation_sign(s2.p, s2.q, s1.p);
  const int d2 = orientation_sign(s2.p, s2.q, s1.q);
  const int d3 = orientation_sign(s1.p, s1.q, s2.p);
  const int d4 = orientation_sign(s1.p, s1.q, s2.q);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(s1.p, s2.p, s2.q)) return true;
  if (d2 == 0 && on_segment(s1.q, s2.p, s2.q)) return true;
  if (d3 == 0 && on_segment(s2.p, s1.p, s1.q)) return true;
  if (d4 == 0 && on_segment(s2.q, s1.p, s1.q)) return true;
  return false;
}

std::vector<Polygon> buffer_polyline(const std::vector<Point2D>& polyline, double width) {
  if (polyline.size() < 2) throw ValidationError("buffer_polyline: need at least 2 points");
  if (width <= 0) throw ValidationError("buffer_polyline: width must be positive");
  bg::model::linestring<BPoint> line;
  for (const auto& p : polyline) bg::append(line, BPoint(p.x, p.y));
  bg::strategy::buffer::distance_symmetric<double> dist(width / 2.0);
  bg::strategy::buffer::join_miter join(4.0);
  bg::strategy::buffer::end_flat end;
  bg::strategy::buffer::point_square point;
  bg::strategy::buffer::side_straight side;
  BMulti out;
  bg::buffer(line, out, dist, side, join, end, point);
  return from_boost_outer(out);
}

BBox bbox_of(const Polygon& poly) {
  BBox b{poly.outer[0].x, poly.outer[0].y, poly.outer[0].x, poly.outer[0].y};
  for (const auto& p : poly.outer) {
    b.minx = std::min(b.minx, p.x);
    b.miny = std::min(b.miny, p.y);
    b.maxx = std::max(b.maxx, p.x);
    b.maxy = std::max(b.maxy, p.y);
  }
  return b;
}

bool segment_may_hit_bbox(const Segment& s, const BBox& box) {
  if (std::max(s.p.x, s.q.x) < box.minx || std::min(s.p.x, s.q.x) > box.maxx ||
      std::max(s.p.y, s.q.y) < box.miny || std::min(s.p.y, s.q.y) > box.maxy)
    return false;
  // All four corners strictly on one side of the segment's line => miss.
  const double dx = s.q.x - s.p.x, dy = s.q.y - s.p.y;
  const auto side = [&](double x, double y) { return dx * (y - s.p.y) - dy * (x - s.p.x); };
  const double c1 = side(box.minx, box.miny), c2 = side(box.maxx, box.miny);
  const double c3 = side(box.minx, box.maxy), c4 = side(box.maxx, box.maxy);
  if (c1 > 0 && c2 > 0 && c3 > 0 && c4 > 0) return false;
  if (c1 < 0 && c2 < 0 && c3 < 0 && c4 < 0) return false;
  return true;
}

bool segment_intersects_polygon(const Segment& s, const Polygon& poly) {
  const auto hits_ring = [&](const std::vector<Point2D>& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i)
      if (segments_intersect(s, {ring[i], ring[(i + 1) % n]})) return true;
    return false;
  };
  if (hits_ring(poly.outer)) return true;
  for (const auto& h : poly.holes)
    if (hits_ring(h)) return true;
  const auto strictly_inside = [&](const Point2D& p) {
    return point_in_polygon(p, poly) && distance_to_boundary(p, poly) > kEps;
  };
  return strictly_inside(s.p) || strictly_inside(s.q);
}

}  // namespace celltwin::geom
