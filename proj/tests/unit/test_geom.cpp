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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "celltwin/geom.hpp"
#include "celltwin/util.hpp"

using namespace celltwin;
using geom::Point2D;
using geom::Polygon;
using geom::Segment;
using geom::Triangle;

namespace {

Polygon rect(double x0, double y0, double x1, double y1) {
  return Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}, {}};
}

// Independent empty-circumcircle check: every (triangle, point) pair tested
// against a circumcircle computed from scratch.
bool delaunay_property_holds(const std::vector<Point2D>& pts,
                             const std::vector<Triangle>& tris) {
  for (const auto& t : tris) {
    const double ax = t.a.x, ay = t.a.y, bx = t.b.x, by = t.b.y, cx = t.c.x, cy = t.c.y;
    const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    if (d == 0.0) return false;
    const double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    const double ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
    const double uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
    const double r = std::hypot(ax - ux, ay - uy);
    for (const auto& p : pts) {
      if (geom::distance2d(p, t.a) < 1e-12 || geom::distance2d(p, t.b) < 1e-12 ||
          geom::distance2d(p, t.c) < 1e-12)
        continue;
      const double dist = std::hypot(p.x - ux, p.y - uy);
      if (dist < r * (1.0 - 1e-9)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("polygon union merges adjacent squares into one rectangle") {
  const auto out = geom::polygon_union({rect(0, 0, 1, 1), rect(1, 0, 2, 1)});
  REQUIRE(out.size() == 1);
  CHECK(geom::area(out[0]) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(out[0].holes.empty());
}

TEST_CASE("polygon union removes courtyard holes") {
  // Four 1-wide slabs around an empty 1x1 courtyard.
  const std::vector<Polygon> ring = {rect(0, 0, 3, 1), rect(0, 2, 3, 3), rect(0, 1, 1, 2),
                                     rect(2, 1, 3, 2)};
  const auto out = geom::polygon_union(ring);
  REQUIRE(out.size() == 1);
  CHECK(out[0].holes.empty());
  CHECK(geom::area(out[0]) == doctest::Approx(9.0).epsilon(1e-12));  // courtyard included
}

TEST_CASE("polygon union keeps disjoint polygons separate") {
  const auto out = geom::polygon_union({rect(0, 0, 1, 1), rect(5, 5, 6, 6)});
  REQUIRE(out.size() == 2);
  CHECK(geom::area(out[0]) + geom::area(out[1]) == doctest::Approx(2.0));
}

TEST_CASE("polygon union rejects degenerate rings by index") {
  std::vector<Polygon> polys = {rect(0, 0, 1, 1), Polygon{{{0, 0}, {1, 0}}, {}}};
  CHECK_THROWS_WITH_AS(geom::polygon_union(polys), doctest::Contains("polygon 1"),
                       ValidationError);
}

TEST_CASE("union area is subadditive and idempotent") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Polygon> polys;
    double sum = 0.0;
    for (int i = 0; i < 6; ++i) {
      const double x = u(rng), y = u(rng);
      const double w = 1.0 + u(rng) / 10.0, h = 1.0 + u(rng) / 10.0;
      polys.push_back(rect(x, y, x + w, y + h));
      sum += w * h;
    }
    const auto merged = geom::polygon_union(polys);
    double merged_area = 0.0;
    for (const auto& p : merged) merged_area += geom::area(p);
    CHECK(merged_area <= sum + 1e-9);
    // Idempotence: the union of the result with itself is the result.
    std::vector<Polygon> doubled = merged;
    doubled.insert(doubled.end(), merged.begin(), merged.end());
    const auto again = geom::polygon_union(doubled);
    double again_area = 0.0;
    for (const auto& p : again) again_area += geom::area(p);
    CHECK(again_area == doctest::Approx(merged_area).epsilon(1e-9));
  }
}

TEST_CASE("gap-tolerant merge joins near-tangent blocks") {
  const auto merged =
      geom::merge_with_gap_tolerance({rect(0, 0, 1, 1), rect(1.1, 0, 2.1, 1)}, 0.25);
  REQUIRE(merged.size() == 1);
  CHECK(geom::area(merged[0]) == doctest::Approx(2.1).epsilon(1e-3));
  // Gap wider than the tolerance stays split.
  const auto apart = geom::merge_with_gap_tolerance({rect(0, 0, 1, 1), rect(2, 0, 3, 1)}, 0.25);
  CHECK(apart.size() == 2);
}

TEST_CASE("representative point of a unit square is its centre") {
  const Point2D c = geom::representative_point(rect(0, 0, 1, 1));
  CHECK(c.x == doctest::Approx(0.5));
  CHECK(c.y == doctest::Approx(0.5));
}

TEST_CASE("representative point of a triangle is the centroid") {
  const Polygon tri{{{0, 0}, {6, 0}, {0, 6}}, {}};
  const Point2D c = geom::representative_point(tri);
  CHECK(c.x == doctest::Approx(2.0));
  CHECK(c.y == doctest::Approx(2.0));
}

TEST_CASE("representative point falls back to an interior point for U-shapes") {
  // Horseshoe whose centroid lies in the notch, outside the polygon.
  const Polygon u{{{0, 0}, {10, 0}, {10, 10}, {8, 10}, {8, 2}, {2, 2}, {2, 10}, {0, 10}}, {}};
  const Point2D c = geom::representative_point(u);
  CHECK(geom::point_in_polygon(c, u));
  CHECK(geom::distance_to_boundary(c, u) > 0.1);
}

TEST_CASE("representative point rejects zero-area polygons") {
  const Polygon sliver{{{0, 0}, {1, 0}, {2, 0}}, {}};
  CHECK_THROWS_AS(geom::representative_point(sliver), ValidationError);
}

TEST_CASE("triangle incentre closed form") {
  const Point2D ic = geom::triangle_incentre({{0, 0}, {4, 0}, {0, 3}});
  CHECK(ic.x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ic.y == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("triangle incentre of an equilateral triangle is the centroid") {
  const Triangle t{{0, 0}, {2, 0}, {1, std::sqrt(3.0)}};
  const Point2D ic = geom::triangle_incentre(t);
  CHECK(ic.x == doctest::Approx(1.0));
  CHECK(ic.y == doctest::Approx(std::sqrt(3.0) / 3.0));
}

TEST_CASE("triangle incentre rejects degenerate triangles") {
  CHECK_THROWS_AS(geom::triangle_incentre({{0, 0}, {2, 0}, {1, 1e-12}}), ValidationError);
}

TEST_CASE("delaunay of a unit square gives two triangles") {
  const auto tris = geom::delaunay({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(tris.size() == 2);
}

TEST_CASE("delaunay of three points is that triangle") {
  const auto tris = geom::delaunay({{0, 0}, {4, 0}, {0, 3}});
  REQUIRE(tris.size() == 1);
}

TEST_CASE("delaunay degenerate inputs yield no triangulation") {
  CHECK(geom::delaunay({{0, 0}, {1, 1}}).empty());
  CHECK(geom::delaunay({{0, 0}, {1, 1}, {2, 2}, {3, 3}}).empty());
}

TEST_CASE("delaunay satisfies the empty-circumcircle property on random sets") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point2D> pts;
    for (int i = 0; i < 20; ++i) pts.push_back({u(rng), u(rng)});
    const auto tris = geom::delaunay(pts);
    CHECK(tris.size() >= 2);
    CHECK(delaunay_property_holds(pts, tris));
  }
}

TEST_CASE("delaunay output does not depend on input order") {
  std::vector<Point2D> pts;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int i = 0; i < 15; ++i) pts.push_back({u(rng), u(rng)});
  const auto a = geom::delaunay(pts);
  std::reverse(pts.begin(), pts.end());
  const auto b = geom::delaunay(pts);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].a == b[i].a);
    CHECK(a[i].b == b[i].b);
    CHECK(a[i].c == b[i].c);
  }
}

TEST_CASE("segment-polygon intersection cases") {
  const Polygon square = rect(0, 0, 2, 2);
  CHECK_FALSE(geom::segment_intersects_polygon({{-3, 1}, {-1, 1}}, square));
  CHECK(geom::segment_intersects_polygon({{-1, 1}, {3, 1}}, square));   // crosses two edges
  CHECK(geom::segment_intersects_polygon({{-1, -1}, {1, 1}}, square));  // endpoint inside
  CHECK(geom::segment_intersects_polygon({{-1, 1}, {1, 3}}, square));   // grazes vertex (0,2)
  CHECK_FALSE(geom::segment_intersects_polygon({{-1, 2}, {1, 4}}, square));  // passes above
}

TEST_CASE("segment-polygon intersection is symmetric in endpoints") {
  const Polygon square = rect(0, 0, 2, 2);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const Segment s{{u(rng), u(rng)}, {u(rng), u(rng)}};
    if (geom::distance2d(s.p, s.q) < 1e-9) continue;
    CHECK(geom::segment_intersects_polygon(s, square) ==
          geom::segment_intersects_polygon({s.q, s.p}, square));
  }
}

TEST_CASE("distance3d") {
  CHECK(geom::distance3d({0, 0}, 0, {3, 4}, 0) == doctest::Approx(5.0));
  CHECK(geom::distance3d({2, 2}, 0, {2, 2}, 5) == doctest::Approx(5.0));
  CHECK(geom::distance3d({0, 0}, 1.5, {100, 0}, 10) == doctest::Approx(100.36059983878135));
}

TEST_CASE("distance3d triangle inequality") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int i = 0; i < 100; ++i) {
    const Point2D a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    const double ha = u(rng), hb = u(rng), hc = u(rng);
    CHECK(geom::distance3d(a, ha, c, hc) <=
          geom::distance3d(a, ha, b, hb) + geom::distance3d(b, hb, c, hc) + 1e-9);
    CHECK(geom::distance3d(a, ha, a, hb) == doctest::Approx(std::abs(ha - hb)));
  }
}

TEST_CASE("point_in_polygon honours holes") {
  Polygon donut = rect(0, 0, 4, 4);
  donut.holes.push_back({{1, 1}, {1, 3}, {3, 3}, {3, 1}});  // CW hole
  CHECK(geom::point_in_polygon({0.5, 0.5}, donut));
  CHECK_FALSE(geom::point_in_polygon({2, 2}, donut));
  CHECK(geom::point_in_polygon({1, 2}, donut));  // hole boundary is polygon boundary
}
