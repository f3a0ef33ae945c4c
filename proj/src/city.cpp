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

#include "celltwin/city.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "celltwin/util.hpp"

namespace celltwin::city {

namespace {

/// Uniform bucket grid over polygon bounding boxes for point queries.
class BucketIndex {
 public:
  BucketIndex(double mx, double my, double cell)
      : cell_(cell),
        cols_(std::max(1, static_cast<int>(std::ceil(mx / cell)))),
        rows_(std::max(1, static_cast<int>(std::ceil(my / cell)))),
        cells_(static_cast<std::size_t>(cols_) * rows_) {}

  void insert(int id, const geom::BBox& box) {
    const int c0 = clamp_col(box.minx), c1 = clamp_col(box.maxx);
    const int r0 = clamp_row(box.miny), r1 = clamp_row(box.maxy);
    for (int r = r0; r <= r1; ++r)
      for (int c = c0; c <= c1; ++c) cells_[static_cast<std::size_t>(r) * cols_ + c].push_back(id);
  }

  const std::vector<int>& at(const geom::Point2D& p) const {
    static const std::vector<int> empty;
    const int c = static_cast<int>(std::floor(p.x / cell_));
    const int r = static_cast<int>(std::floor(p.y / cell_));
    if (c < 0 || c >= cols_ || r < 0 || r >= rows_) return empty;
    return cells_[static_cast<std::size_t>(r) * cols_ + c];
  }

 private:
  int clamp_col(double x) const {
    return std::clamp(static_cast<int>(std::floor(x / cell_)), 0, cols_ - 1);
  }
  int clamp_row(double y) const {
    return std::clamp(static_cast<int>(std::floor(y / cell_)), 0, rows_ - 1);
  }
  double cell_;
  int cols_, rows_;
  std::vector<std::vector<int>> cells_;
};

struct Extent {
  double minx = std::numeric_limits<double>::infinity();
  double miny = std::numeric_limits<double>::infinity();
  double maxx = -std::numeric_limits<double>::infinity();
  double maxy = -std::numeric_limits<double>::infinity();
  void grow(const geom::Polygon& poly) {
    for (const auto& p : poly.outer) {
      minx = std::min(minx, p.x);
      miny = std::min(miny, p.y);
      maxx = std::max(maxx, p.x);
      maxy = std::max(maxy, p.y);
    }
  }
};

void translate(geom::Polygon& poly, double dx, double dy) {
  for (auto& p : poly.outer) {
    p.x += dx;
    p.y += dy;
  }
  for (auto& h : poly.holes)
    for (auto& p : h) {
      p.x += dx;
      p.y += dy;
    }
}

}  // namespace

std::size_t CityMap::count_tiles(TileKind kind) const {
  std::size_t n = 0;
  for (const auto& t : tiles)
    if (t.kind == kind) ++n;
  return n;
}

const char* to_string(StationKind k) { return k == StationKind::LTE ? "LTE" : "NN"; }

CityMap build_city(const MapExtract& extract, const BuildConfig& cfg) {
  if (cfg.tile_size <= 0) throw ValidationError("build_city: tile_size must be positive");
  if (cfg.height_min <= 0 || cfg.height_max < cfg.height_min)
    throw ValidationError("build_city: empty or non-positive height range");
  if (extract.buildings.empty()) throw ValidationError("build_city: no buildings in extract");

  std::vector<geom::Polygon> parts;
  parts.reserve(extract.buildings.size());
  for (const auto& rb : extract.buildings) {
    geom::Polygon poly{rb.ring, {}};
    geom::normalize_orientation(poly);
    parts.push_back(std::move(poly));
  }
  std::vector<geom::Polygon> merged = geom::merge_with_gap_tolerance(parts, cfg.gap_eps);

  CityMap map;
  map.tile_size = cfg.tile_size;
  map.projector = extract.projector;

  std::vector<geom::Polygon> roads;
  for (const auto& rr : extract.roads)
    for (auto& strip : geom::buffer_polyline(rr.polyline, rr.width)) roads.push_back(std::move(strip));
  std::vector<geom::Polygon> parks;
  for (const auto& ra : extract.parks) {
    geom::Polygon poly{ra.ring, {}};
    geom::normalize_orientation(poly);
    geom::validate_polygon(poly, parks.size());
    parks.push_back(std::move(poly));
  }

  Extent ext;
  for (const auto& p : merged) ext.grow(p);
  for (const auto& p : roads) ext.grow(p);
  for (const auto& p : parks) ext.grow(p);
  const double dx = -ext.minx, dy = -ext.miny;
  for (auto& p : merged) translate(p, dx, dy);
  for (auto& p : roads) translate(p, dx, dy);
  for (auto& p : parks) translate(p, dx, dy);
  map.projector.x_offset += dx;
  map.projector.y_offset += dy;
  map.mx = ext.maxx - ext.minx;
  map.my = ext.maxy - ext.miny;
  map.roads = std::move(roads);
  map.open_areas = std::move(parks);

  // Merged footprint -> building, ids in (x, y) order of the centres.
  struct Pending {
    geom::Polygon footprint;
    geom::Point2D centre;
  };
  std::vector<Pending> pending;
  pending.reserve(merged.size());
  for (auto& fp : merged) {
    Pending p;
    p.centre = geom::representative_point(fp);
    p.footprint = std::move(fp);
    pending.push_back(std::move(p));
  }
  std::sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
    return a.centre.x != b.centre.x ? a.centre.x < b.centre.x : a.centre.y < b.centre.y;
  });

  // Attribute source parts to merged footprints for type/height resolution.
  struct PartInfo {
    double area;
    BuildingType kind;
    std::optional<double> height;
  };
  std::vector<std::vector<PartInfo>> part_groups(pending.size());
  for (std::size_t pi = 0; pi < parts.size(); ++pi) {
    geom::Polygon shifted = parts[pi];
    translate(shifted, dx, dy);
    const geom::Point2D rp = geom::representative_point(shifted);
    int owner = -1;
    for (std::size_t mi = 0; mi < pending.size(); ++mi) {
      if (geom::point_in_polygon(rp, pending[mi].footprint)) {
        owner = static_cast<int>(mi);
        break;
      }
    }
    if (owner < 0) {
      // Numerical fallback: nearest centre.
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t mi = 0; mi < pending.size(); ++mi) {
        const double d = geom::distance2d(rp, pending[mi].centre);
        if (d < best) {
          best = d;
          owner = static_cast<int>(mi);
        }
      }
    }
    part_groups[static_cast<std::size_t>(owner)].push_back(
        {geom::area(shifted), extract.buildings[pi].kind, extract.buildings[pi].height});
  }

  map.buildings.reserve(pending.size());
  for (std::size_t mi = 0; mi < pending.size(); ++mi) {
    Building b;
    b.id = static_cast<int>(mi);
    b.footprint = std::move(pending[mi].footprint);
    b.centre = pending[mi].centre;

    const auto& group = part_groups[mi];
    if (group.empty()) {
      b.kind = BuildingType::Residential;
    } else {
      std::map<BuildingType, double> type_area;
      for (const auto& part : group) type_area[part.kind] += part.area;
      double best_total = -1.0;
      for (const auto& [kind, total] : type_area) best_total = std::max(best_total, total);
      // Among types tied on total area the largest single part decides.
      double best_part = -1.0;
      b.kind = BuildingType::Residential;
      for (const auto& part : group) {
        if (type_area[part.kind] >= best_total - 1e-9 && part.area > best_part) {
          best_part = part.area;
          b.kind = part.kind;
        }
      }
    }
    // Explicit height of the largest tagged part wins over sampling.
    double tagged_area = -1.0;
    for (const auto& part : group) {
      if (part.height && part.area > tagged_area) {
        tagged_area = part.area;
        b.height = *part.height;
      }
    }
    if (tagged_area < 0.0) {
      rng::SubRng hr(rng::derive(cfg.seed, "building_height", static_cast<std::uint64_t>(b.id)));
      b.height = hr.uniform(cfg.height_min, cfg.height_max);
    }
    map.buildings.push_back(std::move(b));
  }

  // Tile tessellation with bucket-indexed membership tests. The 1e-6 slack
  // absorbs projection round-off so a 100 m map at 4 m tiles stays 25x25.
  map.cols = std::max(1, static_cast<int>(std::ceil(map.mx / map.tile_size - 1e-6)));
  map.rows = std::max(1, static_cast<int>(std::ceil(map.my / map.tile_size - 1e-6)));
  const double index_cell = std::max(map.tile_size * 4.0, 16.0);
  BucketIndex building_index(map.mx, map.my, index_cell);
  for (const auto& b : map.buildings)
    building_index.insert(b.id, geom::bbox_of(b.footprint));
  BucketIndex outdoor_index(map.mx, map.my, index_cell);
  std::vector<const geom::Polygon*> outdoor_polys;
  for (const auto& r : map.roads) {
    outdoor_index.insert(static_cast<int>(outdoor_polys.size()), geom::bbox_of(r));
    outdoor_polys.push_back(&r);
  }
  for (const auto& a : map.open_areas) {
    outdoor_index.insert(static_cast<int>(outdoor_polys.size()), geom::bbox_of(a));
    outdoor_polys.push_back(&a);
  }

  map.tiles.resize(static_cast<std::size_t>(map.rows) * map.cols);
  for (int r = 0; r < map.rows; ++r) {
    for (int c = 0; c < map.cols; ++c) {
      Tile& tile = map.tiles[map.flat_index(r, c)];
      tile.row = r;
      tile.col = c;
      tile.centre = {(c + 0.5) * map.tile_size, (r + 0.5) * map.tile_size};
      tile.kind = TileKind::Void;
      for (int id : building_index.at(tile.centre)) {
        if (geom::point_in_polygon(tile.centre, map.buildings[static_cast<std::size_t>(id)].footprint)) {
          tile.kind = TileKind::Indoor;
          tile.host_building = id;
          break;
        }
      }
      if (tile.kind == TileKind::Void) {
        for (int id : outdoor_index.at(tile.centre)) {
          if (geom::point_in_polygon(tile.centre, *outdoor_polys[static_cast<std::size_t>(id)])) {
            tile.kind = TileKind::Outdoor;
            break;
          }
        }
      }
    }
  }
  return map;
}

std::vector<StationRecord> load_base_stations(const std::string& csv_text,
                                              const LocalProjector& proj, bool local_coords) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("base station file: empty");
  const std::string header = trim(line);
  const std::string expected = local_coords ? "id,x,y,provider,kind" : "id,lat,lon,provider,kind";
  if (header != expected)
    throw ValidationError("base station file: expected header '" + expected + "', got '" + header +
                          "'");
  std::vector<StationRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = trim(line);
    if (row.empty()) continue;
    const auto fields = split(row, ',');
    if (fields.size() != 5)
      throw ValidationError("base station file line " + std::to_string(line_no) +
                            ": expected 5 columns");
    StationRecord rec;
    double a = 0, b = 0;
    try {
      rec.id = std::stoi(trim(fields[0]));
      a = std::stod(trim(fields[1]));
      b = std::stod(trim(fields[2]));
    } catch (const std::exception&) {
      throw ValidationError("base station file line " + std::to_string(line_no) +
                            ": non-numeric id or coordinates");
    }
    rec.provider = trim(fields[3]);
    const std::string kind = trim(fields[4]);
    if (kind != "LTE")
      throw ValidationError("base station file line " + std::to_string(line_no) + ": kind '" +
                            kind + "' rejected; the input inventory holds existing LTE only");
    rec.position = local_coords ? geom::Point2D{a, b} : project_to_local(a, b, proj);
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw ValidationError("base station file: no base stations");
  return records;
}

SnapResult snap_to_buildings(const std::vector<StationRecord>& records, const CityMap& map) {
  if (map.buildings.empty()) throw ValidationError("snap_to_buildings: map has no buildings");
  SnapResult result;
  std::vector<int> host_of(map.buildings.size(), -1);
  for (const auto& rec : records) {
    int best_id = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& b : map.buildings) {
      const double d = geom::distance2d(rec.position, b.centre);
      if (d < best_d) {  // strict: ties keep the lower building id
        best_d = d;
        best_id = b.id;
      }
    }
    if (host_of[static_cast<std::size_t>(best_id)] >= 0) {
      result.warnings.push_back("record " + std::to_string(rec.id) + " snaps to building " +
                                std::to_string(best_id) + " already hosting a station; dropped");
      continue;
    }
    BaseStation st;
    st.id = static_cast<int>(result.stations.size());
    st.kind = StationKind::LTE;
    st.host_building = best_id;
    st.position = map.buildings[static_cast<std::size_t>(best_id)].centre;
    st.antenna_height = map.buildings[static_cast<std::size_t>(best_id)].height;
    host_of[static_cast<std::size_t>(best_id)] = st.id;
    result.stations.push_back(st);
  }
  return result;
}

std::vector<int> candidate_nn_buildings(const CityMap& map,
                                        const std::vector<BaseStation>& stations) {
  std::vector<bool> hosting(map.buildings.size(), false);
  for (const auto& st : stations)
    if (st.host_building >= 0) hosting[static_cast<std::size_t>(st.host_building)] = true;
  std::vector<int> out;
  for (const auto& b : map.buildings)
    if (!hosting[static_cast<std::size_t>(b.id)]) out.push_back(b.id);
  return out;
}

radio::LinkState classify_los(const geom::Point2D& point, bool indoor, const BaseStation& bs,
                              const CityMap& map) {
  if (indoor) return radio::LinkState::NLOS;
  const geom::Segment ray{point, bs.position};
  for (const auto& b : map.buildings) {
    if (b.id == bs.host_building) continue;
    if (!geom::segment_may_hit_bbox(ray, geom::bbox_of(b.footprint))) continue;
    if (geom::segment_intersects_polygon(ray, b.footprint)) return radio::LinkState::NLOS;
  }
  return radio::LinkState::LOS;
}

}  // namespace celltwin::city
