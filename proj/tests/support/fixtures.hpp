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

#include <vector>

#include "celltwin/city.hpp"
#include "celltwin/config.hpp"

namespace celltwin::testing {

struct ToyBuilding {
  double x0, y0, x1, y1;
  city::BuildingType kind = city::BuildingType::Residential;
  double height = 10.0;
};

/// Hand-built city: rectangular buildings on an otherwise open map (one park
/// covering everything), tiles classified directly.
inline city::CityMap make_toy_map(double mx, double my, double tile_size,
                                  const std::vector<ToyBuilding>& specs) {
  city::CityMap map;
  map.mx = mx;
  map.my = my;
  map.tile_size = tile_size;
  map.open_areas.push_back(geom::Polygon{{{0, 0}, {mx, 0}, {mx, my}, {0, my}}, {}});
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const ToyBuilding& s = specs[i];
    city::Building b;
    b.id = static_cast<int>(i);
    b.footprint = geom::Polygon{{{s.x0, s.y0}, {s.x1, s.y0}, {s.x1, s.y1}, {s.x0, s.y1}}, {}};
    b.centre = {(s.x0 + s.x1) / 2.0, (s.y0 + s.y1) / 2.0};
    b.kind = s.kind;
    b.height = s.height;
    map.buildings.push_back(std::move(b));
  }
  map.cols = static_cast<int>(mx / tile_size);
  map.rows = static_cast<int>(my / tile_size);
  map.tiles.resize(static_cast<std::size_t>(map.rows) * map.cols);
  for (int r = 0; r < map.rows; ++r) {
    for (int c = 0; c < map.cols; ++c) {
      city::Tile& t = map.tiles[map.flat_index(r, c)];
      t.row = r;
      t.col = c;
      t.centre = {(c + 0.5) * tile_size, (r + 0.5) * tile_size};
      t.kind = city::TileKind::Outdoor;
      for (const auto& b : map.buildings) {
        if (geom::point_in_polygon(t.centre, b.footprint)) {
          t.kind = city::TileKind::Indoor;
          t.host_building = b.id;
          break;
        }
      }
    }
  }
  return map;
}

inline city::BaseStation lte_station(int id, const city::CityMap& map, int building_id) {
  city::BaseStation st;
  st.id = id;
  st.kind = city::StationKind::LTE;
  st.host_building = building_id;
  st.position = map.buildings[static_cast<std::size_t>(building_id)].centre;
  st.antenna_height = map.buildings[static_cast<std::size_t>(building_id)].height;
  return st;
}

}  // namespace celltwin::testing
