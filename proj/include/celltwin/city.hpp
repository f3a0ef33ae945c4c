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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "celltwin/geom.hpp"
#include "celltwin/radio.hpp"

namespace celltwin::city {

enum class BuildingType { Hotel, School, Residential, Office, SmallBusiness, Hospital, Mall };

const char* to_string(BuildingType t);
std::optional<BuildingType> building_type_from_string(const std::string& s);

struct Building {
  int id = -1;
  geom::Polygon footprint;
  double height = 0.0;  // h_B, metres
  BuildingType kind = BuildingType::Residential;
  geom::Point2D centre;  // interior representative point
};

enum class TileKind { Indoor, Outdoor, Void };

struct Tile {
  int row = 0, col = 0;
  geom::Point2D centre;
  TileKind kind = TileKind::Void;
  int host_building = -1;  // Indoor tiles only
};

/// Equirectangular projection about a fixed geographic origin, with a
/// translation that places the projected extract in [0,Mx]x[0,My].
struct LocalProjector {
  double lat0_deg = 0.0;
  double lon0_deg = 0.0;
  double x_offset = 0.0;
  double y_offset = 0.0;

  geom::Point2D to_local(double lat_deg, double lon_deg) const;
};

geom::Point2D project_to_local(double lat_deg, double lon_deg, const LocalProjector& proj);

struct CityMap {
  double mx = 0.0, my = 0.0;
  double tile_size = 4.0;
  std::vector<Building> buildings;
  std::vector<geom::Polygon> roads;
  std::vector<geom::Polygon> open_areas;
  int rows = 0, cols = 0;
  std::vector<Tile> tiles;  // row-major
  LocalProjector projector;

  std::size_t flat_index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols) +
           static_cast<std::size_t>(col);
  }
  const Tile& tile_at(int row, int col) const { return tiles[flat_index(row, col)]; }
  std::size_t count_tiles(TileKind kind) const;
};

// ---- raw map extract -------------------------------------------------------

struct RawBuilding {
  std::int64_t way_id = 0;
  std::vector<geom::Point2D> ring;  // open ring, local coordinates
  BuildingType kind = BuildingType::Residential;
  std::optional<double> height;
};

struct RawRoad {
  std::int64_t way_id = 0;
  std::vector<geom::Point2D> polyline;
  double width = 7.0;  // metres, from width/lanes tags
};

struct RawArea {
  std::int64_t way_id = 0;
  std::vector<geom::Point2D> ring;
};

struct MapExtract {
  std::vector<RawBuilding> buildings;
  std::vector<RawRoad> roads;
  std::vector<RawArea> parks;
  LocalProjector projector;
};

/// Parses the documented OSM-style XML subset (node/way elements; ways tagged
/// building=*, highway=*, leisure=park) and projects to local coordinates.
MapExtract parse_map_extract(const std::string& xml_text);

struct BuildConfig {
  double tile_size = 4.0;
  double height_min = 5.0;   // h_B sample range, metres
  double height_max = 15.0;
  double gap_eps = 0.25;     // building merge gap tolerance, metres
  std::uint64_t seed = 1;
};

CityMap build_city(const MapExtract& extract, const BuildConfig& cfg);

// ---- base stations ---------------------------------------------------------

enum class StationKind { LTE, NN };

const char* to_string(StationKind k);

struct StationRecord {
  int id = 0;
  geom::Point2D position;  // local metres
  std::string provider;
};

/// Parses the inventory CSV (`id,lat,lon,provider,kind` or, with
/// local_coords, `id,x,y,provider,kind`). Input stations must be LTE; NN
/// rows are rejected (nomadic nodes come from placement).
std::vector<StationRecord> load_base_stations(const std::string& csv_text,
                                              const LocalProjector& proj, bool local_coords);

struct BaseStation {
  int id = -1;
  StationKind kind = StationKind::LTE;
  geom::Point2D position;       // host building centre
  double antenna_height = 0.0;  // host building h_B
  int host_building = -1;
};

struct SnapResult {
  std::vector<BaseStation> stations;
  std::vector<std::string> warnings;
};

/// Snaps each record to the nearest building centre (ties to the lower
/// building id); duplicate snaps keep the first record and add a warning.
SnapResult snap_to_buildings(const std::vector<StationRecord>& records, const CityMap& map);

/// Centres of all buildings that do not host an LTE station, by building id.
std::vector<int> candidate_nn_buildings(const CityMap& map,
                                        const std::vector<BaseStation>& stations);

/// Indoor points are always NLOS; outdoor points are NLOS iff the 2D segment
/// to the station crosses any building footprint other than the station's
/// host building.
radio::LinkState classify_los(const geom::Point2D& point, bool indoor, const BaseStation& bs,
                              const CityMap& map);

}  // namespace celltwin::city
