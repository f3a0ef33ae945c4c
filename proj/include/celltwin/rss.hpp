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
#include <limits>
#include <vector>

#include "celltwin/city.hpp"
#include "celltwin/radio.hpp"

namespace celltwin::sim {

/// Link-level evaluator with shadow fading frozen per (entity, station
/// host building) under the scenario seed, so RSS values are identical
/// across placement iterations, timesteps and deployment variants.
class RssEngine {
 public:
  /// `with_shadow_fading` = false evaluates the deterministic link budget
  /// only (useful for debugging and exact-tie tests).
  RssEngine(const city::CityMap& map, radio::RadioConfig lte_cfg, radio::RadioConfig nn_cfg,
            double user_height, std::uint64_t seed, bool with_shadow_fading = true);

  /// Received power at a tile centre (user height above ground).
  double tile_prx(std::size_t flat_tile, const city::BaseStation& st) const;

  /// Received power at a building centre (indoor, always NLOS).
  double building_prx(int building_id, const city::BaseStation& st) const;

  radio::LinkState tile_los(std::size_t flat_tile, const city::BaseStation& st) const;

  const radio::McsTable& table_for(city::StationKind kind) const {
    return kind == city::StationKind::LTE ? lte_table_ : nn_table_;
  }
  const radio::RadioConfig& config_for(city::StationKind kind) const {
    return kind == city::StationKind::LTE ? lte_cfg_ : nn_cfg_;
  }
  const city::CityMap& map() const { return *map_; }
  double user_height() const { return user_height_; }
  std::uint64_t seed() const { return seed_; }

 private:
  double link_prx(const geom::Point2D& pos, bool indoor, std::uint64_t entity_key,
                  const city::BaseStation& st) const;

  const city::CityMap* map_;
  radio::RadioConfig lte_cfg_, nn_cfg_;
  radio::McsTable lte_table_, nn_table_;
  double user_height_;
  std::uint64_t seed_;
  bool with_shadow_fading_;
  std::vector<geom::BBox> building_bboxes_;
};

constexpr double kUnservedPrx = -std::numeric_limits<double>::infinity();

/// Best-server field over all non-void tiles and all buildings.
/// `best` holds the maximum received power over every station (the heatmap
/// value); `server` is the argmax restricted to stations whose power clears
/// their own lowest MCS sensitivity, -1 when none does.
struct RssField {
  std::vector<double> tile_best;        // per flat tile index; -inf for void
  std::vector<int> tile_server;         // station id or -1
  std::vector<double> tile_server_prx;  // power from the serving station
  std::vector<double> building_best;    // per building id
  std::vector<int> building_server;
  std::vector<double> building_server_prx;
};

RssField compute_rss_field(const RssEngine& engine, const std::vector<city::BaseStation>& stations,
                           int threads = 1);

/// Incrementally folds one more station into the field.
void add_station_to_field(RssField& field, const RssEngine& engine, const city::BaseStation& st,
                          int threads = 1);

}  // namespace celltwin::sim
