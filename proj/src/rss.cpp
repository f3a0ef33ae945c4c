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

#include "celltwin/rss.hpp"

#include "celltwin/util.hpp"

namespace celltwin::sim {

namespace {

// Entity keys for the frozen fading streams: tiles use their flat index,
// buildings their id shifted into a disjoint range.
std::uint64_t tile_key(std::size_t flat) { return static_cast<std::uint64_t>(flat); }
std::uint64_t building_key(int id) {
  return (1ULL << 40) + static_cast<std::uint64_t>(id);
}

}  // namespace

RssEngine::RssEngine(const city::CityMap& map, radio::RadioConfig lte_cfg,
                     radio::RadioConfig nn_cfg, double user_height, std::uint64_t seed,
                     bool with_shadow_fading)
    : map_(&map),
      lte_cfg_(std::move(lte_cfg)),
      nn_cfg_(std::move(nn_cfg)),
      user_height_(user_height),
      seed_(seed),
      with_shadow_fading_(with_shadow_fading) {
  radio::validate_config(lte_cfg_);
  radio::validate_config(nn_cfg_);
  lte_table_ = radio::build_mcs_table(lte_cfg_);
  nn_table_ = radio::build_mcs_table(nn_cfg_);
  building_bboxes_.reserve(map.buildings.size());
  for (const auto& b : map.buildings) building_bboxes_.push_back(geom::bbox_of(b.footprint));
}

double RssEngine::link_prx(const geom::Point2D& pos, bool indoor, std::uint64_t entity_key,
                           const city::BaseStation& st) const {
  radio::LinkState state = radio::LinkState::NLOS;
  if (!indoor) {
    state = radio::LinkState::LOS;
    const geom::Segment ray{pos, st.position};
    for (std::size_t bi = 0; bi < map_->buildings.size(); ++bi) {
      const auto& b = map_->buildings[bi];
      if (b.id == st.host_building) continue;
      if (!geom::segment_may_hit_bbox(ray, building_bboxes_[bi])) continue;
      if (geom::segment_intersects_polygon(ray, b.footprint)) {
        state = radio::LinkState::NLOS;
        break;
      }
    }
  }
  const double d = geom::distance3d(pos, user_height_, st.position, st.antenna_height);
  double sf = 0.0;
  if (with_shadow_fading_) {
    rng::SubRng sf_rng(rng::derive(seed_, "shadow_fading", entity_key,
                                   static_cast<std::uint64_t>(st.host_building)));
    sf = radio::draw_shadow_fading(state, sf_rng);
  }
  const radio::RadioConfig& cfg = config_for(st.kind);
  const double pl = radio::path_loss_db(std::max(d, 1e-3), cfg.fc_hz / 1e9, state,
                                        st.antenna_height, user_height_, sf);
  return radio::received_power_dbm(cfg, pl);
}

double RssEngine::tile_prx(std::size_t flat_tile, const city::BaseStation& st) const {
  const city::Tile& tile = map_->tiles[flat_tile];
  return link_prx(tile.centre, tile.kind == city::TileKind::Indoor, tile_key(flat_tile), st);
}

double RssEngine::building_prx(int building_id, const city::BaseStation& st) const {
  const city::Building& b = map_->buildings[static_cast<std::size_t>(building_id)];
  return link_prx(b.centre, /*indoor=*/true, building_key(building_id), st);
}

radio::LinkState RssEngine::tile_los(std::size_t flat_tile, const city::BaseStation& st) const {
  const city::Tile& tile = map_->tiles[flat_tile];
  return city::classify_los(tile.centre, tile.kind == city::TileKind::Indoor, st, *map_);
}

RssField compute_rss_field(const RssEngine& engine, const std::vector<city::BaseStation>& stations,
                           int threads) {
  const city::CityMap& map = engine.map();
  RssField field;
  field.tile_best.assign(map.tiles.size(), kUnservedPrx);
  field.tile_server.assign(map.tiles.size(), -1);
  field.tile_server_prx.assign(map.tiles.size(), kUnservedPrx);
  field.building_best.assign(map.buildings.size(), kUnservedPrx);
  field.building_server.assign(map.buildings.size(), -1);
  field.building_server_prx.assign(map.buildings.size(), kUnservedPrx);
  for (const auto& st : stations) add_station_to_field(field, engine, st, threads);
  return field;
}

void add_station_to_field(RssField& field, const RssEngine& engine, const city::BaseStation& st,
                          int threads) {
  const city::CityMap& map = engine.map();
  const double lowest = engine.table_for(st.kind).lowest_sensitivity_dbm();
  parallel_for(map.tiles.size(), threads, [&](std::size_t i) {
    if (map.tiles[i].kind == city::TileKind::Void) return;
    const double prx = engine.tile_prx(i, st);
    if (prx > field.tile_best[i]) field.tile_best[i] = prx;
    if (prx >= lowest && prx > field.tile_server_prx[i]) {
      field.tile_server_prx[i] = prx;
      field.tile_server[i] = st.id;
    }
  });
  parallel_for(map.buildings.size(), threads, [&](std::size_t i) {
    const double prx = engine.building_prx(static_cast<int>(i), st);
    if (prx > field.building_best[i]) field.building_best[i] = prx;
    if (prx >= lowest && prx > field.building_server_prx[i]) {
      field.building_server_prx[i] = prx;
      field.building_server[i] = st.id;
    }
  });
}

}  // namespace celltwin::sim
