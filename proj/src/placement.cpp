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

#include "celltwin/placement.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "celltwin/util.hpp"

namespace celltwin::placement {

std::vector<geom::Point2D> surviving_incentres(const std::vector<geom::Point2D>& stations,
                                               double d_p) {
  const std::vector<geom::Triangle> tris = geom::delaunay(stations);
  std::vector<geom::Point2D> out;
  for (const auto& tri : tris) {
    const geom::Point2D ic = geom::triangle_incentre(tri);
    double min_d = std::numeric_limits<double>::infinity();
    for (const auto& st : stations) min_d = std::min(min_d, geom::distance2d(ic, st));
    if (min_d > d_p) out.push_back(ic);
  }
  return out;
}

double region_mean_rss(const geom::Point2D& pos, int n, const city::CityMap& map,
                       const std::vector<double>& tile_best_rss) {
  if (n < 1) throw ValidationError("region_mean_rss: n must be >= 1");
  struct Entry {
    double d2;
    std::size_t idx;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < map.tiles.size(); ++i) {
    const city::Tile& t = map.tiles[i];
    if (t.kind != city::TileKind::Outdoor) continue;
    const double dx = t.centre.x - pos.x, dy = t.centre.y - pos.y;
    entries.push_back({dx * dx + dy * dy, i});
  }
  if (entries.empty()) throw ValidationError("region_mean_rss: map has no outdoor tiles");
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(n), entries.size());
  const auto closer = [](const Entry& a, const Entry& b) {
    return a.d2 != b.d2 ? a.d2 < b.d2 : a.idx < b.idx;
  };
  std::nth_element(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(take - 1),
                   entries.end(), closer);
  double sum = 0.0;
  for (std::size_t i = 0; i < take; ++i) sum += tile_best_rss[entries[i].idx];
  return sum / static_cast<double>(take);
}

PlacementResult place_nns(const city::CityMap& map, const std::vector<city::BaseStation>& lte,
                          const sim::RssEngine& engine, const PlacementConfig& cfg) {
  if (lte.size() < 3)
    throw ValidationError(
        "place_nns: need at least 3 deployed stations to triangulate; seed the "
        "deployment with more LTE stations");
  if (cfg.d_p <= 0) throw ValidationError("place_nns: d_p must be positive");
  if (cfg.max_total < static_cast<int>(lte.size()))
    throw ValidationError("place_nns: max_total below the deployed LTE count");

  PlacementResult result;
  result.final_stations = lte;

  sim::RssField field = sim::compute_rss_field(engine, lte, cfg.threads);

  std::vector<geom::Point2D> positions;
  positions.reserve(lte.size());
  for (const auto& st : lte) positions.push_back(st.position);

  std::set<int> candidates;
  for (int id : city::candidate_nn_buildings(map, lte)) candidates.insert(id);

  int iteration = 0;
  while (static_cast<int>(result.final_stations.size()) < cfg.max_total && !candidates.empty()) {
    ++iteration;
    const std::vector<geom::Point2D> ics = surviving_incentres(positions, cfg.d_p);
    if (ics.empty()) {
      if (geom::delaunay(positions).empty())
        result.warnings.push_back("placement stopped: degenerate station geometry");
      break;
    }

    // Each surviving in-centre maps to its nearest candidate building;
    // duplicates collapse before evaluation.
    std::set<int> chosen;
    for (const auto& ic : ics) {
      int best_id = -1;
      double best_d = std::numeric_limits<double>::infinity();
      for (const int id : candidates) {
        const double d = geom::distance2d(ic, map.buildings[static_cast<std::size_t>(id)].centre);
        if (d < best_d) {
          best_d = d;
          best_id = id;
        }
      }
      if (best_id >= 0) chosen.insert(best_id);
    }
    if (chosen.empty()) break;

    int pick = -1;
    double pick_mean = std::numeric_limits<double>::infinity();
    for (const int id : chosen) {  // ascending id: ties keep the lowest
      const double mean = region_mean_rss(map.buildings[static_cast<std::size_t>(id)].centre,
                                          cfg.n_tiles, map, field.tile_best);
      if (mean < pick_mean) {
        pick_mean = mean;
        pick = id;
      }
    }

    const city::Building& host = map.buildings[static_cast<std::size_t>(pick)];
    city::BaseStation nn;
    nn.id = static_cast<int>(result.final_stations.size());
    nn.kind = city::StationKind::NN;
    nn.position = host.centre;
    nn.antenna_height = host.height;
    nn.host_building = host.id;

    result.placed.push_back({iteration, host.id, host.centre, pick_mean});
    result.final_stations.push_back(nn);
    positions.push_back(nn.position);
    candidates.erase(pick);
    sim::add_station_to_field(field, engine, nn, cfg.threads);
  }
  return result;
}

}  // namespace celltwin::placement
