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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "celltwin/artifact.hpp"
#include "celltwin/config.hpp"
#include "celltwin/placement.hpp"
#include "celltwin/scenario.hpp"
#include "celltwin/util.hpp"

namespace {

using namespace celltwin;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open input file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeFailure("cannot open output file " + path);
  out << content;
}

struct GlobalOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  int threads = 0;  // 0: all cores
  bool local_coords = false;

  config::ScenarioConfig load() const {
    config::ScenarioConfig cfg = config_path.empty()
                                     ? config::default_config()
                                     : config::parse_scenario_file(read_file(config_path));
    if (seed) cfg.seed = *seed;
    if (local_coords) cfg.local_coords = true;
    return cfg;
  }
  int worker_threads() const { return threads > 0 ? threads : default_threads(); }
};

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

int cmd_build_city(const GlobalOpts& global, const std::string& map_path,
                   const std::string& stations_path, const std::string& out_path) {
  const config::ScenarioConfig cfg = global.load();
  const city::MapExtract extract = city::parse_map_extract(read_file(map_path));
  const city::CityMap map = city::build_city(extract, cfg.build_config());
  const auto records =
      city::load_base_stations(read_file(stations_path), map.projector, cfg.local_coords);
  const city::SnapResult snapped = city::snap_to_buildings(records, map);
  for (const auto& w : snapped.warnings) std::cerr << "warning: " << w << "\n";

  artifact::save_city({map, snapped.stations}, out_path);

  const auto candidates = city::candidate_nn_buildings(map, snapped.stations);
  std::cout << "buildings: " << map.buildings.size() << "\n"
            << "tiles indoor: " << map.count_tiles(city::TileKind::Indoor) << "\n"
            << "tiles outdoor: " << map.count_tiles(city::TileKind::Outdoor) << "\n"
            << "tiles void: " << map.count_tiles(city::TileKind::Void) << "\n"
            << "lte stations: " << snapped.stations.size() << "\n"
            << "nn candidate positions: " << candidates.size() << "\n"
            << "artifact: " << out_path << "\n";
  return 0;
}

int cmd_place(const GlobalOpts& global, const std::string& city_path, int nn_count,
              const std::string& out_placement, const std::string& out_inventory) {
  const config::ScenarioConfig cfg = global.load();
  const artifact::CityArtifact art = artifact::load_city(city_path);

  placement::PlacementResult result;
  if (nn_count > 0) {
    sim::RssEngine engine(art.map, cfg.lte, cfg.nn, cfg.user_height, cfg.seed);
    placement::PlacementConfig pcfg;
    pcfg.d_p = cfg.d_p;
    pcfg.n_tiles = cfg.n_tiles;
    pcfg.max_total = static_cast<int>(art.stations.size()) + nn_count;
    pcfg.threads = global.worker_threads();
    result = placement::place_nns(art.map, art.stations, engine, pcfg);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    if (static_cast<int>(result.placed.size()) < nn_count)
      std::cerr << "warning: placed " << result.placed.size() << " of " << nn_count
                << " requested nomadic nodes (candidates or regions exhausted)\n";
  } else {
    result.final_stations = art.stations;
  }

  std::ostringstream pcsv;
  pcsv << "iteration,building_id,x,y,mean_rss_before\n";
  for (const auto& step : result.placed)
    pcsv << step.iteration << "," << step.building_id << "," << fixed4(step.position.x) << ","
         << fixed4(step.position.y) << "," << fixed4(step.mean_rss_before) << "\n";
  write_file(out_placement, pcsv.str());

  std::ostringstream inv;
  inv << "id,x,y,provider,kind\n";
  for (const auto& st : result.final_stations)
    inv << st.id << "," << fixed4(st.position.x) << "," << fixed4(st.position.y) << ","
        << (st.kind == city::StationKind::LTE ? "inventory" : "placed") << ","
        << city::to_string(st.kind) << "\n";
  write_file(out_inventory, inv.str());

  std::cout << "placed " << result.placed.size() << " nomadic nodes\n"
            << "placement: " << out_placement << "\n"
            << "inventory: " << out_inventory << "\n";
  return 0;
}

int cmd_run(const GlobalOpts& global, const std::string& city_path, const std::string& variants,
            const std::string& out_dir) {
  config::ScenarioConfig cfg = global.load();
  if (!variants.empty()) {
    cfg.variants.clear();
    for (const auto& part : split(variants, ','))
      cfg.variants.push_back(std::stoi(trim(part)));
  }
  const artifact::CityArtifact art = artifact::load_city(city_path);
  const sim::SimulationReport report =
      sim::run_scenario(cfg, art.map, art.stations, global.worker_threads());
  sim::write_report_csvs(report, art.map, out_dir);
  std::cout << sim::summarize(report);
  return 0;
}

int cmd_export_traffic(const GlobalOpts& global, const std::string& city_path,
                       const std::string& out_dir) {
  const config::ScenarioConfig cfg = global.load();
  const artifact::CityArtifact art = artifact::load_city(city_path);

  traffic::TemporalModel temporal;
  temporal.max_users_per_tile = cfg.max_users_per_tile;
  traffic::align_to_4am(temporal);
  const traffic::SpatialField field =
      traffic::generate_field(cfg.field, art.map, cfg.seed, global.worker_threads());

  std::filesystem::create_directories(out_dir);
  std::ostringstream roads, buildings;
  roads << "t,tile_row,tile_col,users\n";
  buildings << "t,building_id,users\n";
  for (int i = 0; i < cfg.timesteps; ++i) {
    const int hour = ((cfg.start_hour + i) % 24 + 24) % 24;
    const traffic::TrafficSnapshot snap =
        traffic::make_snapshot(hour, temporal, field, art.map, cfg.occupancy, cfg.seed);
    for (const auto& tile : art.map.tiles) {
      const int users = snap.road_users[art.map.flat_index(tile.row, tile.col)];
      if (users > 0) roads << i << "," << tile.row << "," << tile.col << "," << users << "\n";
    }
    for (std::size_t b = 0; b < snap.building_users.size(); ++b)
      buildings << i << "," << b << "," << snap.building_users[b] << "\n";
  }
  const auto out = [&](const std::string& name) {
    return (std::filesystem::path(out_dir) / name).string();
  };
  write_file(out("traffic_road.csv"), roads.str());
  write_file(out("traffic_buildings.csv"), buildings.str());
  std::cout << "traffic snapshots written to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Urban cellular coverage twin: map ingestion, nomadic-node placement and "
               "datarate evaluation"};
  app.require_subcommand(1);

  GlobalOpts global;
  app.add_option("--config", global.config_path, "Scenario configuration file");
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "Override the scenario seed");
  app.add_option("--threads", global.threads, "Worker threads (default: all cores)");
  app.add_flag("--local-coords", global.local_coords,
               "Station CSV carries local x,y instead of lat,lon");

  auto* build = app.add_subcommand("build-city", "Parse map and stations into a city artifact");
  std::string map_path, stations_path, out_path = "city.json";
  build->add_option("--map", map_path, "Map extract (OSM-style XML)")->required();
  build->add_option("--stations", stations_path, "Base station inventory CSV")->required();
  build->add_option("--out", out_path, "Output artifact path");

  auto* place = app.add_subcommand("place", "Greedy nomadic-node placement");
  std::string city_path, out_placement = "placement.csv", out_inventory = "inventory.csv";
  int nn_count = 0;
  place->add_option("--city", city_path, "City artifact")->required();
  place->add_option("--nn-count", nn_count, "Nomadic nodes to place")->required();
  place->add_option("--out-placement", out_placement, "Placement CSV path");
  place->add_option("--out-inventory", out_inventory, "Updated inventory CSV path");

  auto* run = app.add_subcommand("run", "Run the scenario and export reports");
  std::string run_city, run_variants, run_out = "report";
  run->add_option("--city", run_city, "City artifact")->required();
  run->add_option("--variants", run_variants, "Comma-separated NN counts (default from config)");
  run->add_option("--out-dir", run_out, "Report output directory");

  auto* exp = app.add_subcommand("export-traffic", "Dump traffic snapshots as CSV");
  std::string exp_city, exp_out = "traffic";
  exp->add_option("--city", exp_city, "City artifact")->required();
  exp->add_option("--out-dir", exp_out, "Output directory");

  CLI11_PARSE(app, argc, argv);
  if (*seed_opt) global.seed = seed_value;

  try {
    if (build->parsed()) return cmd_build_city(global, map_path, stations_path, out_path);
    if (place->parsed()) return cmd_place(global, city_path, nn_count, out_placement, out_inventory);
    if (run->parsed()) return cmd_run(global, run_city, run_variants, run_out);
    if (exp->parsed()) return cmd_export_traffic(global, exp_city, exp_out);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
