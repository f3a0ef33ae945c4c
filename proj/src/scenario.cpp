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

#include "celltwin/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "celltwin/util.hpp"

namespace celltwin::sim {

namespace {

const char* tech_name(city::StationKind k) { return k == city::StationKind::LTE ? "LTE" : "NN"; }

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string generic(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw RuntimeFailure("cannot open output file " + path);
  out << content;
}

void write_rss_field_csv(const std::string& path, const VariantResult& vr,
                         const city::CityMap& map) {
  std::ostringstream out;
  out << "tile_row,tile_col,best_prx_dbm,server_id,server_kind\n";
  for (std::size_t i = 0; i < map.tiles.size(); ++i) {
    const city::Tile& t = map.tiles[i];
    if (t.kind == city::TileKind::Void) continue;
    const int server = vr.field.tile_server[i];
    const char* kind = "none";
    if (server >= 0) kind = tech_name(vr.stations[static_cast<std::size_t>(server)].kind);
    out << t.row << "," << t.col << "," << fixed4(vr.field.tile_best[i]) << "," << server << ","
        << kind << "\n";
  }
  write_file(path, out.str());
}

}  // namespace

std::vector<CellLoad> cell_loads(const RssField& field, const traffic::TrafficSnapshot& snapshot,
                                 double beta, const std::vector<city::BaseStation>& stations,
                                 const RssEngine& engine) {
  std::vector<CellLoad> loads(stations.size());
  for (std::size_t s = 0; s < stations.size(); ++s) {
    loads[s].station_id = stations[s].id;
    loads[s].kind = stations[s].kind;
    loads[s].capacity = radio::max_concurrent_users(engine.config_for(stations[s].kind));
  }
  const auto add = [&](int server, double prx, int users) {
    if (server < 0 || users <= 0) return;
    CellLoad& load = loads[static_cast<std::size_t>(server)];
    const auto* mcs = radio::select_mcs(prx, engine.table_for(load.kind));
    if (mcs == nullptr) return;  // cannot happen for a serving station
    const double w = beta * users;
    load.active_users += w;
    load.weighted_rate_sum += w * mcs->datarate_bps;
  };
  const city::CityMap& map = engine.map();
  for (std::size_t i = 0; i < map.tiles.size(); ++i) {
    if (snapshot.road_users[i] <= 0) continue;
    add(field.tile_server[i], field.tile_server_prx[i], snapshot.road_users[i]);
  }
  for (std::size_t b = 0; b < map.buildings.size(); ++b) {
    if (snapshot.building_users[b] <= 0) continue;
    add(field.building_server[b], field.building_server_prx[b], snapshot.building_users[b]);
  }
  return loads;
}

double per_user_datarate(const CellLoad& load) {
  if (load.active_users <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  double rate = load.weighted_rate_sum / load.active_users;
  if (load.active_users > load.capacity) rate *= load.capacity / load.active_users;
  return rate;
}

SimulationReport run_scenario(const config::ScenarioConfig& cfg, const city::CityMap& map,
                              const std::vector<city::BaseStation>& lte, int threads) {
  config::validate(cfg);
  RssEngine engine(map, cfg.lte, cfg.nn, cfg.user_height, cfg.seed);

  traffic::TemporalModel temporal;
  temporal.max_users_per_tile = cfg.max_users_per_tile;
  traffic::align_to_4am(temporal);
  const traffic::SpatialField field = traffic::generate_field(cfg.field, map, cfg.seed, threads);

  // Snapshots depend only on the hour of day; one per distinct hour.
  std::vector<traffic::TrafficSnapshot> by_hour(24);
  std::vector<bool> have_hour(24, false);
  std::vector<int> step_hour(static_cast<std::size_t>(cfg.timesteps));
  for (int i = 0; i < cfg.timesteps; ++i) {
    const int hour = ((cfg.start_hour + i) % 24 + 24) % 24;
    step_hour[static_cast<std::size_t>(i)] = hour;
    if (!have_hour[static_cast<std::size_t>(hour)]) {
      by_hour[static_cast<std::size_t>(hour)] =
          traffic::make_snapshot(hour, temporal, field, map, cfg.occupancy, cfg.seed);
      have_hour[static_cast<std::size_t>(hour)] = true;
    }
  }

  SimulationReport report;
  for (const int nn_count : cfg.variants) {
    VariantResult vr;
    vr.nn_count = nn_count;
    if (nn_count > 0) {
      placement::PlacementConfig pcfg;
      pcfg.d_p = cfg.d_p;
      pcfg.n_tiles = cfg.n_tiles;
      pcfg.max_total = static_cast<int>(lte.size()) + nn_count;
      pcfg.threads = threads;
      vr.placement = placement::place_nns(map, lte, engine, pcfg);
      vr.stations = vr.placement.final_stations;
    } else {
      vr.stations = lte;
    }
    vr.field = compute_rss_field(engine, vr.stations, threads);

    vr.timesteps.resize(static_cast<std::size_t>(cfg.timesteps));
    parallel_for(static_cast<std::size_t>(cfg.timesteps), threads, [&](std::size_t i) {
      const int hour = step_hour[i];
      const auto loads = cell_loads(vr.field, by_hour[static_cast<std::size_t>(hour)], cfg.beta,
                                    vr.stations, engine);
      TimestepStats ts;
      ts.timestep = static_cast<int>(i);
      ts.hour = hour;
      double sum_lte = 0, sum_nn = 0, sum_all = 0;
      int n_lte = 0, n_nn = 0, n_all = 0;
      for (const auto& load : loads) {
        const double rate = per_user_datarate(load);
        if (std::isnan(rate)) continue;
        sum_all += rate;
        ++n_all;
        if (load.kind == city::StationKind::LTE) {
          sum_lte += rate;
          ++n_lte;
        } else {
          sum_nn += rate;
          ++n_nn;
        }
      }
      const double nan = std::numeric_limits<double>::quiet_NaN();
      ts.lte_mean_bps = n_lte ? sum_lte / n_lte : nan;
      ts.nn_mean_bps = n_nn ? sum_nn / n_nn : nan;
      ts.combined_mean_bps = n_all ? sum_all / n_all : nan;
      vr.timesteps[i] = ts;
    });

    double total = 0;
    int n_steps = 0;
    for (const auto& ts : vr.timesteps) {
      if (!std::isnan(ts.combined_mean_bps)) {
        total += ts.combined_mean_bps;
        ++n_steps;
      }
    }
    vr.overall_mean_bps = n_steps ? total / n_steps : std::numeric_limits<double>::quiet_NaN();

    vr.rss_samples.reserve(map.tiles.size());
    for (std::size_t i = 0; i < map.tiles.size(); ++i)
      if (map.tiles[i].kind != city::TileKind::Void) vr.rss_samples.push_back(vr.field.tile_best[i]);

    report.variants.push_back(std::move(vr));
  }

  // KS tests of every variant against the smallest-NN-count baseline.
  std::size_t base = 0;
  for (std::size_t i = 1; i < report.variants.size(); ++i)
    if (report.variants[i].nn_count < report.variants[base].nn_count) base = i;
  for (std::size_t i = 0; i < report.variants.size(); ++i) {
    if (i == base) continue;
    const KsTest ks = ks_two_sample(report.variants[base].rss_samples,
                                    report.variants[i].rss_samples);
    report.ks_rows.push_back({report.variants[base].nn_count, report.variants[i].nn_count, ks.d,
                              ks.p});
  }
  return report;
}

void write_report_csvs(const SimulationReport& report, const city::CityMap& map,
                       const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const auto path = [&](const std::string& name) { return (fs::path(out_dir) / name).string(); };

  std::size_t base = 0;
  for (std::size_t i = 1; i < report.variants.size(); ++i)
    if (report.variants[i].nn_count < report.variants[base].nn_count) base = i;

  for (std::size_t i = 0; i < report.variants.size(); ++i) {
    const VariantResult& vr = report.variants[i];
    write_rss_field_csv(path("rss_field_" + std::to_string(vr.nn_count) + ".csv"), vr, map);
    if (i == base) write_rss_field_csv(path("rss_field.csv"), vr, map);

    std::ostringstream cdf;
    cdf << "rss_dbm\n";
    std::vector<double> sorted = vr.rss_samples;
    std::sort(sorted.begin(), sorted.end());
    for (const double v : sorted) cdf << fixed4(v) << "\n";
    write_file(path("cdf_" + std::to_string(vr.nn_count) + ".csv"), cdf.str());
  }

  std::ostringstream rates;
  rates << "timestep,variant,tech,mean_mbps\n";
  for (const auto& vr : report.variants) {
    for (const auto& ts : vr.timesteps) {
      const auto row = [&](const char* tech, double bps) {
        if (std::isnan(bps)) return;
        rates << ts.timestep << "," << vr.nn_count << "," << tech << "," << fixed4(bps / 1e6)
              << "\n";
      };
      row("LTE", ts.lte_mean_bps);
      row("NN", ts.nn_mean_bps);
      row("combined", ts.combined_mean_bps);
    }
  }
  write_file(path("datarate_timeseries.csv"), rates.str());

  std::ostringstream ks;
  ks << "variant_a,variant_b,D,p\n";
  for (const auto& row : report.ks_rows)
    ks << row.variant_a << "," << row.variant_b << "," << generic(row.d) << "," << generic(row.p)
       << "\n";
  write_file(path("ks_tests.csv"), ks.str());
}

std::string summarize(const SimulationReport& report) {
  std::ostringstream out;
  std::size_t base = 0;
  for (std::size_t i = 1; i < report.variants.size(); ++i)
    if (report.variants[i].nn_count < report.variants[base].nn_count) base = i;
  out << "variant  mean_datarate_mbps  rss_median_dbm  ks_p_vs_" << report.variants[base].nn_count
      << "\n";
  for (std::size_t i = 0; i < report.variants.size(); ++i) {
    const VariantResult& vr = report.variants[i];
    out << vr.nn_count << "  " << fixed4(vr.overall_mean_bps / 1e6) << "  "
        << fixed4(median(vr.rss_samples)) << "  ";
    if (i == base) {
      out << "-";
    } else {
      for (const auto& row : report.ks_rows)
        if (row.variant_b == vr.nn_count) out << generic(row.p);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace celltwin::sim
