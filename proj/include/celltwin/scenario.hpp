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

#include <string>
#include <vector>

#include "celltwin/config.hpp"
#include "celltwin/placement.hpp"
#include "celltwin/rss.hpp"
#include "celltwin/stats.hpp"
#include "celltwin/traffic.hpp"

namespace celltwin::sim {

/// Expected active-user load of one station at one timestep, with the
/// user-weighted MCS rate sum needed for the TDMA mean.
struct CellLoad {
  int station_id = -1;
  city::StationKind kind = city::StationKind::LTE;
  double active_users = 0.0;       // u_BS = sum of beta * entity users
  int capacity = 0;                // u_RAT
  double weighted_rate_sum = 0.0;  // sum over served users of their MCS rate
};

std::vector<CellLoad> cell_loads(const RssField& field, const traffic::TrafficSnapshot& snapshot,
                                 double beta, const std::vector<city::BaseStation>& stations,
                                 const RssEngine& engine);

/// Mean per-user datarate of a station: the user-mean MCS rate, scaled by
/// u_RAT/u_BS once the station is over capacity. NaN when no users are
/// served (no-load stations are excluded from aggregates).
double per_user_datarate(const CellLoad& load);

struct TimestepStats {
  int timestep = 0;
  int hour = 0;
  // Unweighted means of per-station datarates over loaded stations of each
  // kind; NaN when no station of the kind carries load.
  double lte_mean_bps = 0.0;
  double nn_mean_bps = 0.0;
  double combined_mean_bps = 0.0;
};

struct VariantResult {
  int nn_count = 0;
  std::vector<city::BaseStation> stations;
  placement::PlacementResult placement;
  RssField field;
  std::vector<TimestepStats> timesteps;
  double overall_mean_bps = 0.0;       // mean of combined over timesteps
  std::vector<double> rss_samples;     // best RSS of non-void tiles, tile order
};

struct KsRow {
  int variant_a = 0;
  int variant_b = 0;
  double d = 0.0;
  double p = 1.0;
};

struct SimulationReport {
  std::vector<VariantResult> variants;
  std::vector<KsRow> ks_rows;  // baseline variant vs. each other variant
};

SimulationReport run_scenario(const config::ScenarioConfig& cfg, const city::CityMap& map,
                              const std::vector<city::BaseStation>& lte, int threads = 1);

/// Writes rss_field[_k].csv, datarate_timeseries.csv, cdf_<k>.csv and
/// ks_tests.csv under out_dir.
void write_report_csvs(const SimulationReport& report, const city::CityMap& map,
                       const std::string& out_dir);

/// Human-readable per-variant summary (mean datarate, median RSS, KS p).
std::string summarize(const SimulationReport& report);

}  // namespace celltwin::sim
