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

#include "celltwin/util.hpp"

namespace celltwin::radio {

enum class LinkState { LOS, NLOS };

/// Radio parameters of one station class (macro LTE or nomadic node).
struct RadioConfig {
  double ptx_dbm = 35.0;
  double gtx_dbi = 15.0;
  double grx_dbi = 0.0;
  double fc_hz = 1850e6;
  double band_min_hz = 1805e6;
  double band_max_hz = 1880e6;
  double bw_hz = 15e6;
  double beamwidth_deg = 120.0;
  double overhead = 0.25;                   // control/signalling fraction, [0,1)
  int antenna_streams = 1;                  // 1 = SISO
  int prb_available = 75;                   // must match bw_hz (see prb_for_bandwidth)
  std::vector<double> mcs_thresholds_dbm =  // per-MCS sensitivity, QPSK..256-QAM
      {-92.2, -81.2, -75.2, -70.2};
};

struct McsEntry {
  std::string name;
  int bits_per_symbol = 0;
  double coding_rate = 0.0;  // carried as metadata; not part of the rate formula
  double sensitivity_dbm = 0.0;
  double datarate_bps = 0.0;
};

struct McsTable {
  std::vector<McsEntry> entries;  // ascending sensitivity and rate
  double lowest_sensitivity_dbm() const { return entries.front().sensitivity_dbm; }
  double max_rate_bps() const { return entries.back().datarate_bps; }
};

/// Resource blocks per channel bandwidth (1.4/3/5/10/15/20 MHz).
int prb_for_bandwidth(double bw_hz);

/// Throws ValidationError when the config violates its invariants.
void validate_config(const RadioConfig& cfg);

/// d_BP = h_B * h_u * fc / c, with fc in Hz and c = 3e8 m/s.
double breakpoint_distance(double h_b, double h_u, double fc_hz);

/// Urban-macro path loss in dB. `fc_ghz` feeds the log terms; the breakpoint
/// term inside the LOS branch uses the same carrier converted to Hz.
double path_loss_db(double d, double fc_ghz, LinkState state, double h_b, double h_u,
                    double sf_db);

/// Zero-mean Gaussian shadow fading in dB: sigma 4 (LOS) / 7.8 (NLOS).
double draw_shadow_fading(LinkState state, rng::SubRng& rng);

/// P_rx = P_tx + G_tx + G_rx - PL.
double received_power_dbm(const RadioConfig& cfg, double pl_db);

/// PHY datarates per MCS from PRB symbol math, with the per-MCS sensitivity
/// thresholds attached one-to-one. Thresholds must be strictly increasing.
McsTable build_mcs_table(const RadioConfig& cfg, const std::vector<double>& thresholds_dbm);

inline McsTable build_mcs_table(const RadioConfig& cfg) {
  return build_mcs_table(cfg, cfg.mcs_thresholds_dbm);
}

/// Highest-rate entry whose sensitivity is at or below prx; nullptr when prx
/// is below the lowest threshold.
const McsEntry* select_mcs(double prx_dbm, const McsTable& table);

/// u_RAT = sectors * floor(band_width / channel_bandwidth).
int max_concurrent_users(const RadioConfig& cfg);

}  // namespace celltwin::radio
