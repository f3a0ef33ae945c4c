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

#include "celltwin/radio.hpp"

#include <cmath>

namespace celltwin::radio {

namespace {

constexpr double kSpeedOfLight = 3e8;  // m/s
constexpr double kSigmaLos = 4.0;      // dB
constexpr double kSigmaNlos = 7.8;     // dB
constexpr int kSymbolsPerPrb = 12 * 7;

struct McsShape {
  const char* name;
  int bits_per_symbol;
  double coding_rate;
};
constexpr McsShape kMcsShapes[] = {
    {"QPSK", 2, 0.4385},
    {"16-QAM", 4, 0.6016},
    {"64-QAM", 6, 0.8525},
    {"256-QAM", 8, 0.9258},
};

}  // namespace

int prb_for_bandwidth(double bw_hz) {
  const double bw_mhz = bw_hz / 1e6;
  const struct {
    double mhz;
    int prb;
  } table[] = {{1.4, 6}, {3, 15}, {5, 25}, {10, 50}, {15, 75}, {20, 100}};
  for (const auto& row : table)
    if (std::abs(bw_mhz - row.mhz) < 1e-6) return row.prb;
  throw ValidationError("no PRB allocation defined for bandwidth " + std::to_string(bw_mhz) +
                        " MHz");
}

void validate_config(const RadioConfig& cfg) {
  if (!(cfg.band_min_hz < cfg.band_max_hz))
    throw ValidationError("radio config: band must satisfy f_min < f_max");
  if (cfg.bw_hz > cfg.band_max_hz - cfg.band_min_hz)
    throw ValidationError("radio config: channel bandwidth exceeds band width");
  if (cfg.beamwidth_deg <= 0 ||
      std::abs(std::round(360.0 / cfg.beamwidth_deg) * cfg.beamwidth_deg - 360.0) > 1e-9)
    throw ValidationError("radio config: beamwidth must divide 360 degrees");
  if (cfg.overhead < 0.0 || cfg.overhead >= 1.0)
    throw ValidationError("radio config: overhead must lie in [0,1)");
  if (cfg.antenna_streams < 1)
    throw ValidationError("radio config: antenna_streams must be positive");
  if (cfg.prb_available != prb_for_bandwidth(cfg.bw_hz))
    throw ValidationError("radio config: prb_available inconsistent with bandwidth");
  if (cfg.mcs_thresholds_dbm.size() != std::size(kMcsShapes))
    throw ValidationError("radio config: expected one sensitivity threshold per MCS");
}

double breakpoint_distance(double h_b, double h_u, double fc_hz) {
  return h_b * h_u * fc_hz / kSpeedOfLight;
}

double path_loss_db(double d, double fc_ghz, LinkState state, double h_b, double h_u,
                    double sf_db) {
  if (d <= 0.0) throw ValidationError("path_loss: distance must be positive");
  if (state == LinkState::LOS) {
    const double d_bp = breakpoint_distance(h_b, h_u, fc_ghz * 1e9);
    const double dh = h_b - h_u;
    return 28.0 + 40.0 * std::log10(d) + 20.0 * std::log10(fc_ghz) -
           9.0 * std::log10(d_bp * d_bp + dh * dh) + sf_db;
  }
  return 13.54 + 39.08 * std::log10(d) + 20.0 * std::log10(fc_ghz) - 0.6 * (h_u - 1.5) + sf_db;
}

double draw_shadow_fading(LinkState state, rng::SubRng& rng) {
  return rng.normal(0.0, state == LinkState::LOS ? kSigmaLos : kSigmaNlos);
}

double received_power_dbm(const RadioConfig& cfg, double pl_db) {
  return cfg.ptx_dbm + cfg.gtx_dbi + cfg.grx_dbi - pl_db;
}

McsTable build_mcs_table(const RadioConfig& cfg, const std::vector<double>& thresholds_dbm) {
  if (thresholds_dbm.size() != std::size(kMcsShapes))
    throw ValidationError("build_mcs_table: expected " + std::to_string(std::size(kMcsShapes)) +
                          " thresholds");
  for (std::size_t i = 1; i < thresholds_dbm.size(); ++i)
    if (!(thresholds_dbm[i] > thresholds_dbm[i - 1]))
      throw ValidationError("build_mcs_table: thresholds must be strictly increasing");
  const int symbols_per_channel = cfg.prb_available * kSymbolsPerPrb;
  McsTable table;
  for (std::size_t i = 0; i < std::size(kMcsShapes); ++i) {
    const McsShape& shape = kMcsShapes[i];
    // 2 slots per 1 ms subframe, 1000 subframes per second.
    const double rate = 2.0 * symbols_per_channel * shape.bits_per_symbol * 1000.0 *
                        (1.0 - cfg.overhead) * cfg.antenna_streams;
    table.entries.push_back(
        {shape.name, shape.bits_per_symbol, shape.coding_rate, thresholds_dbm[i], rate});
  }
  return table;
}

const McsEntry* select_mcs(double prx_dbm, const McsTable& table) {
  const McsEntry* best = nullptr;
  for (const auto& entry : table.entries) {
    if (entry.sensitivity_dbm <= prx_dbm) best = &entry;
  }
  return best;
}

int max_concurrent_users(const RadioConfig& cfg) {
  const int sectors = static_cast<int>(std::round(360.0 / cfg.beamwidth_deg));
  const int channels = static_cast<int>(std::floor((cfg.band_max_hz - cfg.band_min_hz) / cfg.bw_hz));
  return sectors * channels;
}

}  // namespace celltwin::radio
