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

#include "celltwin/config.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include "celltwin/util.hpp"

namespace celltwin::config {

namespace {

radio::RadioConfig default_lte() {
  radio::RadioConfig c;
  c.ptx_dbm = 35.0;
  c.gtx_dbi = 15.0;
  c.grx_dbi = 0.0;
  c.fc_hz = 1850e6;
  c.band_min_hz = 1805e6;
  c.band_max_hz = 1880e6;
  c.bw_hz = 15e6;
  c.beamwidth_deg = 120.0;
  c.overhead = 0.25;
  c.antenna_streams = 1;
  c.prb_available = 75;
  c.mcs_thresholds_dbm = {-92.2, -81.2, -75.2, -70.2};
  return c;
}

radio::RadioConfig default_nn() {
  radio::RadioConfig c = default_lte();
  c.ptx_dbm = 30.0;
  c.gtx_dbi = 16.0;
  c.bw_hz = 20e6;
  c.beamwidth_deg = 60.0;
  c.prb_available = 100;
  c.mcs_thresholds_dbm = {-91.0, -80.0, -74.0, -69.0};
  return c;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string join_doubles(const std::vector<double>& vals) {
  std::string out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out += ",";
    out += fmt_double(vals[i]);
  }
  return out;
}

std::vector<double> parse_doubles(const std::string& text, const std::string& key) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) {
    try {
      out.push_back(std::stod(trim(part)));
    } catch (const std::exception&) {
      throw ValidationError("config key '" + key + "': expected comma-separated numbers");
    }
  }
  return out;
}

struct Parsed {
  // section -> key -> value, preserving nothing but the pairs
  std::map<std::string, std::map<std::string, std::string>> sections;
};

Parsed parse_ini(const std::string& text) {
  Parsed out;
  std::istringstream in(text);
  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#' || s[0] == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw ValidationError("config line " + std::to_string(line_no) + ": unterminated section");
      section = trim(s.substr(1, s.size() - 2));
      out.sections[section];
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (section.empty())
      throw ValidationError("config line " + std::to_string(line_no) + ": key outside a section");
    if (!out.sections[section].emplace(key, value).second)
      throw ValidationError("config line " + std::to_string(line_no) + ": duplicate key '" + key +
                            "'");
  }
  return out;
}

class SectionReader {
 public:
  SectionReader(const Parsed& parsed, std::string name) : name_(std::move(name)) {
    const auto it = parsed.sections.find(name_);
    if (it != parsed.sections.end()) entries_ = &it->second;
  }

  template <typename Fn>
  void take(const std::string& key, Fn&& fn) {
    if (!entries_) return;
    const auto it = entries_->find(key);
    if (it == entries_->end()) return;
    try {
      fn(it->second);
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception&) {
      throw ValidationError("config [" + name_ + "] " + key + ": invalid value '" + it->second +
                            "'");
    }
    seen_.push_back(key);
  }

  void finish() const {
    if (!entries_) return;
    for (const auto& [key, value] : *entries_) {
      bool known = false;
      for (const auto& s : seen_)
        if (s == key) known = true;
      if (!known)
        throw ValidationError("config [" + name_ + "]: unknown key '" + key + "'");
    }
  }

 private:
  std::string name_;
  const std::map<std::string, std::string>* entries_ = nullptr;
  std::vector<std::string> seen_;
};

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ValidationError("expected boolean, got '" + v + "'");
}

void read_radio(SectionReader& sec, radio::RadioConfig& cfg) {
  sec.take("ptx_dbm", [&](const std::string& v) { cfg.ptx_dbm = std::stod(v); });
  sec.take("gtx_dbi", [&](const std::string& v) { cfg.gtx_dbi = std::stod(v); });
  sec.take("grx_dbi", [&](const std::string& v) { cfg.grx_dbi = std::stod(v); });
  sec.take("fc_mhz", [&](const std::string& v) { cfg.fc_hz = std::stod(v) * 1e6; });
  sec.take("band_min_mhz", [&](const std::string& v) { cfg.band_min_hz = std::stod(v) * 1e6; });
  sec.take("band_max_mhz", [&](const std::string& v) { cfg.band_max_hz = std::stod(v) * 1e6; });
  sec.take("bw_mhz", [&](const std::string& v) {
    cfg.bw_hz = std::stod(v) * 1e6;
    cfg.prb_available = radio::prb_for_bandwidth(cfg.bw_hz);
  });
  sec.take("beamwidth_deg", [&](const std::string& v) { cfg.beamwidth_deg = std::stod(v); });
  sec.take("overhead", [&](const std::string& v) { cfg.overhead = std::stod(v); });
  sec.take("antenna_streams", [&](const std::string& v) { cfg.antenna_streams = std::stoi(v); });
  sec.take("mcs_thresholds_dbm", [&](const std::string& v) {
    cfg.mcs_thresholds_dbm = parse_doubles(v, "mcs_thresholds_dbm");
  });
}

void write_radio(std::ostringstream& out, const radio::RadioConfig& cfg) {
  out << "ptx_dbm = " << fmt_double(cfg.ptx_dbm) << "\n";
  out << "gtx_dbi = " << fmt_double(cfg.gtx_dbi) << "\n";
  out << "grx_dbi = " << fmt_double(cfg.grx_dbi) << "\n";
  out << "fc_mhz = " << fmt_double(cfg.fc_hz / 1e6) << "\n";
  out << "band_min_mhz = " << fmt_double(cfg.band_min_hz / 1e6) << "\n";
  out << "band_max_mhz = " << fmt_double(cfg.band_max_hz / 1e6) << "\n";
  out << "bw_mhz = " << fmt_double(cfg.bw_hz / 1e6) << "\n";
  out << "beamwidth_deg = " << fmt_double(cfg.beamwidth_deg) << "\n";
  out << "overhead = " << fmt_double(cfg.overhead) << "\n";
  out << "antenna_streams = " << cfg.antenna_streams << "\n";
  out << "mcs_thresholds_dbm = " << join_doubles(cfg.mcs_thresholds_dbm) << "\n";
}

const std::vector<city::BuildingType>& all_building_types() {
  static const std::vector<city::BuildingType> types = {
      city::BuildingType::Hotel,        city::BuildingType::School,
      city::BuildingType::Residential,  city::BuildingType::Office,
      city::BuildingType::SmallBusiness, city::BuildingType::Hospital,
      city::BuildingType::Mall};
  return types;
}

}  // namespace

ScenarioConfig default_config() {
  ScenarioConfig cfg;
  cfg.lte = default_lte();
  cfg.nn = default_nn();
  return cfg;
}

ScenarioConfig parse_scenario_file(const std::string& text) {
  const Parsed parsed = parse_ini(text);
  for (const auto& [name, _] : parsed.sections) {
    if (name != "map" && name != "stations" && name != "radio.lte" && name != "radio.nn" &&
        name != "traffic" && name != "placement" && name != "sim")
      throw ValidationError("config: unknown section [" + name + "]");
  }

  ScenarioConfig cfg = default_config();

  SectionReader map_sec(parsed, "map");
  map_sec.take("tile_size", [&](const std::string& v) { cfg.tile_size = std::stod(v); });
  map_sec.take("height_min", [&](const std::string& v) { cfg.height_min = std::stod(v); });
  map_sec.take("height_max", [&](const std::string& v) { cfg.height_max = std::stod(v); });
  map_sec.take("gap_eps", [&](const std::string& v) { cfg.gap_eps = std::stod(v); });
  map_sec.finish();

  SectionReader st_sec(parsed, "stations");
  st_sec.take("file", [&](const std::string& v) { cfg.stations_file = v; });
  st_sec.take("local_coords", [&](const std::string& v) { cfg.local_coords = parse_bool(v); });
  st_sec.finish();

  SectionReader lte_sec(parsed, "radio.lte");
  read_radio(lte_sec, cfg.lte);
  lte_sec.finish();
  SectionReader nn_sec(parsed, "radio.nn");
  read_radio(nn_sec, cfg.nn);
  nn_sec.finish();

  SectionReader tr_sec(parsed, "traffic");
  tr_sec.take("max_users_per_tile",
              [&](const std::string& v) { cfg.max_users_per_tile = std::stoi(v); });
  tr_sec.take("field_terms", [&](const std::string& v) { cfg.field.terms = std::stoi(v); });
  tr_sec.take("field_omega_max",
              [&](const std::string& v) { cfg.field.omega_max = std::stod(v); });
  tr_sec.take("field_sigma", [&](const std::string& v) { cfg.field.sigma = std::stod(v); });
  tr_sec.take("field_mu", [&](const std::string& v) { cfg.field.mu = std::stod(v); });
  tr_sec.take("hotspot_count",
              [&](const std::string& v) { cfg.field.hotspot_count = std::stoi(v); });
  for (const auto type : all_building_types()) {
    const std::string name = city::to_string(type);
    tr_sec.take("users_" + name, [&](const std::string& v) {
      const auto vals = parse_doubles(v, "users_" + name);
      if (vals.size() != 2) throw ValidationError("users_" + name + ": expected 'min,max'");
      cfg.occupancy.by_type[type].users_min = static_cast<int>(vals[0]);
      cfg.occupancy.by_type[type].users_max = static_cast<int>(vals[1]);
    });
    tr_sec.take("rho_" + name, [&](const std::string& v) {
      const auto vals = parse_doubles(v, "rho_" + name);
      if (vals.size() != 24) throw ValidationError("rho_" + name + ": expected 24 hourly values");
      for (std::size_t i = 0; i < 24; ++i) cfg.occupancy.by_type[type].rho[i] = vals[i];
    });
  }
  tr_sec.finish();

  SectionReader pl_sec(parsed, "placement");
  pl_sec.take("d_p", [&](const std::string& v) { cfg.d_p = std::stod(v); });
  pl_sec.take("n_tiles", [&](const std::string& v) { cfg.n_tiles = std::stoi(v); });
  pl_sec.finish();

  SectionReader sim_sec(parsed, "sim");
  sim_sec.take("seed", [&](const std::string& v) { cfg.seed = std::stoull(v); });
  sim_sec.take("timesteps", [&](const std::string& v) { cfg.timesteps = std::stoi(v); });
  sim_sec.take("start_hour", [&](const std::string& v) { cfg.start_hour = std::stoi(v); });
  sim_sec.take("beta", [&](const std::string& v) { cfg.beta = std::stod(v); });
  sim_sec.take("user_height", [&](const std::string& v) { cfg.user_height = std::stod(v); });
  sim_sec.take("variants", [&](const std::string& v) {
    cfg.variants.clear();
    for (const double d : parse_doubles(v, "variants")) cfg.variants.push_back(static_cast<int>(d));
  });
  sim_sec.finish();

  validate(cfg);
  return cfg;
}

std::string serialize_scenario_file(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "[map]\n";
  out << "tile_size = " << fmt_double(cfg.tile_size) << "\n";
  out << "height_min = " << fmt_double(cfg.height_min) << "\n";
  out << "height_max = " << fmt_double(cfg.height_max) << "\n";
  out << "gap_eps = " << fmt_double(cfg.gap_eps) << "\n";
  out << "\n[stations]\n";
  if (!cfg.stations_file.empty()) out << "file = " << cfg.stations_file << "\n";
  out << "local_coords = " << (cfg.local_coords ? "true" : "false") << "\n";
  out << "\n[radio.lte]\n";
  write_radio(out, cfg.lte);
  out << "\n[radio.nn]\n";
  write_radio(out, cfg.nn);
  out << "\n[traffic]\n";
  out << "max_users_per_tile = " << cfg.max_users_per_tile << "\n";
  out << "field_terms = " << cfg.field.terms << "\n";
  out << "field_omega_max = " << fmt_double(cfg.field.omega_max) << "\n";
  out << "field_sigma = " << fmt_double(cfg.field.sigma) << "\n";
  out << "field_mu = " << fmt_double(cfg.field.mu) << "\n";
  out << "hotspot_count = " << cfg.field.hotspot_count << "\n";
  for (const auto type : all_building_types()) {
    const auto& entry = cfg.occupancy.entry(type);
    const std::string name = city::to_string(type);
    out << "users_" << name << " = " << entry.users_min << "," << entry.users_max << "\n";
    out << "rho_" << name << " = "
        << join_doubles(std::vector<double>(entry.rho.begin(), entry.rho.end())) << "\n";
  }
  out << "\n[placement]\n";
  out << "d_p = " << fmt_double(cfg.d_p) << "\n";
  out << "n_tiles = " << cfg.n_tiles << "\n";
  out << "\n[sim]\n";
  out << "seed = " << cfg.seed << "\n";
  out << "timesteps = " << cfg.timesteps << "\n";
  out << "start_hour = " << cfg.start_hour << "\n";
  out << "beta = " << fmt_double(cfg.beta) << "\n";
  out << "user_height = " << fmt_double(cfg.user_height) << "\n";
  out << "variants = ";
  for (std::size_t i = 0; i < cfg.variants.size(); ++i)
    out << (i ? "," : "") << cfg.variants[i];
  out << "\n";
  return out.str();
}

void validate(const ScenarioConfig& cfg) {
  radio::validate_config(cfg.lte);
  radio::validate_config(cfg.nn);
  if (cfg.tile_size <= 0) throw ValidationError("config: tile_size must be positive");
  if (cfg.height_min <= 0 || cfg.height_max < cfg.height_min)
    throw ValidationError("config: invalid height range");
  if (cfg.beta < 0.0 || cfg.beta > 1.0) throw ValidationError("config: beta must lie in [0,1]");
  if (cfg.timesteps < 1) throw ValidationError("config: timesteps must be >= 1");
  if (cfg.max_users_per_tile < 1)
    throw ValidationError("config: max_users_per_tile must be >= 1");
  if (cfg.d_p <= 0) throw ValidationError("config: d_p must be positive");
  if (cfg.n_tiles < 1) throw ValidationError("config: n_tiles must be >= 1");
  if (cfg.variants.empty()) throw ValidationError("config: variants must not be empty");
  for (const int v : cfg.variants)
    if (v < 0) throw ValidationError("config: variant NN counts must be >= 0");
  for (const auto& [type, entry] : cfg.occupancy.by_type) {
    if (entry.users_min < 1 || entry.users_max < entry.users_min)
      throw ValidationError(std::string("config: invalid user range for ") +
                            city::to_string(type));
    for (const double r : entry.rho)
      if (r < 0.0 || r > 1.0)
        throw ValidationError(std::string("config: occupancy fractions for ") +
                              city::to_string(type) + " must lie in [0,1]");
  }
}

}  // namespace celltwin::config
