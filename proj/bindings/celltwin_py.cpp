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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "celltwin/artifact.hpp"
#include "celltwin/config.hpp"
#include "celltwin/scenario.hpp"
#include "celltwin/stats.hpp"
#include "celltwin/traffic.hpp"
#include "celltwin/util.hpp"

namespace py = pybind11;
using namespace celltwin;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const radio::RadioConfig& config_for(const std::string& kind) {
  static const config::ScenarioConfig defaults = config::default_config();
  if (kind == "lte") return defaults.lte;
  if (kind == "nn") return defaults.nn;
  throw ValidationError("kind must be 'lte' or 'nn'");
}

py::dict mcs_entry_dict(const radio::McsEntry& e) {
  py::dict d;
  d["name"] = e.name;
  d["bits_per_symbol"] = e.bits_per_symbol;
  d["coding_rate"] = e.coding_rate;
  d["sensitivity_dbm"] = e.sensitivity_dbm;
  d["datarate_bps"] = e.datarate_bps;
  return d;
}

py::list mcs_table(const std::string& kind) {
  const auto table = radio::build_mcs_table(config_for(kind));
  py::list out;
  for (const auto& e : table.entries) out.append(mcs_entry_dict(e));
  return out;
}

py::object select_mcs(double prx_dbm, const std::string& kind) {
  const auto table = radio::build_mcs_table(config_for(kind));
  const auto* entry = radio::select_mcs(prx_dbm, table);
  if (entry == nullptr) return py::none();
  return mcs_entry_dict(*entry);
}

double path_loss(double d, double fc_ghz, bool los, double h_b, double h_u, double sf_db) {
  return radio::path_loss_db(d, fc_ghz, los ? radio::LinkState::LOS : radio::LinkState::NLOS,
                             h_b, h_u, sf_db);
}

py::list delaunay_py(const std::vector<std::pair<double, double>>& points) {
  std::vector<geom::Point2D> pts;
  pts.reserve(points.size());
  for (const auto& [x, y] : points) pts.push_back({x, y});
  py::list out;
  for (const auto& t : geom::delaunay(pts)) {
    out.append(py::make_tuple(py::make_tuple(t.a.x, t.a.y), py::make_tuple(t.b.x, t.b.y),
                              py::make_tuple(t.c.x, t.c.y)));
  }
  return out;
}

py::tuple triangle_incentre_py(std::pair<double, double> a, std::pair<double, double> b,
                               std::pair<double, double> c) {
  const auto ic = geom::triangle_incentre(
      {{a.first, a.second}, {b.first, b.second}, {c.first, c.second}});
  return py::make_tuple(ic.x, ic.y);
}

py::tuple ks_two_sample_py(std::vector<double> a, std::vector<double> b) {
  const auto ks = sim::ks_two_sample(std::move(a), std::move(b));
  return py::make_tuple(ks.d, ks.p);
}

py::dict temporal_model() {
  traffic::TemporalModel model;
  const double shift = traffic::align_to_4am(model);
  py::dict d;
  d["align_shift_h"] = shift;
  d["vmin"] = model.vmin;
  d["vmax"] = model.vmax;
  return d;
}

/// Full pipeline: map + stations (+ optional scenario file) to the
/// per-variant summary, mirroring the `run` CLI subcommand.
py::dict run_pipeline(const std::string& map_path, const std::string& stations_path,
                      const py::object& config_path, std::vector<int> variants, int threads,
                      const py::object& out_dir) {
  config::ScenarioConfig cfg = config_path.is_none()
                                   ? config::default_config()
                                   : config::parse_scenario_file(
                                         read_file(config_path.cast<std::string>()));
  if (!variants.empty()) cfg.variants = std::move(variants);

  const auto extract = city::parse_map_extract(read_file(map_path));
  const auto map = city::build_city(extract, cfg.build_config());
  const auto records =
      city::load_base_stations(read_file(stations_path), map.projector, cfg.local_coords);
  const auto lte = city::snap_to_buildings(records, map).stations;
  const auto report = sim::run_scenario(cfg, map, lte, threads);
  if (!out_dir.is_none()) sim::write_report_csvs(report, map, out_dir.cast<std::string>());

  py::dict out;
  py::list variant_rows;
  for (const auto& vr : report.variants) {
    py::dict row;
    row["nn_count"] = vr.nn_count;
    row["stations"] = vr.stations.size();
    row["mean_datarate_mbps"] = vr.overall_mean_bps / 1e6;
    row["rss_median_dbm"] = sim::median(vr.rss_samples);
    py::list placed;
    for (const auto& step : vr.placement.placed)
      placed.append(py::make_tuple(step.iteration, step.building_id, step.position.x,
                                   step.position.y, step.mean_rss_before));
    row["placed"] = placed;
    variant_rows.append(row);
  }
  out["variants"] = variant_rows;
  py::list ks_rows;
  for (const auto& row : report.ks_rows)
    ks_rows.append(py::make_tuple(row.variant_a, row.variant_b, row.d, row.p));
  out["ks_tests"] = ks_rows;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Urban cellular coverage twin: link budget, traffic and nomadic-node placement";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  m.def("breakpoint_distance", &radio::breakpoint_distance, py::arg("h_b"), py::arg("h_u"),
        py::arg("fc_hz"), "Breakpoint distance h_B * h_u * fc / c in metres.");
  m.def("path_loss_db", &path_loss, py::arg("d"), py::arg("fc_ghz"), py::arg("los"),
        py::arg("h_b"), py::arg("h_u"), py::arg("sf_db") = 0.0,
        "Urban-macro path loss in dB for a LOS or NLOS link.");
  m.def("received_power_dbm",
        [](const std::string& kind, double pl_db) {
          return radio::received_power_dbm(config_for(kind), pl_db);
        },
        py::arg("kind"), py::arg("pl_db"));
  m.def("mcs_table", &mcs_table, py::arg("kind"),
        "Modulation table (name, bits/symbol, coding rate, sensitivity, datarate).");
  m.def("select_mcs", &select_mcs, py::arg("prx_dbm"), py::arg("kind"),
        "Highest-rate MCS sustained at the given received power, or None.");
  m.def("max_concurrent_users",
        [](const std::string& kind) { return radio::max_concurrent_users(config_for(kind)); },
        py::arg("kind"));

  m.def("temporal_volume",
        [](double t) { return traffic::temporal_volume(traffic::TemporalModel{}, t); },
        py::arg("t"), "Raw daily traffic volume curve.");
  m.def("temporal_model", &temporal_model,
        "Alignment shift and curve extremes of the daily volume model.");
  m.def("normalize_volume", &traffic::normalize_volume, py::arg("v"), py::arg("vmin"),
        py::arg("vmax"), py::arg("max_users"));

  m.def("distance3d",
        [](std::pair<double, double> p1, double h1, std::pair<double, double> p2, double h2) {
          return geom::distance3d({p1.first, p1.second}, h1, {p2.first, p2.second}, h2);
        },
        py::arg("p1"), py::arg("h1"), py::arg("p2"), py::arg("h2"));
  m.def("delaunay", &delaunay_py, py::arg("points"),
        "Delaunay triangulation as a list of vertex-coordinate triples.");
  m.def("triangle_incentre", &triangle_incentre_py, py::arg("a"), py::arg("b"), py::arg("c"));

  m.def("ks_two_sample", &ks_two_sample_py, py::arg("a"), py::arg("b"),
        "Two-sample Kolmogorov-Smirnov test: (D, p).");

  m.def("run_pipeline", &run_pipeline, py::arg("map_path"), py::arg("stations_path"),
        py::arg("config_path") = py::none(), py::arg("variants") = std::vector<int>{},
        py::arg("threads") = 1, py::arg("out_dir") = py::none(),
        "Build the city, place nomadic nodes per variant and summarise the run.");
}
