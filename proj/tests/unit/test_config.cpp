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

#include <doctest.h>

#include "celltwin/config.hpp"
#include "celltwin/util.hpp"

using namespace celltwin;

TEST_CASE("default config carries the reference parameter set") {
  const auto cfg = config::default_config();
  CHECK(cfg.lte.ptx_dbm == 35.0);
  CHECK(cfg.nn.ptx_dbm == 30.0);
  CHECK(cfg.lte.gtx_dbi == 15.0);
  CHECK(cfg.nn.gtx_dbi == 16.0);
  CHECK(cfg.lte.grx_dbi == 0.0);
  CHECK(cfg.lte.fc_hz == 1850e6);
  CHECK(cfg.lte.band_min_hz == 1805e6);
  CHECK(cfg.lte.band_max_hz == 1880e6);
  CHECK(cfg.lte.bw_hz == 15e6);
  CHECK(cfg.nn.bw_hz == 20e6);
  CHECK(cfg.lte.beamwidth_deg == 120.0);
  CHECK(cfg.nn.beamwidth_deg == 60.0);
  CHECK(cfg.lte.overhead == 0.25);
  CHECK(cfg.d_p == 100.0);
  CHECK(cfg.tile_size == 4.0);
  CHECK(cfg.beta == 0.25);
  CHECK(cfg.n_tiles == 1000);
  CHECK(cfg.height_min == 5.0);
  CHECK(cfg.height_max == 15.0);
  CHECK_NOTHROW(config::validate(cfg));
}

TEST_CASE("scenario file round trip preserves the configuration") {
  auto cfg = config::default_config();
  cfg.seed = 77;
  cfg.variants = {0, 3, 9};
  cfg.beta = 0.4;
  cfg.nn.ptx_dbm = 28.5;
  cfg.occupancy.by_type[city::BuildingType::Mall].users_max = 900;
  const std::string text = config::serialize_scenario_file(cfg);
  const auto parsed = config::parse_scenario_file(text);
  CHECK(config::serialize_scenario_file(parsed) == text);
  CHECK(parsed.seed == 77);
  CHECK(parsed.variants == std::vector<int>{0, 3, 9});
  CHECK(parsed.beta == 0.4);
  CHECK(parsed.nn.ptx_dbm == 28.5);
  CHECK(parsed.occupancy.entry(city::BuildingType::Mall).users_max == 900);
}

TEST_CASE("unknown sections and keys are rejected") {
  CHECK_THROWS_WITH_AS(config::parse_scenario_file("[bogus]\nx = 1\n"),
                       doctest::Contains("unknown section"), ValidationError);
  CHECK_THROWS_WITH_AS(config::parse_scenario_file("[sim]\nbogus_key = 1\n"),
                       doctest::Contains("unknown key"), ValidationError);
  CHECK_THROWS_AS(config::parse_scenario_file("[sim]\nseed = 1\nseed = 2\n"), ValidationError);
  CHECK_THROWS_AS(config::parse_scenario_file("stray = 1\n"), ValidationError);
}

TEST_CASE("invalid values are rejected with context") {
  CHECK_THROWS_AS(config::parse_scenario_file("[sim]\nbeta = 1.5\n"), ValidationError);
  CHECK_THROWS_AS(config::parse_scenario_file("[sim]\nbeta = abc\n"), ValidationError);
  CHECK_THROWS_AS(config::parse_scenario_file("[radio.lte]\nbw_mhz = 17\n"), ValidationError);
  CHECK_THROWS_AS(config::parse_scenario_file("[map]\ntile_size = -4\n"), ValidationError);
  CHECK_THROWS_AS(config::parse_scenario_file("[traffic]\nrho_office = 0.5,0.5\n"),
                  ValidationError);
}

TEST_CASE("bandwidth key refreshes the PRB allocation") {
  const auto cfg = config::parse_scenario_file("[radio.lte]\nbw_mhz = 10\n");
  CHECK(cfg.lte.prb_available == 50);
}

TEST_CASE("comments and blank lines are ignored") {
  const auto cfg = config::parse_scenario_file(
      "# scenario\n\n[sim]\n; a comment\nseed = 5\n\n[placement]\nd_p = 80\n");
  CHECK(cfg.seed == 5);
  CHECK(cfg.d_p == 80.0);
}
