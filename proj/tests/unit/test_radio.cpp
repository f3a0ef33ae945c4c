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

#include <cmath>
#include <random>

#include "celltwin/config.hpp"
#include "celltwin/radio.hpp"

using namespace celltwin;
using radio::LinkState;

TEST_CASE("breakpoint distance") {
  CHECK(radio::breakpoint_distance(10, 1.5, 1.85e9) == doctest::Approx(92.5));
  CHECK(radio::breakpoint_distance(10, 0.0, 1.85e9) == doctest::Approx(0.0));
  CHECK(radio::breakpoint_distance(10, 1.5, 3.7e9) ==
        doctest::Approx(2 * radio::breakpoint_distance(10, 1.5, 1.85e9)));
}

TEST_CASE("path loss reference values") {
  CHECK(radio::path_loss_db(100, 1.85, LinkState::LOS, 10, 1.5, 0) ==
        doctest::Approx(77.92).epsilon(2e-4));
  CHECK(radio::path_loss_db(100, 1.85, LinkState::NLOS, 10, 1.5, 0) ==
        doctest::Approx(97.04).epsilon(2e-4));
  // (h_u - 1.5) term vanishes at the default user height.
  CHECK(radio::path_loss_db(50, 1.85, LinkState::NLOS, 10, 1.5, 0) ==
        doctest::Approx(13.54 + 39.08 * std::log10(50.0) + 20 * std::log10(1.85)));
  CHECK_THROWS_AS(radio::path_loss_db(0, 1.85, LinkState::LOS, 10, 1.5, 0), ValidationError);
}

TEST_CASE("path loss is strictly increasing in distance") {
  for (const LinkState state : {LinkState::LOS, LinkState::NLOS}) {
    double prev = radio::path_loss_db(1, 1.85, state, 10, 1.5, 0);
    for (double d = 2; d < 3000; d *= 1.3) {
      const double pl = radio::path_loss_db(d, 1.85, state, 10, 1.5, 0);
      CHECK(pl > prev);
      prev = pl;
    }
  }
}

TEST_CASE("shadow fading statistics") {
  rng::SubRng r1(rng::derive(9, "sf_test"));
  rng::SubRng r2(rng::derive(9, "sf_test"));
  for (int i = 0; i < 10; ++i)
    CHECK(radio::draw_shadow_fading(LinkState::LOS, r1) ==
          radio::draw_shadow_fading(LinkState::LOS, r2));

  rng::SubRng rl(rng::derive(1, "sf_los"));
  double sum = 0, sum2 = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double v = radio::draw_shadow_fading(LinkState::LOS, rl);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sum2 / n - mean * mean);
  CHECK(std::abs(mean) < 0.1);
  CHECK(sd == doctest::Approx(4.0).epsilon(0.025));

  rng::SubRng rn(rng::derive(1, "sf_nlos"));
  double nsum = 0, nsum2 = 0;
  for (int i = 0; i < n; ++i) {
    const double v = radio::draw_shadow_fading(LinkState::NLOS, rn);
    nsum += v;
    nsum2 += v * v;
  }
  CHECK(std::abs(nsum / n) < 0.1);
  CHECK(std::sqrt(nsum2 / n - (nsum / n) * (nsum / n)) == doctest::Approx(7.8).epsilon(0.025));
}

TEST_CASE("received power") {
  radio::RadioConfig lte = config::default_config().lte;
  CHECK(radio::received_power_dbm(lte, 77.92) == doctest::Approx(-27.92));
  CHECK(radio::received_power_dbm(lte, 0) == doctest::Approx(50.0));
  radio::RadioConfig nn = config::default_config().nn;
  CHECK(radio::received_power_dbm(nn, 97.04) == doctest::Approx(-51.04));
  // Linearity: +k dB of path loss costs exactly k dBm.
  CHECK(radio::received_power_dbm(lte, 80.0) - radio::received_power_dbm(lte, 83.5) ==
        doctest::Approx(3.5));
}

TEST_CASE("mcs table reproduces the published datarates") {
  const auto cfg = config::default_config();
  const radio::McsTable lte = radio::build_mcs_table(cfg.lte);
  REQUIRE(lte.entries.size() == 4);
  CHECK(lte.entries[0].datarate_bps == doctest::Approx(18.9e6));
  // Published table prints 27.8 Mb/s for LTE 16-QAM; the symbol math gives 37.8.
  CHECK(lte.entries[1].datarate_bps == doctest::Approx(37.8e6));
  CHECK(lte.entries[2].datarate_bps == doctest::Approx(56.7e6));
  CHECK(lte.entries[3].datarate_bps == doctest::Approx(75.6e6));
  CHECK(lte.entries[0].sensitivity_dbm == doctest::Approx(-92.2));
  CHECK(lte.entries[3].sensitivity_dbm == doctest::Approx(-70.2));

  const radio::McsTable nn = radio::build_mcs_table(cfg.nn);
  CHECK(nn.entries[0].datarate_bps == doctest::Approx(25.2e6));
  CHECK(nn.entries[1].datarate_bps == doctest::Approx(50.4e6));
  CHECK(nn.entries[2].datarate_bps == doctest::Approx(75.6e6));
  CHECK(nn.entries[3].datarate_bps == doctest::Approx(100.8e6));
  CHECK(nn.entries[0].sensitivity_dbm == doctest::Approx(-91.0));
}

TEST_CASE("mcs datarate scales with bits per symbol and streams") {
  auto cfg = config::default_config().lte;
  const radio::McsTable t1 = radio::build_mcs_table(cfg);
  CHECK(t1.entries[1].datarate_bps == doctest::Approx(2 * t1.entries[0].datarate_bps));
  cfg.antenna_streams = 2;
  const radio::McsTable t2 = radio::build_mcs_table(cfg);
  CHECK(t2.entries[0].datarate_bps == doctest::Approx(2 * t1.entries[0].datarate_bps));
}

TEST_CASE("mcs table rejects non-increasing thresholds") {
  const auto cfg = config::default_config().lte;
  CHECK_THROWS_AS(radio::build_mcs_table(cfg, {-92.2, -92.2, -75.2, -70.2}), ValidationError);
}

TEST_CASE("mcs selection thresholds") {
  const radio::McsTable lte = radio::build_mcs_table(config::default_config().lte);
  const auto* qpsk = radio::select_mcs(-85, lte);
  REQUIRE(qpsk != nullptr);
  CHECK(qpsk->name == "QPSK");
  CHECK(radio::select_mcs(-95, lte) == nullptr);
  const auto* top = radio::select_mcs(-60, lte);
  REQUIRE(top != nullptr);
  CHECK(top->name == "256-QAM");
}

TEST_CASE("mcs selection is monotone in received power") {
  const radio::McsTable lte = radio::build_mcs_table(config::default_config().lte);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-110.0, -40.0);
  for (int i = 0; i < 500; ++i) {
    double a = u(rng), b = u(rng);
    if (a < b) std::swap(a, b);
    const auto* ma = radio::select_mcs(a, lte);
    const auto* mb = radio::select_mcs(b, lte);
    const double ra = ma ? ma->datarate_bps : 0.0;
    const double rb = mb ? mb->datarate_bps : 0.0;
    CHECK(ra >= rb);
  }
}

TEST_CASE("concurrent user capacity") {
  const auto cfg = config::default_config();
  CHECK(radio::max_concurrent_users(cfg.lte) == 15);  // 3 sectors x 5 channels
  CHECK(radio::max_concurrent_users(cfg.nn) == 18);   // 6 sectors x floor(3.75)
  radio::RadioConfig single = cfg.lte;
  single.beamwidth_deg = 360.0;
  single.band_min_hz = 0;
  single.band_max_hz = 15e6;
  CHECK(radio::max_concurrent_users(single) == 1);
}

TEST_CASE("config validation catches inconsistent PRB allocation") {
  radio::RadioConfig bad = config::default_config().lte;
  bad.prb_available = 100;
  CHECK_THROWS_AS(radio::validate_config(bad), ValidationError);
  CHECK_THROWS_AS(radio::prb_for_bandwidth(17e6), ValidationError);
}
