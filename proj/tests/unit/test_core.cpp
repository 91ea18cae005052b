// Copyright 2026 The mtcore Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "mtc/core.hpp"
#include "mtc/device_physics.hpp"

namespace core = mtc::core;
namespace dev = mtc::device;

TEST_CASE("rc_decay schedule follows the junction voltage") {
  const auto b = mtc::testing::default_behavioral();
  const auto s = core::Schedule::rc_decay(b, 0.6);
  for (double t : {0.0, 1e-8, 1e-7, 1e-6, 1e-5}) {
    CHECK(core::schedule_voltage(s, t) == dev::junction_voltage(b, 0.6, t));
  }
  CHECK_THROWS_AS(core::schedule_voltage(s, -1e-9), std::invalid_argument);
  CHECK(core::Schedule::constant(0.55).voltage(1.0) == 0.55);
}

TEST_CASE("table schedule interpolates and clamps") {
  const auto s = core::Schedule::table({{0.0, 0.6}, {1e-7, 0.5}, {3e-7, 0.45}});
  CHECK(s.voltage(0.0) == 0.6);
  CHECK(s.voltage(5e-8) == doctest::Approx(0.55));
  CHECK(s.voltage(2e-7) == doctest::Approx(0.475));
  CHECK(s.voltage(1.0) == 0.45);
  CHECK_THROWS_AS(core::Schedule::table({{0.0, 0.6}, {0.0, 0.5}}), core::StructureError);
  CHECK_THROWS_AS(core::Schedule::table({}), core::StructureError);
  CHECK_THROWS_AS(core::Schedule::rc_decay(0.6, 0.5, -1.0), core::StructureError);
}

TEST_CASE("weighted sum current") {
  core::WeightVector w{0, {{1, 1.0}, {2, -1.0}, {3, 0.5}}, 2e-6};
  CHECK_NOTHROW(w.validate());
  const std::vector<std::uint8_t> states{1, 1, 0, 1};
  CHECK(core::weighted_sum_current(w, states) == doctest::Approx(3e-6));
  const std::vector<std::uint8_t> short_states{1, 1};
  CHECK_THROWS_AS(core::weighted_sum_current(w, short_states), core::StructureError);

  core::WeightVector self{0, {{0, 1.0}}, 1e-6};
  CHECK_THROWS_AS(self.validate(), core::StructureError);
  core::WeightVector repeated{0, {{1, 1.0}, {1, 2.0}}, 1e-6};
  CHECK_THROWS_AS(repeated.validate(), core::StructureError);
}

TEST_CASE("transition rates satisfy detailed balance") {
  const auto p = mtc::testing::default_material();
  const auto b = mtc::testing::default_behavioral();
  for (double v : {0.45, 0.5, 0.55, 0.6, 0.65}) {
    for (double i : {-8e-6, -1e-6, 0.0, 2e-6, 5e-6}) {
      const auto r = core::transition_rates(b, p, v, i);
      const double logit = dev::effective_beta(b, p, v) * (b.gamma1 + b.gamma2 * i);
      CHECK(std::log(r.to_ap / r.to_p) == doctest::Approx(logit).epsilon(1e-12));
      CHECK(r.total() == doctest::Approx(dev::switching_rate(b, v)).epsilon(1e-12));
    }
  }
}

TEST_CASE("advance is reproducible and keeps time") {
  const auto p = mtc::testing::default_material();
  const auto b = mtc::testing::default_behavioral();
  const auto s = core::Schedule::rc_decay(b, 0.6);
  mtc::Rng r1(8), r2(8);
  core::CoreState a{0, 0.6, 1e-6, 0.0}, c = a;
  for (int k = 0; k < 1000; ++k) {
    a = core::advance(a, b, p, s, 1e-9, r1);
    c = core::advance(c, b, p, s, 1e-9, r2);
    REQUIRE(a.S == c.S);
  }
  CHECK(a.t == doctest::Approx(1e-6));
  CHECK(a.V == doctest::Approx(dev::junction_voltage(b, 0.6, a.t)));
  CHECK(a.I == 1e-6);
  CHECK_THROWS_AS(core::advance(a, b, p, s, 0.0, r1), std::invalid_argument);
}

TEST_CASE("stationary occupancy of one core matches the bias probability") {
  const auto p = mtc::testing::default_material();
  const auto b = mtc::testing::default_behavioral();
  const double v = 0.6, current = 1.5e-6;
  const auto s = core::Schedule::constant(v);
  mtc::Rng rng(77);
  core::CoreState c{0, v, current, 0.0};
  const double dt = 2e-9;
  const int steps = 400000;
  std::size_t ap = 0, flips = 0;
  for (int k = 0; k < steps; ++k) {
    const auto next = core::advance(c, b, p, s, dt, rng);
    flips += next.S != c.S;
    c = next;
    ap += c.S;
  }
  const double want = dev::bias_probability(b, p, current, v);
  const double got = static_cast<double>(ap) / steps;
  // Correlated samples: use the number of flips as the effective sample size.
  const double sigma = std::sqrt(want * (1 - want) / std::max<double>(1, flips / 2.0));
  MESSAGE("P_AP " << got << " vs " << want << " (" << flips << " flips)");
  CHECK(std::abs(got - want) < 4 * sigma);
  // Mean rate of flips: 2 f P (1-P).
  const double rate = flips / (steps * dt);
  const double want_rate = 2 * dev::switching_rate(b, v) * want * (1 - want);
  CHECK(rate == doctest::Approx(want_rate).epsilon(0.05));
}
