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


#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "mtc/device_physics.hpp"
#include "mtc/llg.hpp"
#include "mtc/stats.hpp"

using mtc::MaterialParams;
using mtc::Rng;
using mtc::Vec3;
namespace llg = mtc::llg;

namespace {

constexpr double kGamma = 1.76085963023e11;
constexpr double kMu0 = 1.25663706212e-6;
constexpr double kHbar = 1.054571817e-34;
constexpr double kE = 1.602176634e-19;

using V3 = std::array<double, 3>;

V3 cr(const V3& a, const V3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

// Landau-Lifshitz form written out independently of the library.
V3 oracle_rhs(const V3& m, const MaterialParams& p, double volts, double j,
              const V3& sigma, const V3& hext) {
  const double ki = p.Ki - p.xi * volts / p.t_fl;
  const V3 h{-p.Ms * p.Nx * m[0] + hext[0], -p.Ms * p.Ny * m[1] + hext[1],
             (2 * ki / (kMu0 * p.Ms * p.t_fl) - p.Ms * p.Nz) * m[2] + hext[2]};
  const double bsh = kHbar * p.theta_sot * j / (2 * kE * p.Ms * p.t_fl);
  const V3 mxh = cr(m, h);
  const V3 mxsxm = cr(m, cr(sigma, m));
  V3 a;
  for (int i = 0; i < 3; ++i) a[i] = -kGamma * kMu0 * mxh[i] + kGamma * bsh * mxsxm[i];
  const V3 mxa = cr(m, a);
  V3 out;
  for (int i = 0; i < 3; ++i) out[i] = (a[i] + p.alpha * mxa[i]) / (1 + p.alpha * p.alpha);
  return out;
}

V3 rk4(V3 m, const MaterialParams& p, double volts, const V3& hext, double dt,
       int steps) {
  const V3 sigma{0, 1, 0};
  auto f = [&](const V3& x) { return oracle_rhs(x, p, volts, 0.0, sigma, hext); };
  for (int s = 0; s < steps; ++s) {
    const V3 k1 = f(m);
    V3 t;
    for (int i = 0; i < 3; ++i) t[i] = m[i] + 0.5 * dt * k1[i];
    const V3 k2 = f(t);
    for (int i = 0; i < 3; ++i) t[i] = m[i] + 0.5 * dt * k2[i];
    const V3 k3 = f(t);
    for (int i = 0; i < 3; ++i) t[i] = m[i] + dt * k3[i];
    const V3 k4 = f(t);
    for (int i = 0; i < 3; ++i) m[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    const double n = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]);
    for (auto& c : m) c /= n;
  }
  return m;
}

Vec3 random_unit(Rng& rng) {
  std::normal_distribution<double> n(0, 1);
  return mtc::normalized(Vec3{n(rng), n(rng), n(rng)});
}

}  // namespace

TEST_CASE("effective field and rhs match the written-out oracle") {
  const auto p = mtc::testing::default_material();
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    const Vec3 m = random_unit(rng);
    const Vec3 sigma = random_unit(rng);
    llg::DriveInputs d{0.37, 3e10, sigma, Vec3{1e3, -2e3, 5e2}};
    const Vec3 got = llg::rhs(m, p, d, {});
    const V3 want = oracle_rhs({m.x, m.y, m.z}, p, d.V, d.J, {sigma.x, sigma.y, sigma.z},
                               {1e3, -2e3, 5e2});
    const double scale = std::hypot(want[0], want[1], want[2]);
    CHECK(std::abs(got.x - want[0]) <= 1e-12 * scale);
    CHECK(std::abs(got.y - want[1]) <= 1e-12 * scale);
    CHECK(std::abs(got.z - want[2]) <= 1e-12 * scale);

    const Vec3 h = llg::effective_field({m, 0.0}, p, d, {});
    const double ki = p.Ki - p.xi * d.V / p.t_fl;
    CHECK(h.z == doctest::Approx((2 * ki / (kMu0 * p.Ms * p.t_fl) - p.Ms * p.Nz) * m.z + 5e2)
                     .epsilon(1e-12));
  }
}

TEST_CASE("sot torque is perpendicular to m") {
  const auto p = mtc::testing::default_material();
  Rng rng(9);
  for (int k = 0; k < 1000; ++k) {
    const Vec3 m = random_unit(rng);
    llg::DriveInputs d;
    d.J = 1e11;
    d.sigma = random_unit(rng);
    const Vec3 tau = llg::sot_torque({m, 0.0}, p, d);
    CHECK(std::abs(mtc::dot(tau, m)) <= 1e-12 * std::max(mtc::norm(tau), 1e-300));
  }
}

TEST_CASE("thermal field sigma") {
  const auto p = mtc::testing::default_material();
  const double dt = 0.5e-12;
  const double want = std::sqrt(2 * p.alpha * 1.380649e-23 * p.T /
                                (kGamma * kMu0 * kMu0 * p.Ms * p.area * p.t_fl * dt));
  CHECK(llg::thermal_field_sigma(p, dt) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("norm is conserved by every step") {
  const auto p = mtc::testing::default_material();
  Rng rng(1);
  llg::MagnetizationState s{mtc::normalized(Vec3{0.3, 0.1, 1.0}), 0.0};
  llg::DriveInputs d{0.6, 5e10, {0, 1, 0}, {-8e3, 0, 0}};
  for (int k = 0; k < 20000; ++k) {
    s = llg::step(s, p, d, llg::kDefaultDt, rng);
    REQUIRE(std::abs(mtc::norm(s.m) - 1.0) < 1e-9);
  }
}

TEST_CASE("zero temperature: energy never increases") {
  auto p = mtc::testing::default_material();
  p.T = 0.0;
  p.alpha = 0.1;
  llg::DriveInputs d{0.3, 0.0, {0, 1, 0}, {4e3, 0, 0}};
  Vec3 m = mtc::normalized(Vec3{0.8, 0.2, 0.5});
  double e = llg::energy_density(m, p, d);
  const double scale = std::abs(e);
  for (int k = 0; k < 40000; ++k) {
    m = mtc::normalized(llg::heun_increment(m, p, d, llg::kDefaultDt, {}));
    const double next = llg::energy_density(m, p, d);
    REQUIRE(next <= e + 1e-12 * scale);
    e = next;
  }
}

TEST_CASE("zero temperature: Heun converges to an RK4 reference") {
  auto p = mtc::testing::default_material();
  p.T = 0.0;
  p.alpha = 0.1;
  const V3 hext{2e4, 0, 0};
  const V3 m0{std::sin(0.5), 0.0, std::cos(0.5)};
  const double dt = llg::kDefaultDt;
  const int steps = static_cast<int>(std::lround(10e-9 / dt));
  const V3 ref = rk4(m0, p, 0.0, hext, dt / 2, 2 * steps);

  llg::DriveInputs d{0.0, 0.0, {0, 1, 0}, {hext[0], hext[1], hext[2]}};
  Vec3 m{m0[0], m0[1], m0[2]};
  for (int k = 0; k < steps; ++k) {
    m = mtc::normalized(llg::heun_increment(m, p, d, dt, {}));
  }
  const double c = m.x * ref[0] + m.y * ref[1] + m.z * ref[2];
  CHECK(std::acos(std::min(1.0, c)) < 1e-4);
}

TEST_CASE("step rejects bad inputs") {
  const auto p = mtc::testing::default_material();
  Rng rng(1);
  llg::MagnetizationState s;
  CHECK_THROWS_AS(llg::step(s, p, {}, 2e-12, rng), std::invalid_argument);
  CHECK_THROWS_AS(llg::step(s, p, {}, 0.0, rng), std::invalid_argument);
  llg::DriveInputs bad;
  bad.V = NAN;
  CHECK_THROWS_AS(llg::step(s, p, bad, 1e-12, rng), std::invalid_argument);
}

TEST_CASE("simulate records samples and flips") {
  const auto p = mtc::testing::default_material();
  const auto drive = [](double) { return llg::DriveInputs{0.65, 0, {0, 1, 0}, {}}; };
  const auto rec = llg::simulate({}, p, drive, 200e-9, 17);
  REQUIRE(rec.samples.size() > 100);
  for (std::size_t i = 1; i < rec.samples.size(); ++i) {
    CHECK(rec.samples[i].t > rec.samples[i - 1].t);
  }
  const auto again = llg::simulate({}, p, drive, 200e-9, 17);
  CHECK(again.flips == rec.flips);

  std::ostringstream samples, flips;
  llg::write_trajectory_csv(rec, samples, flips);
  CHECK(samples.str().rfind("t_s,mx,my,mz\n", 0) == 0);
  CHECK(flips.str().rfind("flip_index,t_s\n", 0) == 0);
}

TEST_CASE("retention estimate does not depend on thread count") {
  const auto p = mtc::testing::default_material();
  const auto a = llg::estimate_retention(p, 0.65, 12, 2e-6, 99, {llg::kDefaultDt, 1});
  const auto b = llg::estimate_retention(p, 0.65, 12, 2e-6, 99, {llg::kDefaultDt, 3});
  CHECK(a.first_passage == b.first_passage);
  CHECK(a.tau == b.tau);
  CHECK(a.ci_low < a.tau);
  CHECK(a.tau < a.ci_high);
}

TEST_CASE("retention with no events is a lower bound") {
  const auto p = mtc::testing::default_material();
  const auto r = llg::estimate_retention(p, 0.4, 10, 1e-9, 3);
  CHECK(r.lower_bound_only);
  CHECK(r.n_events == 0);
  CHECK(std::isinf(r.ci_high));
  // one-sided 95% lower bound on the mean: total exposure / -ln(0.05)
  CHECK(r.tau == doctest::Approx(10 * 1e-9 / -std::log(0.05)));
  CHECK_THROWS_AS(llg::estimate_retention(p, 0.4, 9, 1e-9, 3), std::invalid_argument);
}

TEST_CASE("flip count over a long run agrees with the first-passage estimate") {
  const auto p = mtc::testing::default_material();
  const double v = 0.6, window = 20e-6;
  const auto est = llg::estimate_retention(p, v, 100, 5e-6, 21);
  REQUIRE(!est.lower_bound_only);
  const auto drive = [v](double) { return llg::DriveInputs{v, 0, {0, 1, 0}, {}}; };
  const auto rec = llg::simulate({}, p, drive, window, 22, {llg::kDefaultDt, 1e-9});
  const auto count = mtc::stats::poisson_count_ci(rec.flips.size(), 0.99);
  // Expected count window/tau, with tau anywhere inside its own interval.
  const double lo = window / est.ci_high, hi = window / est.ci_low;
  MESSAGE("flips " << rec.flips.size() << ", expected " << window / est.tau);
  CHECK(hi >= count.low);
  CHECK(lo <= count.high);
}

TEST_CASE("thermal fluctuation between the poles is symmetric") {
  const auto p = mtc::testing::default_material();
  const double v = 0.625;
  const double delta = mtc::device::thermal_stability(p, v);
  CHECK(delta > 2.5);
  CHECK(delta < 5.0);
  const auto drive = [v](double) { return llg::DriveInputs{v, 0, {0, 1, 0}, {}}; };
  const auto rec = llg::simulate({}, p, drive, 60e-6, 31, {llg::kDefaultDt, 1e-10});
  std::size_t up = 0;
  for (const auto& s : rec.samples) up += s.m.z > 0 ? 1 : 0;
  const double frac = static_cast<double>(up) / static_cast<double>(rec.samples.size());
  MESSAGE("flips " << rec.flips.size() << ", up fraction " << frac);
  CHECK(rec.flips.size() >= 1000);
  CHECK(std::abs(frac - 0.5) < 0.05);
}

TEST_CASE("switching probability follows the sign of the current") {
  const auto p = mtc::testing::default_material();
  llg::SwitchOptions opts;
  opts.geometry.hx = -7957.747;
  const auto lo = llg::estimate_switch_prob(p, 0.5, 20e-9, -6e-6, 100, 4, opts);
  const auto hi = llg::estimate_switch_prob(p, 0.5, 20e-9, 6e-6, 100, 4, opts);
  CHECK(lo.p_hat < 0.3);
  CHECK(hi.p_hat > 0.7);
  CHECK(lo.n_trials == 100);
  CHECK(hi.sigma() == doctest::Approx(std::sqrt(hi.p_hat * (1 - hi.p_hat) / 100)));
  CHECK_THROWS_AS(llg::estimate_switch_prob(p, 0.5, 20e-9, 0, 99, 4, opts),
                  std::invalid_argument);
}
