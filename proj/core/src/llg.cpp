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

#include "mtc/llg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "mtc/constants.hpp"
#include "mtc/csv.hpp"
#include "mtc/device_physics.hpp"
#include "mtc/parallel.hpp"
#include "mtc/stats.hpp"

namespace mtc::llg {

using constants::kGyromagneticRatio;
using constants::kMu0;

Vec3 effective_field(const MagnetizationState& s, const MaterialParams& p,
                     const DriveInputs& d, const Vec3& h_thermal) {
  const Vec3& m = s.m;
  const double h_anis =
      2.0 * device::effective_ki(p, d.V) / (kMu0 * p.Ms * p.t_fl);
  Vec3 h{-p.Ms * p.Nx * m.x, -p.Ms * p.Ny * m.y,
         (h_anis - p.Ms * p.Nz) * m.z};
  h += d.H_ext;
  h += h_thermal;
  return h;
}

namespace {

// gamma * B_SH with B_SH = hbar*theta*J/(2*e*Ms*t_fl) in tesla.
double sot_prefactor(const MaterialParams& p, double current_density) {
  return kGyromagneticRatio * constants::kHbar * p.theta_sot *
         current_density /
         (2.0 * constants::kElectronCharge * p.Ms * p.t_fl);
}

Vec3 sot_term(const Vec3& m, double prefactor, const Vec3& sigma) {
  if (prefactor == 0.0) return {};
  return prefactor * cross(m, cross(sigma, m));
}

}  // namespace

Vec3 sot_torque(const MagnetizationState& s, const MaterialParams& p,
                const DriveInputs& d) {
  return sot_term(s.m, sot_prefactor(p, d.J), d.sigma);
}

namespace {

// Precomputed coefficients for repeated integration at fixed material.
class Integrator {
 public:
  Integrator(const MaterialParams& p, double dt)
      : p_(p),
        dt_(dt),
        gilbert_(1.0 / (1.0 + p.alpha * p.alpha)),
        precession_(kGyromagneticRatio * kMu0),
        noise_sigma_(thermal_field_sigma(p, dt)) {}

  void set_drive(const DriveInputs& d) {
    drive_ = d;
    h_anis_minus_demag_ =
        2.0 * device::effective_ki(p_, d.V) / (kMu0 * p_.Ms * p_.t_fl) -
        p_.Ms * p_.Nz;
    sot_ = sot_prefactor(p_, d.J);
  }

  Vec3 field(const Vec3& m, const Vec3& h_th) const {
    return Vec3{-p_.Ms * p_.Nx * m.x, -p_.Ms * p_.Ny * m.y,
                h_anis_minus_demag_ * m.z} +
           drive_.H_ext + h_th;
  }

  Vec3 derivative(const Vec3& m, const Vec3& h_th) const {
    const Vec3 a = -precession_ * cross(m, field(m, h_th)) +
                   sot_term(m, sot_, drive_.sigma);
    return gilbert_ * (a + p_.alpha * cross(m, a));
  }

  Vec3 heun(const Vec3& m, const Vec3& h_th) const {
    const Vec3 k1 = derivative(m, h_th);
    const Vec3 predictor = m + dt_ * k1;
    const Vec3 k2 = derivative(predictor, h_th);
    return m + (0.5 * dt_) * (k1 + k2);
  }

  Vec3 draw_thermal(Rng& rng) {
    if (noise_sigma_ == 0.0) return {};
    return {noise_sigma_ * normal_(rng), noise_sigma_ * normal_(rng),
            noise_sigma_ * normal_(rng)};
  }

  Vec3 step(const Vec3& m, Rng& rng) {
    return normalized(heun(m, draw_thermal(rng)));
  }

  double dt() const { return dt_; }

 private:
  MaterialParams p_;
  double dt_;
  double gilbert_;
  double precession_;
  double noise_sigma_;
  DriveInputs drive_{};
  double h_anis_minus_demag_ = 0.0;
  double sot_ = 0.0;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

void check_dt(double dt) {
  if (!(dt > 0.0) || dt > kMaxDt) {
    throw std::invalid_argument("llg: dt must lie in (0, 1 ps]");
  }
}

}  // namespace

Vec3 rhs(const Vec3& m, const MaterialParams& p, const DriveInputs& d,
         const Vec3& h_thermal) {
  Integrator integ(p, kDefaultDt);
  integ.set_drive(d);
  return integ.derivative(m, h_thermal);
}

double energy_density(const Vec3& m, const MaterialParams& p,
                      const DriveInputs& d) {
  const double k_eff = device::effective_ki(p, d.V) / p.t_fl;
  const double demag = 0.5 * kMu0 * p.Ms * p.Ms *
                       (p.Nx * m.x * m.x + p.Ny * m.y * m.y + p.Nz * m.z * m.z);
  return -k_eff * m.z * m.z + demag - kMu0 * p.Ms * dot(d.H_ext, m);
}

double thermal_field_sigma(const MaterialParams& p, double dt) {
  if (p.T == 0.0) return 0.0;
  return std::sqrt(2.0 * p.alpha * constants::kBoltzmann * p.T /
                   (kGyromagneticRatio * kMu0 * kMu0 * p.Ms * p.volume() * dt));
}

Vec3 heun_increment(const Vec3& m, const MaterialParams& p,
                    const DriveInputs& d, double dt, const Vec3& h_thermal) {
  check_dt(dt);
  Integrator integ(p, dt);
  integ.set_drive(d);
  return integ.heun(m, h_thermal);
}

MagnetizationState step(const MagnetizationState& s, const MaterialParams& p,
                        const DriveInputs& d, double dt, Rng& rng) {
  check_dt(dt);
  if (!is_finite(s.m) || !std::isfinite(s.t) || !std::isfinite(d.V) ||
      !std::isfinite(d.J) || !is_finite(d.sigma) || !is_finite(d.H_ext)) {
    throw std::invalid_argument("llg::step: non-finite input");
  }
  Integrator integ(p, dt);
  integ.set_drive(d);
  return {integ.step(s.m, rng), s.t + dt};
}

TrajectoryRecord simulate(const MagnetizationState& m0, const MaterialParams& p,
                          const DriveProfile& drive, double duration,
                          std::uint64_t seed, const SimulateOptions& opts) {
  check_dt(opts.dt);
  if (!(duration >= 0.0)) {
    throw std::invalid_argument("llg::simulate: duration must be >= 0");
  }
  if (!(opts.sample_interval > 0.0)) {
    throw std::invalid_argument("llg::simulate: sample_interval must be > 0");
  }
  TrajectoryRecord rec;
  rec.seed = seed;
  rec.samples.push_back({m0.t, m0.m});

  Rng rng(seed);
  Integrator integ(p, opts.dt);
  FlipDetector detector(m0.m.z);
  const auto n_steps = static_cast<std::size_t>(std::llround(duration / opts.dt));
  const auto sample_every = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(opts.sample_interval / opts.dt)));

  Vec3 m = m0.m;
  for (std::size_t k = 1; k <= n_steps; ++k) {
    const double t_prev = m0.t + static_cast<double>(k - 1) * opts.dt;
    integ.set_drive(drive(t_prev));
    m = integ.step(m, rng);
    const double t = m0.t + static_cast<double>(k) * opts.dt;
    if (detector.update(m.z)) rec.flips.push_back(t);
    if (k % sample_every == 0 || k == n_steps) rec.samples.push_back({t, m});
  }
  return rec;
}

RetentionEstimate estimate_retention(const MaterialParams& p, double volts,
                                     std::size_t n_trials, double horizon,
                                     std::uint64_t seed,
                                     const RetentionOptions& opts) {
  if (n_trials < 10) {
    throw std::invalid_argument("estimate_retention: n_trials must be >= 10");
  }
  if (!(horizon > 0.0)) {
    throw std::invalid_argument("estimate_retention: horizon must be > 0");
  }
  check_dt(opts.dt);

  RetentionEstimate est;
  est.n_trials = n_trials;
  est.first_passage.assign(n_trials, horizon);
  std::vector<char> censored(n_trials, 1);
  const auto max_steps = static_cast<std::size_t>(std::ceil(horizon / opts.dt));

  parallel_for(n_trials, opts.threads, [&](std::size_t k) {
    Rng rng(derive_seed(seed, SeedStream::kRetention, k));
    Integrator integ(p, opts.dt);
    DriveInputs d;
    d.V = volts;
    integ.set_drive(d);
    Vec3 m{0.0, 0.0, 1.0};
    FlipDetector detector(m.z);
    for (std::size_t step_i = 1; step_i <= max_steps; ++step_i) {
      m = integ.step(m, rng);
      if (detector.update(m.z)) {
        est.first_passage[k] = static_cast<double>(step_i) * opts.dt;
        censored[k] = 0;
        return;
      }
    }
  });

  double total = 0.0;
  for (std::size_t k = 0; k < n_trials; ++k) {
    total += est.first_passage[k];
    if (censored[k]) {
      ++est.n_censored;
    } else {
      ++est.n_events;
    }
  }
  if (est.n_events == 0) {
    // One-sided 95% lower bound from zero events: -ln(0.05) ~ 2.996.
    est.lower_bound_only = true;
    est.tau = total / -std::log(0.05);
    est.ci_low = est.tau;
    est.ci_high = std::numeric_limits<double>::infinity();
    return est;
  }
  est.tau = total / static_cast<double>(est.n_events);
  const auto ci = stats::exponential_mean_ci(total, est.n_events, 0.95);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  return est;
}

double SwitchEstimate::sigma() const {
  return stats::binomial_sigma(p_hat, n_trials);
}

SwitchEstimate estimate_switch_prob(const MaterialParams& p, double v_pulse,
                                    double t_pulse, double current,
                                    std::size_t n_trials, std::uint64_t seed,
                                    const SwitchOptions& opts) {
  if (n_trials < 100) {
    throw std::invalid_argument("estimate_switch_prob: n_trials must be >= 100");
  }
  if (!(t_pulse > 0.0)) {
    throw std::invalid_argument("estimate_switch_prob: t_pulse must be > 0");
  }
  check_dt(opts.dt);

  DriveInputs d;
  d.V = v_pulse;
  d.J = opts.geometry.current_density(current);
  d.sigma = {0.0, 1.0, 0.0};
  d.H_ext = {opts.geometry.hx, 0.0, 0.0};
  DriveInputs settle;
  settle.H_ext = d.H_ext;
  const auto n_steps = static_cast<std::size_t>(std::llround(t_pulse / opts.dt));
  const auto n_settle =
      static_cast<std::size_t>(std::llround(opts.settle_time / opts.dt));

  std::vector<char> ends_ap(n_trials, 0);
  parallel_for(n_trials, opts.threads, [&](std::size_t k) {
    Rng rng(derive_seed(seed, SeedStream::kSwitchProbability, k));
    const bool start_ap = std::bernoulli_distribution(0.5)(rng);
    Integrator integ(p, opts.dt);
    integ.set_drive(d);
    Vec3 m{0.0, 0.0, start_ap ? -1.0 : 1.0};
    for (std::size_t s = 0; s < n_steps; ++s) m = integ.step(m, rng);
    integ.set_drive(settle);
    for (std::size_t s = 0; s < n_settle; ++s) m = integ.step(m, rng);
    ends_ap[k] = m.z < 0.0 ? 1 : 0;
  });

  SwitchEstimate est;
  est.n_trials = n_trials;
  for (char c : ends_ap) est.n_ap += static_cast<std::size_t>(c);
  est.p_hat = static_cast<double>(est.n_ap) / static_cast<double>(n_trials);
  return est;
}

void write_trajectory_csv(const TrajectoryRecord& rec, std::ostream& samples,
                          std::ostream& flips) {
  csv::Writer s(samples);
  s.header({"t_s", "mx", "my", "mz"});
  for (const auto& smp : rec.samples) {
    s.field(smp.t).field(smp.m.x).field(smp.m.y).field(smp.m.z).end_row();
  }
  csv::Writer f(flips);
  f.header({"flip_index", "t_s"});
  for (std::size_t i = 0; i < rec.flips.size(); ++i) {
    f.field(static_cast<std::uint64_t>(i)).field(rec.flips[i]).end_row();
  }
}

}  // namespace mtc::llg
