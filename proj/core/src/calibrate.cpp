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


#include "mtc/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mtc/device_physics.hpp"
#include "mtc/random.hpp"

namespace mtc::calibrate {

namespace {

std::string describe(const char* what, double x) {
  std::ostringstream s;
  s << what << " at " << x;
  return s.str();
}

}  // namespace

CalibrationResult fit_behavioral(const std::vector<RetentionPoint>& retention,
                                 const std::vector<SwitchPoint>& switching,
                                 double v_pulse, const MaterialParams& material,
                                 const BehavioralParams& base) {
  std::vector<std::string> diag;
  if (retention.size() < 4) diag.push_back("retention sweep needs >= 4 voltages");
  if (switching.size() < 5) diag.push_back("bias sweep needs >= 5 currents");
  if (!diag.empty()) throw CalibrationError("sweep too small", diag);

  CalibrationResult out;
  out.retention = retention;
  out.switching = switching;
  std::ranges::sort(out.retention, {}, &RetentionPoint::V);
  std::ranges::sort(out.switching, {}, &SwitchPoint::I);

  // Retention: ln f = -ln tau must rise strictly with V.
  std::vector<double> vs, log_rates;
  for (const auto& r : out.retention) {
    if (r.lower_bound_only) {
      diag.push_back(describe("no switching event within the horizon", r.V));
    } else if (!(r.tau > 0.0) || !std::isfinite(r.tau)) {
      diag.push_back(describe("invalid retention estimate", r.V));
    }
    vs.push_back(r.V);
    log_rates.push_back(-std::log(r.tau));
  }
  for (std::size_t i = 1; i < out.retention.size(); ++i) {
    if (out.retention[i].V == out.retention[i - 1].V) {
      diag.push_back(describe("repeated voltage", out.retention[i].V));
    } else if (!(out.retention[i].tau < out.retention[i - 1].tau)) {
      diag.push_back(describe("retention does not fall with voltage", out.retention[i].V));
    }
  }
  if (!diag.empty()) throw CalibrationError("retention sweep rejected", diag);

  out.rate_fit = stats::fit_line(vs, log_rates);
  if (!(out.rate_fit.slope > 0.0)) {
    throw CalibrationError("retention sweep rejected",
                           {"fitted switching rate does not grow with voltage"});
  }

  // Bias: monotone within 3 sigma in the direction of the end points.
  const auto& sw = out.switching;
  const double dir = sw.back().p_hat() >= sw.front().p_hat() ? 1.0 : -1.0;
  bool all_same = true;
  for (std::size_t i = 0; i < sw.size(); ++i) {
    if (sw[i].n_trials == 0) diag.push_back(describe("no trials", sw[i].I));
    if (sw[i].p_hat() != sw.front().p_hat()) all_same = false;
    if (i > 0 && sw[i].I == sw[i - 1].I) diag.push_back(describe("repeated current", sw[i].I));
    for (std::size_t j = i + 1; j < sw.size(); ++j) {
      const double si = stats::binomial_sigma(sw[i].p_hat(), sw[i].n_trials);
      const double sj = stats::binomial_sigma(sw[j].p_hat(), sw[j].n_trials);
      const double tol = 3.0 * std::max(std::hypot(si, sj), 1e-3);
      if (dir * (sw[j].p_hat() - sw[i].p_hat()) < -tol) {
        diag.push_back(describe("bias curve is not monotone", sw[j].I));
      }
    }
  }
  if (all_same) diag.push_back("bias curve is flat; no current dependence to fit");
  if (!diag.empty()) throw CalibrationError("bias sweep rejected", diag);

  std::vector<double> is, succ, trials;
  for (const auto& s : sw) {
    is.push_back(s.I);
    succ.push_back(static_cast<double>(s.n_ap));
    trials.push_back(static_cast<double>(s.n_trials));
  }
  out.bias_fit = stats::fit_logistic(is, succ, trials);
  if (!out.bias_fit.converged) {
    throw CalibrationError("bias sweep rejected",
                           {"logistic fit did not converge (separated data)"});
  }
  const double delta_ref = device::thermal_stability(material, base.V_ref);
  const double delta_pulse = device::thermal_stability(material, v_pulse);
  if (!(delta_ref > 0.0) || !(delta_pulse > 0.0)) {
    throw CalibrationError("bias sweep rejected",
                           {"barrier vanishes at the reference or pulse voltage"});
  }
  const double beta_eff = delta_pulse / delta_ref;

  out.params = base;
  out.params.alpha1 = std::exp(out.rate_fit.intercept);
  out.params.alpha2 = out.rate_fit.slope;
  out.params.gamma1 = out.bias_fit.intercept / beta_eff;
  out.params.gamma2 = out.bias_fit.slope / beta_eff;

  double ss = 0.0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const double fitted = out.rate_fit.intercept + out.rate_fit.slope * vs[i];
    out.residuals.push_back({"log_rate", vs[i], log_rates[i], fitted,
                             log_rates[i] - fitted});
    ss += (log_rates[i] - fitted) * (log_rates[i] - fitted);
  }
  out.rms_log_rate_residual = std::sqrt(ss / static_cast<double>(vs.size()));
  for (const auto& s : sw) {
    const double fitted =
        device::logistic(out.bias_fit.intercept + out.bias_fit.slope * s.I);
    out.residuals.push_back({"bias", s.I, s.p_hat(), fitted, s.p_hat() - fitted});
    out.max_bias_deviation =
        std::max(out.max_bias_deviation, std::abs(s.p_hat() - fitted));
  }
  return out;
}

CalibrationResult calibrate(const MaterialParams& material,
                            const SweepSpec& spec, const BehavioralParams& base,
                            std::uint64_t seed) {
  material.validate();
  if (spec.voltages.size() < 4 || spec.currents.size() < 5) {
    throw CalibrationError("sweep too small",
                           {"need >= 4 voltages and >= 5 currents"});
  }
  std::vector<RetentionPoint> retention;
  llg::RetentionOptions ropts{spec.dt, spec.threads};
  for (std::size_t i = 0; i < spec.voltages.size(); ++i) {
    const double v = spec.voltages[i];
    const auto est = llg::estimate_retention(
        material, v, spec.retention_trials, spec.horizon,
        derive_seed(seed, SeedStream::kRetention, i), ropts);
    retention.push_back({v, est.tau, est.lower_bound_only});
  }
  std::vector<SwitchPoint> switching;
  llg::SwitchOptions sopts{spec.geometry, spec.settle_time, spec.dt, spec.threads};
  for (std::size_t i = 0; i < spec.currents.size(); ++i) {
    const double current = spec.currents[i];
    const auto est = llg::estimate_switch_prob(
        material, spec.v_pulse, spec.t_pulse, current, spec.switch_trials,
        derive_seed(seed, SeedStream::kSwitchProbability, i), sopts);
    switching.push_back({current, est.n_ap, est.n_trials});
  }
  return fit_behavioral(retention, switching, spec.v_pulse, material, base);
}

}  // namespace mtc::calibrate
