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

#include "mtc/device_physics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mtc {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw ParameterError(what);
}

}  // namespace

void MaterialParams::validate() const {
  require(std::isfinite(Ms) && Ms > 0, "material.Ms must be > 0");
  require(std::isfinite(t_fl) && t_fl > 0, "material.t_fl must be > 0");
  require(std::isfinite(area) && area > 0, "material.area must be > 0");
  require(std::isfinite(T) && T > 0, "material.T must be > 0");
  require(std::isfinite(tau0) && tau0 > 0, "material.tau0 must be > 0");
  require(std::isfinite(Ki) && std::isfinite(xi) && std::isfinite(theta_sot),
          "material.Ki, material.xi and material.theta_sot must be finite");
  require(std::abs(Nx + Ny + Nz - 1.0) <= 1e-9,
          "demagnetization factors must sum to 1");
  require(Nx >= 0 && Ny >= 0 && Nz >= 0,
          "demagnetization factors must be non-negative");
  require(alpha > 0 && alpha <= 1, "material.alpha must lie in (0, 1]");
}

void BehavioralParams::validate() const {
  require(std::isfinite(alpha1) && alpha1 > 0, "behavioral.alpha1 must be > 0");
  require(std::isfinite(alpha2) && alpha2 > 0, "behavioral.alpha2 must be > 0");
  require(std::isfinite(R) && R > 0, "behavioral.R must be > 0");
  require(std::isfinite(C) && C > 0, "behavioral.C must be > 0");
  require(std::isfinite(gamma1) && std::isfinite(gamma2) &&
              std::isfinite(V0) && std::isfinite(V_ref),
          "behavioral parameters must be finite");
}

namespace device {

double saturating_exp(double x, double cap) { return std::exp(std::min(x, cap)); }

double logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double effective_ki(const MaterialParams& p, double volts) {
  return p.Ki - p.xi * volts / p.t_fl;
}

namespace {

double demag_energy_per_area(const MaterialParams& p) {
  return 0.5 * constants::kMu0 * (p.Nz - p.Ny) * p.Ms * p.Ms * p.t_fl;
}

double thermal_energy(const MaterialParams& p) {
  return constants::kBoltzmann * p.T;
}

}  // namespace

double thermal_stability(const MaterialParams& p, double volts) {
  return (effective_ki(p, volts) - demag_energy_per_area(p)) * p.area /
         thermal_energy(p);
}

double zero_barrier_voltage(const MaterialParams& p) {
  return (p.Ki - demag_energy_per_area(p)) * p.t_fl / p.xi;
}

double retention_time(const MaterialParams& p, double volts, double bias_field,
                      double cap) {
  const double zeeman = constants::kMu0 * p.Ms * bias_field * p.t_fl * p.area /
                        thermal_energy(p);
  const double exponent = thermal_stability(p, volts) - zeeman;
  if (exponent > cap) return std::numeric_limits<double>::infinity();
  return p.tau0 * std::exp(exponent);
}

double switching_rate(const BehavioralParams& b, double volts) {
  return b.alpha1 * saturating_exp(b.alpha2 * volts);
}

double junction_voltage(const BehavioralParams& b, double v_init, double t) {
  return b.V0 + (v_init - b.V0) * std::exp(-b.beta() * t);
}

double effective_beta(const BehavioralParams& b, const MaterialParams& p,
                      double volts) {
  const double ref = thermal_stability(p, b.V_ref);
  if (!(ref > 0)) {
    throw ParameterError("thermal stability at behavioral.V_ref must be > 0");
  }
  return std::max(0.0, thermal_stability(p, volts) / ref);
}

double bias_probability(const BehavioralParams& b, const MaterialParams& p,
                        double current, double volts) {
  return logistic(effective_beta(b, p, volts) * (b.gamma1 + b.gamma2 * current));
}

}  // namespace device
}  // namespace mtc
