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

#ifndef MTC_DEVICE_PHYSICS_HPP_
#define MTC_DEVICE_PHYSICS_HPP_

#include "mtc/constants.hpp"
#include "mtc/params.hpp"

// Closed-form device model of a voltage-controlled SOT magnetic tunnel
// junction: VCMA-modulated anisotropy, thermal stability, retention, switching
// rate, RC relaxation of the junction voltage and SOT-biased state occupancy.
//
// The demagnetization energy is written in SI form, (mu0/2)(Nz - Ny) Ms^2,
// which is the Gaussian 2*pi*(Nz - Ny)*Ms^2 with Ms in A/m.
namespace mtc::device {

// exp(min(x, cap)).
double saturating_exp(double x, double cap = constants::kExpCap);

// Numerically stable 1 / (1 + exp(-x)).
double logistic(double x);

// Ki - xi*V/t_fl [J/m^2].
double effective_ki(const MaterialParams& p, double volts);

// Energy barrier between the two perpendicular states in units of kB*T.
// Negative values mean the free layer prefers the plane; they are returned
// unchanged.
double thermal_stability(const MaterialParams& p, double volts);

// The voltage at which thermal_stability crosses zero.
double zero_barrier_voltage(const MaterialParams& p);

// Mean dwell time tau0*exp(Delta(V) - mu0*Ms*H_B*t_fl*A/(kB*T)) [s]. H_B >= 0
// lowers the barrier. If the exponent exceeds `cap` the result is
// +infinity, meaning the state is retained for any practical horizon.
double retention_time(const MaterialParams& p, double volts,
                      double bias_field = 0.0,
                      double cap = constants::kExpCap);

// alpha1*exp(alpha2*V) [1/s].
double switching_rate(const BehavioralParams& b, double volts);

// V0 + (V_init - V0)*exp(-beta*t); the solution of dV/dt = -beta*(V - V0).
double junction_voltage(const BehavioralParams& b, double v_init, double t);

// Temperature scaling of the bias logit, Delta(V)/Delta(V_ref) clamped at 0.
double effective_beta(const BehavioralParams& b, const MaterialParams& p,
                      double volts);

// Probability of the AP state under SOT current I at junction voltage V:
// logistic(beta_eff(V) * (gamma1 + gamma2*I)).
double bias_probability(const BehavioralParams& b, const MaterialParams& p,
                        double current, double volts);

}  // namespace mtc::device

#endif  // MTC_DEVICE_PHYSICS_HPP_
