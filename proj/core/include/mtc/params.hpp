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

#ifndef MTC_PARAMS_HPP_
#define MTC_PARAMS_HPP_

#include <stdexcept>
#include <string>

namespace mtc {

// Thrown when a parameter set violates its physical invariants.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Physical description of one VC-SOT MTJ stack. SI units throughout.
struct MaterialParams {
  double Ms = 0.0;         // saturation magnetization [A/m]
  double Ki = 0.0;         // interfacial PMA coefficient [J/m^2]
  double xi = 0.0;         // VCMA coefficient [J/(V·m)]
  double t_fl = 0.0;       // free-layer thickness [m]
  double area = 0.0;       // junction area [m^2]
  double Nx = 0.0;         // demagnetization factors
  double Ny = 0.0;
  double Nz = 0.0;
  double alpha = 0.0;      // Gilbert damping
  double theta_sot = 0.0;  // spin Hall angle
  double T = 300.0;        // temperature [K]
  double tau0 = 1e-9;      // attempt time [s]

  double volume() const { return area * t_fl; }

  // Throws ParameterError on the first violated invariant.
  void validate() const;
};

// Fitted constants of the closed-form (behavioral) tier.
//
// switching_rate = alpha1 * exp(alpha2 * V), with alpha2 > 0 so that the rate
// grows with junction voltage. The junction relaxes toward V0 with inverse
// time constant beta = 1/(R*C). gamma1 and gamma2 set the SOT bias logit at
// the reference voltage V_ref.
struct BehavioralParams {
  double alpha1 = 0.0;  // [1/s]
  double alpha2 = 0.0;  // [1/V]
  double gamma1 = 0.0;  // [-]
  double gamma2 = 0.0;  // [1/A]
  double V0 = 0.0;      // [V]
  double R = 0.0;       // [Ohm]
  double C = 0.0;       // [F]
  double V_ref = 0.5;   // [V]

  double beta() const { return 1.0 / (R * C); }

  void validate() const;
};

}  // namespace mtc

#endif  // MTC_PARAMS_HPP_
