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


#ifndef MTC_CALIBRATE_HPP_
#define MTC_CALIBRATE_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtc/llg.hpp"
#include "mtc/params.hpp"
#include "mtc/stats.hpp"

namespace mtc::calibrate {

struct SweepSpec {
  std::vector<double> voltages;  // retention sweep [V], at least 4 points
  std::size_t retention_trials = 100;
  double horizon = 5e-6;  // [s]

  std::vector<double> currents;  // bias sweep at v_pulse [A], at least 5 points
  std::size_t switch_trials = 500;
  double v_pulse = 0.5;   // [V]
  double t_pulse = 50e-9; // [s]
  llg::SotGeometry geometry{};
  double settle_time = 2e-9;  // [s]

  double dt = llg::kDefaultDt;
  unsigned threads = 1;
};

struct RetentionPoint {
  double V = 0.0;
  double tau = 0.0;  // [s]
  bool lower_bound_only = false;
};

struct SwitchPoint {
  double I = 0.0;
  std::size_t n_ap = 0;
  std::size_t n_trials = 0;

  double p_hat() const {
    return n_trials ? static_cast<double>(n_ap) / static_cast<double>(n_trials)
                    : 0.0;
  }
};

struct Residual {
  std::string kind;  // "log_rate" or "bias"
  double x = 0.0;
  double observed = 0.0;
  double fitted = 0.0;
  double residual = 0.0;
};

struct CalibrationResult {
  BehavioralParams params;
  stats::LinearFit rate_fit;    // ln f_sw = ln(alpha1) + alpha2 V
  stats::LogisticFit bias_fit;  // logit P_AP at v_pulse
  std::vector<RetentionPoint> retention;
  std::vector<SwitchPoint> switching;
  std::vector<Residual> residuals;
  double rms_log_rate_residual = 0.0;
  double max_bias_deviation = 0.0;
};

class CalibrationError : public std::runtime_error {
 public:
  CalibrationError(const std::string& what, std::vector<std::string> diagnostics)
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

// Fits alpha1, alpha2, gamma1, gamma2 to measured points. V0, R, C and V_ref
// are copied from `base`. Bias points measured at v_pulse != V_ref are
// rescaled by the barrier ratio so the result applies at V_ref.
CalibrationResult fit_behavioral(const std::vector<RetentionPoint>& retention,
                                 const std::vector<SwitchPoint>& switching,
                                 double v_pulse, const MaterialParams& material,
                                 const BehavioralParams& base);

// Runs the LLG sweeps, then fit_behavioral.
CalibrationResult calibrate(const MaterialParams& material,
                            const SweepSpec& spec, const BehavioralParams& base,
                            std::uint64_t seed);

}  // namespace mtc::calibrate

#endif  // MTC_CALIBRATE_HPP_
