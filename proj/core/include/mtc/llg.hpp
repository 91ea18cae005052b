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

#ifndef MTC_LLG_HPP_
#define MTC_LLG_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "mtc/constants.hpp"
#include "mtc/params.hpp"
#include "mtc/random.hpp"
#include "mtc/vec3.hpp"

// Stochastic macrospin Landau-Lifshitz-Gilbert model of the free layer:
// VCMA-modulated perpendicular anisotropy, demagnetization, external field,
// a Brown thermal field and the damping-like spin-orbit torque.
namespace mtc::llg {

inline constexpr double kDefaultDt = 0.5e-12;  // [s]
inline constexpr double kMaxDt = 1e-12;        // [s]
// m_z must pass beyond -/+ this value for a flip to be recorded.
inline constexpr double kFlipThreshold = 0.5;

struct MagnetizationState {
  Vec3 m{0.0, 0.0, 1.0};
  double t = 0.0;  // [s]
};

struct DriveInputs {
  double V = 0.0;                 // junction voltage [V]
  double J = 0.0;                 // SOT current density [A/m^2]
  Vec3 sigma{0.0, 1.0, 0.0};      // spin polarization, unit vector
  Vec3 H_ext{};                   // external field [A/m]
};

using DriveProfile = std::function<DriveInputs(double t)>;

struct TrajectorySample {
  double t = 0.0;
  Vec3 m{};
};

struct TrajectoryRecord {
  std::vector<TrajectorySample> samples;  // strictly increasing t
  std::vector<double> flips;              // flip times [s]
  std::uint64_t seed = 0;
};

// H_eff = H_anis(V)*m_z*z + H_demag(m) + H_ext + h_th [A/m] where
// H_anis(V) = 2*Ki_eff(V)/(mu0*Ms*t_fl) and H_demag = -Ms*(Nx mx, Ny my, Nz mz).
Vec3 effective_field(const MagnetizationState& s, const MaterialParams& p,
                     const DriveInputs& d, const Vec3& h_thermal);

// Damping-like SOT, gamma*hbar*theta*J/(2*e*Ms*t_fl) * m x (sigma x m) [1/s].
// gamma is in rad/(s·T); the prefactor is the spin-Hall effective field in
// tesla times gamma.
Vec3 sot_torque(const MagnetizationState& s, const MaterialParams& p,
                const DriveInputs& d);

// dm/dt of the Gilbert equation dm/dt = -gamma*mu0*m x H + alpha*m x dm/dt +
// tau_SOT, solved for dm/dt (Landau-Lifshitz form).
Vec3 rhs(const Vec3& m, const MaterialParams& p, const DriveInputs& d,
         const Vec3& h_thermal);

// Anisotropy + demagnetization + Zeeman energy density [J/m^3].
double energy_density(const Vec3& m, const MaterialParams& p,
                      const DriveInputs& d);

// Standard deviation of each thermal-field component for a step dt [A/m]:
// sqrt(2*alpha*kB*T / (gamma*mu0^2*Ms*Vol*dt)).
double thermal_field_sigma(const MaterialParams& p, double dt);

// One stochastic Heun (Stratonovich) step with a caller-supplied thermal
// field, without renormalization. Exposed for norm-drift checks.
Vec3 heun_increment(const Vec3& m, const MaterialParams& p,
                    const DriveInputs& d, double dt, const Vec3& h_thermal);

// One stochastic Heun step followed by renormalization. Throws
// std::invalid_argument for dt outside (0, kMaxDt] or non-finite inputs.
MagnetizationState step(const MagnetizationState& s, const MaterialParams& p,
                        const DriveInputs& d, double dt, Rng& rng);

// Tracks which hemisphere the free layer is committed to, with hysteresis.
class FlipDetector {
 public:
  explicit FlipDetector(double mz0) : side_(mz0 >= 0 ? 1 : -1) {}

  // Returns true when m_z has crossed to beyond the opposite threshold.
  bool update(double mz) {
    if (side_ > 0 && mz < -kFlipThreshold) {
      side_ = -1;
      return true;
    }
    if (side_ < 0 && mz > kFlipThreshold) {
      side_ = 1;
      return true;
    }
    return false;
  }
  int side() const { return side_; }

 private:
  int side_;
};

struct SimulateOptions {
  double dt = kDefaultDt;
  double sample_interval = 1e-10;  // [s]; samples at multiples of this
};

// Integrates from m0 over `duration` with a seeded stream. duration == 0
// yields the initial sample only.
TrajectoryRecord simulate(const MagnetizationState& m0, const MaterialParams& p,
                          const DriveProfile& drive, double duration,
                          std::uint64_t seed, const SimulateOptions& opts = {});

struct RetentionOptions {
  double dt = kDefaultDt;
  unsigned threads = 1;
};

struct RetentionEstimate {
  double tau = 0.0;      // MLE of the mean first-passage time [s]
  double ci_low = 0.0;   // 95% confidence interval [s]
  double ci_high = 0.0;
  std::size_t n_trials = 0;
  std::size_t n_events = 0;
  std::size_t n_censored = 0;
  bool lower_bound_only = false;  // every trial reached the horizon
  std::vector<double> first_passage;  // per trial; horizon if censored
};

// Mean time to the first hemisphere flip from the +z pole at fixed voltage,
// no SOT, no field. Trials are censored at `horizon`; the estimate is the
// exponential MLE total_time/events with a chi-square 95% interval. Trial k
// uses derive_seed(seed, kRetention, k).
RetentionEstimate estimate_retention(const MaterialParams& p, double volts,
                                     std::size_t n_trials, double horizon,
                                     std::uint64_t seed,
                                     const RetentionOptions& opts = {});

// Heavy-metal bus cross-section and the in-plane field needed to make
// damping-like SOT select between +z and -z.
struct SotGeometry {
  double bus_width = 100e-9;     // [m]
  double bus_thickness = 5e-9;   // [m]
  double hx = 20.0 * constants::kOerstedToAm;  // [A/m], 20 Oe

  double current_density(double current) const {
    return current / (bus_width * bus_thickness);
  }
};

struct SwitchOptions {
  SotGeometry geometry{};
  // After the pulse the current and voltage are removed for this long so the
  // state detector reads a settled pole rather than an equatorial transient.
  double settle_time = 2e-9;  // [s]
  double dt = kDefaultDt;
  unsigned threads = 1;
};

struct SwitchEstimate {
  double p_hat = 0.0;  // fraction of trials ending AP (m_z < 0)
  std::size_t n_ap = 0;
  std::size_t n_trials = 0;
  double sigma() const;  // binomial standard error
};

// Fraction of trials in the AP state after a (V_pulse, t_pulse) pulse
// carrying SOT current I, starting from a random pole. Trial k uses
// derive_seed(seed, kSwitchProbability, k).
SwitchEstimate estimate_switch_prob(const MaterialParams& p, double v_pulse,
                                    double t_pulse, double current,
                                    std::size_t n_trials, std::uint64_t seed,
                                    const SwitchOptions& opts = {});

// Columns t_s,mx,my,mz and flip_index,t_s.
void write_trajectory_csv(const TrajectoryRecord& rec, std::ostream& samples,
                          std::ostream& flips);

}  // namespace mtc::llg

#endif  // MTC_LLG_HPP_
