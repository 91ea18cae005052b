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

#ifndef MTC_CORE_HPP_
#define MTC_CORE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mtc/params.hpp"
#include "mtc/random.hpp"

// One Magnetic Thermodynamic Core: weighted-sum current drive, a voltage
// (temperature) schedule, and the behavioral two-state machine of the MTJ.
namespace mtc::core {

// State encoding: 0 = P (low resistance), 1 = AP (high resistance).
struct CoreState {
  std::uint8_t S = 0;
  double V = 0.0;  // junction voltage [V]
  double I = 0.0;  // SOT current [A]
  double t = 0.0;  // local time [s]
};

// Thrown on malformed weights, peer lists and schedules.
class StructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Breakpoint {
  double t = 0.0;  // [s]
  double V = 0.0;  // [V]
};

// Junction-voltage schedule: the RC relaxation V0 + (V_init - V0)e^{-beta t},
// or a piecewise-linear table clamped at its endpoints.
class Schedule {
 public:
  enum class Kind { kRcDecay, kTable };

  static Schedule rc_decay(double v_init, double v0, double beta);
  static Schedule rc_decay(const BehavioralParams& b, double v_init);
  static Schedule table(std::vector<Breakpoint> points);
  static Schedule constant(double volts);

  Kind kind() const { return kind_; }
  double v_init() const { return v_init_; }
  double v0() const { return v0_; }
  double beta() const { return beta_; }
  const std::vector<Breakpoint>& points() const { return points_; }

  double voltage(double t) const;

 private:
  Kind kind_ = Kind::kRcDecay;
  double v_init_ = 0.0;
  double v0_ = 0.0;
  double beta_ = 0.0;
  std::vector<Breakpoint> points_;
};

// Schedule::voltage, as a free function. Requires t >= 0.
double schedule_voltage(const Schedule& s, double t);

// Incoming connections of one core and the current scale i0 [A].
struct WeightVector {
  std::size_t self = 0;
  std::vector<std::pair<std::size_t, double>> weights;  // (peer, W)
  double i0 = 0.0;

  // Throws StructureError on self-connections or repeated peers.
  void validate() const;
};

// i0 * sum_j W_j * S_j over the listed peers.
double weighted_sum_current(const WeightVector& w,
                            std::span<const std::uint8_t> peer_states);

struct TransitionRates {
  double to_ap = 0.0;  // P -> AP [1/s]
  double to_p = 0.0;   // AP -> P [1/s]
  double total() const { return to_ap + to_p; }
};

// f_sw(V) split by the bias probability: r_P->AP = f*P_AP, r_AP->P = f*(1 -
// P_AP). The stationary AP occupancy of the pair equals P_AP exactly.
TransitionRates transition_rates(const BehavioralParams& b,
                                 const MaterialParams& p, double volts,
                                 double current);

// Largest product rate*substep allowed inside advance().
inline constexpr double kMaxRateStep = 0.1;

// Propagates one core over [c.t, c.t + dt] with its current held fixed. The
// interval is split into the fewest equal substeps with rate*h <= 0.1 (rates
// at both ends of the interval); each substep flips S with probability
// 1 - exp(-r*h), r evaluated at the substep midpoint.
CoreState advance(const CoreState& c, const BehavioralParams& b,
                  const MaterialParams& p, const Schedule& s, double dt,
                  Rng& rng);

}  // namespace mtc::core

#endif  // MTC_CORE_HPP_
