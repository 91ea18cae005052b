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

#include "mtc/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "mtc/device_physics.hpp"

namespace mtc::core {

Schedule Schedule::rc_decay(double v_init, double v0, double beta) {
  if (!std::isfinite(v_init) || !std::isfinite(v0) || !(beta >= 0.0)) {
    throw StructureError("rc_decay schedule needs finite voltages and beta >= 0");
  }
  Schedule s;
  s.kind_ = Kind::kRcDecay;
  s.v_init_ = v_init;
  s.v0_ = v0;
  s.beta_ = beta;
  return s;
}

Schedule Schedule::rc_decay(const BehavioralParams& b, double v_init) {
  return rc_decay(v_init, b.V0, b.beta());
}

Schedule Schedule::table(std::vector<Breakpoint> points) {
  if (points.empty()) throw StructureError("table schedule needs breakpoints");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].t) || !std::isfinite(points[i].V)) {
      throw StructureError("table schedule has a non-finite breakpoint");
    }
    if (i > 0 && !(points[i].t > points[i - 1].t)) {
      throw StructureError("table schedule times must be strictly increasing");
    }
  }
  Schedule s;
  s.kind_ = Kind::kTable;
  s.v_init_ = points.front().V;
  s.v0_ = points.back().V;
  s.points_ = std::move(points);
  return s;
}

Schedule Schedule::constant(double volts) { return rc_decay(volts, volts, 0.0); }

double Schedule::voltage(double t) const {
  if (kind_ == Kind::kRcDecay) {
    return v0_ + (v_init_ - v0_) * std::exp(-beta_ * t);
  }
  if (t <= points_.front().t) return points_.front().V;
  if (t >= points_.back().t) return points_.back().V;
  const auto hi = std::upper_bound(
      points_.begin(), points_.end(), t,
      [](double x, const Breakpoint& b) { return x < b.t; });
  const auto lo = hi - 1;
  const double frac = (t - lo->t) / (hi->t - lo->t);
  return lo->V + frac * (hi->V - lo->V);
}

double schedule_voltage(const Schedule& s, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("schedule_voltage: t must be >= 0");
  return s.voltage(t);
}

void WeightVector::validate() const {
  std::set<std::size_t> seen;
  for (const auto& [peer, w] : weights) {
    if (peer == self) throw StructureError("weight vector has a self-connection");
    if (!seen.insert(peer).second) {
      throw StructureError("weight vector repeats a peer index");
    }
    if (!std::isfinite(w)) throw StructureError("weight is not finite");
  }
}

double weighted_sum_current(const WeightVector& w,
                            std::span<const std::uint8_t> peer_states) {
  double sum = 0.0;
  for (const auto& [peer, weight] : w.weights) {
    if (peer >= peer_states.size()) {
      throw StructureError("peer index " + std::to_string(peer) +
                           " has no state");
    }
    sum += weight * static_cast<double>(peer_states[peer]);
  }
  return w.i0 * sum;
}

TransitionRates transition_rates(const BehavioralParams& b,
                                 const MaterialParams& p, double volts,
                                 double current) {
  const double f = device::switching_rate(b, volts);
  const double p_ap = device::bias_probability(b, p, current, volts);
  return {f * p_ap, f * (1.0 - p_ap)};
}

CoreState advance(const CoreState& c, const BehavioralParams& b,
                  const MaterialParams& p, const Schedule& s, double dt,
                  Rng& rng) {
  if (!(dt > 0.0)) throw std::invalid_argument("core::advance: dt must be > 0");

  const double t_end = c.t + dt;
  // f_sw is the total rate, so it bounds either direction.
  const double max_rate =
      std::max(device::switching_rate(b, s.voltage(c.t)),
               device::switching_rate(b, s.voltage(t_end)));
  const auto n_sub = static_cast<std::size_t>(
      std::max(1.0, std::ceil(max_rate * dt / kMaxRateStep)));
  const double h = dt / static_cast<double>(n_sub);

  CoreState out = c;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (std::size_t k = 0; k < n_sub; ++k) {
    const double t_mid = c.t + (static_cast<double>(k) + 0.5) * h;
    const auto rates = transition_rates(b, p, s.voltage(t_mid), c.I);
    const double r = out.S == 0 ? rates.to_ap : rates.to_p;
    if (uniform(rng) < -std::expm1(-r * h)) out.S ^= 1;
  }
  out.t = t_end;
  out.V = s.voltage(t_end);
  return out;
}

}  // namespace mtc::core
