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

#include "mtc/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mtc/device_physics.hpp"
#include "mtc/parallel.hpp"
#include "mtc/random.hpp"

namespace mtc::network {

WeightMatrix WeightMatrix::from_pairs(std::size_t n,
                                      std::span<const double> pairs) {
  if (pairs.size() != pair_count(n)) {
    throw core::StructureError("expected " + std::to_string(pair_count(n)) +
                               " pair weights for n = " + std::to_string(n) +
                               ", got " + std::to_string(pairs.size()));
  }
  WeightMatrix W(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) W.set(i, j, pairs[k++]);
  }
  return W;
}

void WeightMatrix::set(std::size_t i, std::size_t j, double w) {
  if (i == j) throw core::StructureError("weight matrix diagonal must stay zero");
  if (!std::isfinite(w)) throw core::StructureError("weight is not finite");
  w_[i * n_ + j] = w;
  w_[j * n_ + i] = w;
}

std::vector<double> WeightMatrix::pairs() const {
  std::vector<double> out;
  out.reserve(pair_count(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) out.push_back((*this)(i, j));
  }
  return out;
}

WeightMatrix WeightMatrix::negated() const {
  WeightMatrix out = *this;
  for (double& w : out.w_) w = -w;
  return out;
}

core::WeightVector BoltzmannNetwork::weights_into(std::size_t i) const {
  core::WeightVector wv;
  wv.self = i;
  wv.i0 = i0;
  for (std::size_t j = 0; j < size(); ++j) {
    if (j != i) wv.weights.emplace_back(j, W(i, j));
  }
  return wv;
}

SpinConfig decode_spin(std::uint64_t code, std::size_t n) {
  if (n == 0 || n > 63 || code >= (std::uint64_t{1} << n)) {
    throw std::out_of_range("spin code " + std::to_string(code) +
                            " out of range for n = " + std::to_string(n));
  }
  SpinConfig c;
  c.code = code;
  c.bits.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.bits[i] = (code >> (n - 1 - i)) & 1u;
  return c;
}

std::uint64_t encode_spin(std::span<const std::uint8_t> bits) {
  std::uint64_t code = 0;
  for (auto b : bits) {
    if (b > 1) throw std::out_of_range("spin bit must be 0 or 1");
    code = (code << 1) | b;
  }
  return code;
}

WeightConfig decode_weights(std::uint64_t code, std::size_t n) {
  const std::size_t m = pair_count(n);
  if (n < 2 || m > 63 || code >= (std::uint64_t{1} << m)) {
    throw std::out_of_range("weight code " + std::to_string(code) +
                            " out of range for n = " + std::to_string(n));
  }
  WeightConfig wc;
  wc.code = code;
  wc.signs.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    wc.signs[k] = ((code >> (m - 1 - k)) & 1u) ? +1 : -1;
  }
  return wc;
}

std::uint64_t encode_weights(std::span<const int> signs) {
  std::uint64_t code = 0;
  for (int s : signs) {
    if (s != 1 && s != -1) throw std::out_of_range("weight sign must be +-1");
    code = (code << 1) | (s > 0 ? 1u : 0u);
  }
  return code;
}

WeightMatrix weight_matrix(const WeightConfig& wc, std::size_t n) {
  std::vector<double> pairs(wc.signs.begin(), wc.signs.end());
  return WeightMatrix::from_pairs(n, pairs);
}

double energy(std::span<const std::uint8_t> bits, const WeightMatrix& W) {
  const std::size_t n = W.size();
  if (bits.size() != n) throw core::StructureError("configuration size mismatch");
  double e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!bits[i]) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (bits[j]) e -= W(i, j);
    }
  }
  return e;
}

double energy(const SpinConfig& c, const WeightMatrix& W) {
  return energy(std::span<const std::uint8_t>(c.bits), W);
}

namespace {

double local_field(std::span<const std::uint8_t> bits, const WeightMatrix& W,
                   std::size_t i) {
  double z = 0.0;
  for (std::size_t j = 0; j < W.size(); ++j) {
    if (j != i && bits[j]) z += W(i, j);
  }
  return z;
}

}  // namespace

bool is_local_minimum(std::span<const std::uint8_t> bits,
                      const WeightMatrix& W) {
  // Flipping neuron i changes E by -(1 - 2 S_i) * Z_i.
  for (std::size_t i = 0; i < W.size(); ++i) {
    const double z = local_field(bits, W, i);
    const double delta = bits[i] ? z : -z;
    if (delta < 0.0) return false;
  }
  return true;
}

Landscape enumerate_landscape(std::size_t n) {
  if (n < 2 || n > kMaxLandscapeNeurons) {
    throw SizeError("landscape enumeration supports 2 <= n <= " +
                    std::to_string(kMaxLandscapeNeurons) + ", got " +
                    std::to_string(n));
  }
  Landscape L;
  L.n = n;
  L.spin_codes = std::size_t{1} << n;
  L.weight_codes = std::size_t{1} << pair_count(n);
  L.values.resize(L.spin_codes * L.weight_codes);
  for (std::size_t w = 0; w < L.weight_codes; ++w) {
    const WeightMatrix W = weight_matrix(decode_weights(w, n), n);
    for (std::size_t s = 0; s < L.spin_codes; ++s) {
      L.values[s * L.weight_codes + w] = energy(decode_spin(s, n), W);
    }
  }
  return L;
}

double activation_probability(double z, double beta_eff) {
  return device::logistic(beta_eff * z);
}

std::vector<double> exact_distribution(const WeightMatrix& W, double beta_eff,
                                       std::span<const double> field) {
  const std::size_t n = W.size();
  if (n == 0 || n > kMaxExactNeurons) {
    throw SizeError("exact_distribution supports 1 <= n <= " +
                    std::to_string(kMaxExactNeurons));
  }
  if (!field.empty() && field.size() != n) {
    throw core::StructureError("field size must match the network");
  }
  const std::size_t count = std::size_t{1} << n;
  std::vector<double> log_w(count);
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < count; ++c) {
    const SpinConfig cfg = decode_spin(c, n);
    double e = energy(cfg, W);
    for (std::size_t i = 0; i < field.size(); ++i) e -= field[i] * cfg.bits[i];
    log_w[c] = -beta_eff * e;
    max_log = std::max(max_log, log_w[c]);
  }
  double z = 0.0;
  for (double& lw : log_w) {
    lw = std::exp(lw - max_log);
    z += lw;
  }
  for (double& p : log_w) p /= z;
  return log_w;
}

GibbsEquivalent gibbs_equivalent(const BoltzmannNetwork& net, double volts) {
  const auto& b = net.behavioral;
  const double beff = device::effective_beta(b, net.material, volts);
  const double scale = b.gamma2 * net.i0;
  if (scale == 0.0) throw core::StructureError("gamma2 * i0 must be nonzero");
  return {beff * scale, b.gamma1 / scale};
}

namespace {

struct Fabric {
  explicit Fabric(const BoltzmannNetwork& net) : net(net) {
    for (std::size_t i = 0; i < net.size(); ++i) inputs.push_back(net.weights_into(i));
  }

  void init(Rng& rng) {
    states.assign(net.size(), 0);
    std::bernoulli_distribution coin(0.5);
    for (auto& s : states) s = coin(rng) ? 1 : 0;
    cores.assign(net.size(), core::CoreState{});
    for (std::size_t i = 0; i < net.size(); ++i) {
      cores[i].S = states[i];
      cores[i].V = net.schedule.voltage(0.0);
    }
  }

  void step(double dt, Rng& rng) {
    for (std::size_t i = 0; i < cores.size(); ++i) {
      cores[i].I = core::weighted_sum_current(inputs[i], states);
    }
    for (std::size_t i = 0; i < cores.size(); ++i) {
      cores[i] = core::advance(cores[i], net.behavioral, net.material,
                               net.schedule, dt, rng);
    }
    for (std::size_t i = 0; i < cores.size(); ++i) states[i] = cores[i].S;
  }

  const BoltzmannNetwork& net;
  std::vector<core::WeightVector> inputs;
  std::vector<core::CoreState> cores;
  std::vector<std::uint8_t> states;
};

void check_trial_args(const BoltzmannNetwork& net, double duration, double dt) {
  if (net.size() < 1) throw core::StructureError("network has no neurons");
  if (!(duration > 0.0)) throw std::invalid_argument("duration must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
}

}  // namespace

TrialRecord run_trial(const BoltzmannNetwork& net, double duration, double dt,
                      std::uint64_t seed) {
  check_trial_args(net, duration, dt);
  Rng rng(seed);
  Fabric fabric(net);
  fabric.init(rng);

  TrialRecord rec;
  rec.seed = seed;
  std::uint64_t code = encode_spin(fabric.states);
  rec.trajectory.push_back({0.0, code, energy(fabric.states, net.W)});

  const auto n_steps = static_cast<std::size_t>(std::llround(duration / dt));
  for (std::size_t k = 1; k <= n_steps; ++k) {
    fabric.step(dt, rng);
    const std::uint64_t next = encode_spin(fabric.states);
    if (next != code) {
      code = next;
      rec.trajectory.push_back(
          {static_cast<double>(k) * dt, code, energy(fabric.states, net.W)});
    }
  }
  rec.final_config = decode_spin(code, net.size());
  rec.final_energy = energy(rec.final_config, net.W);
  rec.settled = is_local_minimum(rec.final_config.bits, net.W);
  return rec;
}

EnsembleResult run_ensemble(const BoltzmannNetwork& net, std::size_t n_trials,
                            double duration, double dt,
                            std::uint64_t root_seed, unsigned threads) {
  if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
  check_trial_args(net, duration, dt);
  EnsembleResult out;
  out.trials.resize(n_trials);
  parallel_for(n_trials, threads, [&](std::size_t k) {
    out.trials[k] = run_trial(net, duration, dt,
                              derive_seed(root_seed, SeedStream::kAnneal, k));
  });
  out.histogram.assign(std::size_t{1} << net.size(), 0);
  for (const auto& t : out.trials) ++out.histogram[t.final_config.code];
  return out;
}

std::vector<double> sample_occupancy(const BoltzmannNetwork& net,
                                     std::size_t steps, double dt,
                                     std::uint64_t seed, std::size_t burn_in) {
  check_trial_args(net, 1.0, dt);
  if (net.size() > kMaxExactNeurons) throw SizeError("occupancy table too large");
  Rng rng(seed);
  Fabric fabric(net);
  fabric.init(rng);
  for (std::size_t k = 0; k < burn_in; ++k) fabric.step(dt, rng);
  std::vector<double> counts(std::size_t{1} << net.size(), 0.0);
  for (std::size_t k = 0; k < steps; ++k) {
    fabric.step(dt, rng);
    counts[encode_spin(fabric.states)] += 1.0;
  }
  for (double& c : counts) c /= static_cast<double>(steps);
  return counts;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("distribution size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return 0.5 * s;
}

}  // namespace mtc::network
