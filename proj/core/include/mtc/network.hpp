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

#ifndef MTC_NETWORK_HPP_
#define MTC_NETWORK_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "mtc/core.hpp"
#include "mtc/params.hpp"

// Boltzmann machine on a fabric of MTCs: energy E = -sum_{i<j} W_ij S_i S_j
// over S in {0,1}, binary-coded configurations, exhaustive landscapes, the
// exact Gibbs distribution, and annealed trials.
namespace mtc::network {

// Thrown when an exhaustive enumeration would be too large.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::size_t kMaxLandscapeNeurons = 5;
inline constexpr std::size_t kMaxExactNeurons = 10;

// Number of pairs (i, j), i < j.
constexpr std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

// Row-major n x n symmetric matrix with zero diagonal.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(std::size_t n) : n_(n), w_(n * n, 0.0) {}
  // From pair weights in lexicographic (i<j) order.
  static WeightMatrix from_pairs(std::size_t n, std::span<const double> pairs);

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }
  // Sets W_ij and W_ji.
  void set(std::size_t i, std::size_t j, double w);
  std::vector<double> pairs() const;
  WeightMatrix negated() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> w_;
};

struct BoltzmannNetwork {
  WeightMatrix W;
  double i0 = 0.0;  // [A]
  core::Schedule schedule;
  BehavioralParams behavioral;
  MaterialParams material;

  std::size_t size() const { return W.size(); }
  core::WeightVector weights_into(std::size_t i) const;
};

// S_1 is the most significant bit of `code`.
struct SpinConfig {
  std::vector<std::uint8_t> bits;
  std::uint64_t code = 0;
};

SpinConfig decode_spin(std::uint64_t code, std::size_t n);
std::uint64_t encode_spin(std::span<const std::uint8_t> bits);

// Pair signs in lexicographic order; the first pair is the most significant
// bit of `code`, bit 1 -> +1 and bit 0 -> -1.
struct WeightConfig {
  std::vector<int> signs;
  std::uint64_t code = 0;
};

WeightConfig decode_weights(std::uint64_t code, std::size_t n);
std::uint64_t encode_weights(std::span<const int> signs);
WeightMatrix weight_matrix(const WeightConfig& wc, std::size_t n);

double energy(std::span<const std::uint8_t> bits, const WeightMatrix& W);
double energy(const SpinConfig& c, const WeightMatrix& W);

// No single-neuron flip strictly lowers the energy.
bool is_local_minimum(std::span<const std::uint8_t> bits, const WeightMatrix& W);

// E[spin_code][weight_code] over all +-1 weight configurations.
struct Landscape {
  std::size_t n = 0;
  std::size_t spin_codes = 0;
  std::size_t weight_codes = 0;
  std::vector<double> values;  // row-major by spin code

  double at(std::size_t spin_code, std::size_t weight_code) const {
    return values[spin_code * weight_codes + weight_code];
  }
};

// Throws SizeError for n > kMaxLandscapeNeurons.
Landscape enumerate_landscape(std::size_t n);

// logistic(beta_eff * Z).
double activation_probability(double z, double beta_eff);

// P(c) proportional to exp(-beta*(E(c) - sum_i field_i*S_i)). `field` may be
// empty. Throws SizeError for n > kMaxExactNeurons.
std::vector<double> exact_distribution(const WeightMatrix& W, double beta_eff,
                                       std::span<const double> field = {});

// Gibbs parameters equivalent to the behavioral rates at a frozen voltage:
// the AP logit of neuron i is beta*(Z_i + field).
struct GibbsEquivalent {
  double beta = 0.0;
  double field = 0.0;
};
GibbsEquivalent gibbs_equivalent(const BoltzmannNetwork& net, double volts);

struct TrajectoryPoint {
  double t = 0.0;
  std::uint64_t code = 0;
  double energy = 0.0;
};

struct TrialRecord {
  std::uint64_t seed = 0;
  SpinConfig final_config;
  double final_energy = 0.0;
  std::vector<TrajectoryPoint> trajectory;  // initial point, then each change
  bool settled = false;  // final configuration is a local minimum
};

// Random fair-coin initial states and V = schedule(0); each step of length
// dt recomputes every core's SOT current from the current states, then
// advances the cores in index order.
TrialRecord run_trial(const BoltzmannNetwork& net, double duration, double dt,
                      std::uint64_t seed);

struct EnsembleResult {
  std::vector<std::uint64_t> histogram;  // indexed by final code
  std::vector<TrialRecord> trials;       // in trial order
};

// Trial k runs with derive_seed(root_seed, kAnneal, k).
EnsembleResult run_ensemble(const BoltzmannNetwork& net, std::size_t n_trials,
                            double duration, double dt,
                            std::uint64_t root_seed, unsigned threads = 1);

// Time-averaged configuration occupancy over `steps` steps of length dt,
// after `burn_in` discarded steps.
std::vector<double> sample_occupancy(const BoltzmannNetwork& net,
                                     std::size_t steps, double dt,
                                     std::uint64_t seed,
                                     std::size_t burn_in = 0);

double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace mtc::network

#endif  // MTC_NETWORK_HPP_
