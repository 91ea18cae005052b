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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Runs on the shipped default config.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "mtc/device_physics.hpp"
#include "mtc/experiments.hpp"
#include "mtc/llg.hpp"
#include "mtc/network.hpp"
#include "mtc/stats.hpp"

namespace {

using namespace mtc;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

using Criterion = std::function<void(Verdict&)>;

// 1. Retention semi-log law.
void retention(Verdict& v) {
  const auto cfg = testing::default_config();
  const auto p = config::material_from(cfg);
  const auto voltages = cfg.numbers("retention.voltages");
  std::vector<double> xs, ys;
  double llg_06 = NAN;
  for (std::size_t i = 0; i < voltages.size(); ++i) {
    const auto est = llg::estimate_retention(
        p, voltages[i], cfg.count("retention.n_trials"), cfg.number("retention.horizon"),
        derive_seed(2026, SeedStream::kRetention, i), {cfg.number("llg.dt"), 0});
    v.require(!est.lower_bound_only, "event observed at every voltage");
    xs.push_back(voltages[i]);
    ys.push_back(std::log(est.tau));
    if (std::abs(voltages[i] - 0.6) < 1e-12) llg_06 = est.tau;
  }
  const auto fit = stats::fit_line(xs, ys);
  const double t05 = device::retention_time(p, 0.5);
  const double t06 = device::retention_time(p, 0.6);
  v.detail << "R^2=" << fit.r_squared << " tau(0.5V)=" << t05 * 1e6
           << "us tau(0.6V)=" << t06 * 1e9 << "ns (LLG " << llg_06 * 1e9 << "ns) ";
  v.require(voltages.size() == 5, "five sweep voltages");
  v.require(fit.r_squared > 0.98, "R^2 > 0.98");
  v.require(fit.slope < 0.0, "retention falls with voltage");
  v.require(t05 >= 10e-6 && t05 <= 40e-6, "tau(0.5 V) in [10, 40] us");
  v.require(t06 < 100e-9, "tau(0.6 V) < 100 ns");
}

// 2. SOT bias S-curve.
void sot_curve(Verdict& v) {
  const auto cfg = testing::default_config();
  const auto p = config::material_from(cfg);
  const auto b = config::behavioral_from(cfg);
  const auto currents = cfg.numbers("sot.currents");
  const double v_pulse = cfg.number("sot.v_pulse");
  const llg::SwitchOptions opts{config::sot_geometry_from(cfg),
                                cfg.number("sot.settle_time"), cfg.number("llg.dt"), 0};
  std::vector<double> xs, succ, trials, phat, sig;
  for (std::size_t i = 0; i < currents.size(); ++i) {
    const auto e = llg::estimate_switch_prob(p, v_pulse, cfg.number("sot.t_pulse"),
                                             currents[i], 500,
                                             derive_seed(2026, SeedStream::kSwitchProbability, i),
                                             opts);
    xs.push_back(currents[i]);
    succ.push_back(static_cast<double>(e.n_ap));
    trials.push_back(500);
    phat.push_back(e.p_hat);
    sig.push_back(e.sigma());
  }
  bool monotone = true;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const double tol = 3 * std::max(std::hypot(sig[i], sig[j]), 1.0 / 500);
      if (phat[j] < phat[i] - tol) monotone = false;
    }
  }
  const auto fit = stats::fit_logistic(xs, succ, trials);
  double dev = 0.0;
  const double lo = xs.front(), hi = xs.back();
  for (int k = 0; k <= 200; ++k) {
    const double i = lo + (hi - lo) * k / 200.0;
    const double fitted = device::logistic(fit.intercept + fit.slope * i);
    dev = std::max(dev, std::abs(fitted - device::bias_probability(b, p, i, v_pulse)));
  }
  v.detail << "P=";
  for (double x : phat) v.detail << x << ' ';
  v.detail << "max|fit-behavioral|=" << dev << ' ';
  v.require(xs.size() == 7, "seven currents");
  v.require(std::abs(v_pulse - 0.5) < 1e-12 && std::abs(cfg.number("sot.t_pulse") - 50e-9) < 1e-15,
            "0.5 V, 50 ns pulse");
  v.require(monotone, "monotone within 3 sigma");
  v.require(fit.converged, "logistic fit converged");
  v.require(dev <= 0.05, "max deviation <= 0.05");
}

// Independent brute-force landscape.
int oracle_energy(unsigned spin, unsigned weights) {
  int k = 0, e = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j, ++k) {
      const int w = (weights >> (5 - k)) & 1 ? 1 : -1;
      e -= w * ((spin >> (3 - i)) & 1) * ((spin >> (3 - j)) & 1);
    }
  }
  return e;
}

// 3. Landscape exactness.
void landscape(Verdict& v) {
  const auto land = network::enumerate_landscape(4);
  std::size_t mismatches = 0, nonzero_rows = 0;
  for (unsigned s = 0; s < 16; ++s) {
    for (unsigned w = 0; w < 64; ++w) {
      if (land.at(s, w) != oracle_energy(s, w)) ++mismatches;
      if ((s == 0 || s == 1 || s == 2 || s == 4 || s == 8) && land.at(s, w) != 0.0) {
        ++nonzero_rows;
      }
    }
  }
  v.detail << "16x64 entries, " << mismatches << " mismatches ";
  v.require(land.spin_codes == 16 && land.weight_codes == 64, "16 x 64 table");
  v.require(mismatches == 0, "entries match the oracle");
  v.require(nonzero_rows == 0, "rows 0, 1, 2, 4, 8 are zero");
  v.require(network::decode_spin(9, 4).bits == std::vector<std::uint8_t>{1, 0, 0, 1},
            "spin 9 decodes to 1001");
  v.require(network::decode_weights(16, 4).signs == std::vector<int>{-1, 1, -1, -1, -1, -1},
            "weight 16 decodes to -+----");
}

network::EnsembleResult anneal_with(const std::string& weights, std::size_t n_trials) {
  auto cfg = testing::default_config();
  cfg.set("network.weights", weights);
  cfg.finalize();
  const auto net = config::network_from(cfg);
  return network::run_ensemble(net, n_trials, cfg.number("anneal.duration"),
                               cfg.number("anneal.dt"), 2026, 0);
}

// 4. Anneal success on the single-minimum benchmark.
void anneal_single(Verdict& v) {
  const auto cfg = testing::default_config();
  const auto ens = anneal_with("1, 1, 1, -1, 1, 1", 1000);
  int best = 1 << 20;
  unsigned arg = 0, ties = 0;
  for (unsigned s = 0; s < 16; ++s) {
    const int e = oracle_energy(s, network::encode_weights(std::vector<int>{1, 1, 1, -1, 1, 1}));
    if (e < best) best = e, arg = s, ties = 1;
    else if (e == best) ++ties;
  }
  const double frac = ens.histogram[15] / 1000.0;
  v.detail << "P(code 15)=" << frac << " V_init=" << cfg.number("schedule.v_init")
           << " duration=" << cfg.number("anneal.duration") * 1e9 << "ns ";
  v.require(arg == 15 && ties == 1 && best == -4, "code 15 is the unique E=-4 minimum");
  v.require(std::abs(cfg.number("schedule.v_init") - 0.6) < 1e-12, "V_init = 0.6 V");
  v.require(frac >= 0.95, ">= 95% at code 15");
}

// 5. Degenerate minima.
void anneal_degenerate(Verdict& v) {
  const auto ens = anneal_with("-1, -1, -1, -1, -1, -1", 1000);
  std::uint64_t mass = 0, largest = 0;
  for (unsigned s : {0u, 1u, 2u, 4u, 8u}) {
    mass += ens.histogram[s];
    largest = std::max(largest, ens.histogram[s]);
    v.detail << s << ':' << ens.histogram[s] << ' ';
  }
  // Equipartition band: 200 +- 3 sqrt(1000 * 0.2 * 0.8) = 200 +- 38.
  v.require(mass >= 950, ">= 95% on {0,1,2,4,8}");
  v.require(largest <= 400, "no code above 40%");
}

// 6. Gibbs fidelity at frozen voltage.
void gibbs(Verdict& v) {
  auto net = config::network_from(testing::default_config());
  const double volts = 0.55;
  net.schedule = core::Schedule::constant(volts);
  net.i0 = 2e-6;
  const double dt = 0.02 / device::switching_rate(net.behavioral, volts);
  for (int n : {2, 4}) {
    if (n == 2) {
      const double w[] = {1.0};
      net.W = network::WeightMatrix::from_pairs(2, w);
    } else {
      const double w[] = {1, 1, 1, -1, 1, 1};
      net.W = network::WeightMatrix::from_pairs(4, w);
    }
    const auto g = network::gibbs_equivalent(net, volts);
    const std::vector<double> field(n, g.field);
    const auto exact = network::exact_distribution(net.W, g.beta, field);
    const auto occ = network::sample_occupancy(net, 1'000'000, dt, 2026 + n, 10'000);
    const double tv = network::total_variation(occ, exact);
    v.detail << "n=" << n << " beta=" << g.beta << " TV=" << tv << ' ';
    v.require(tv < 0.05, "TV < 0.05 at n = " + std::to_string(n));
  }
}

// 7. Physics invariants.
void invariants(Verdict& v) {
  const auto p = testing::default_material();
  const auto b = testing::default_behavioral();
  Rng rng(7);
  std::normal_distribution<double> n01(0, 1);
  auto unit = [&] { return normalized(Vec3{n01(rng), n01(rng), n01(rng)}); };

  double worst_norm = 0.0;
  llg::MagnetizationState s{unit(), 0.0};
  const llg::DriveInputs drive{0.6, 5e10, {0, 1, 0}, {-8e3, 0, 0}};
  for (int k = 0; k < 100000; ++k) {
    s = llg::step(s, p, drive, llg::kDefaultDt, rng);
    worst_norm = std::max(worst_norm, std::abs(norm(s.m) - 1.0));
  }

  auto cold = p;
  cold.T = 0.0;
  cold.alpha = 0.1;
  const llg::DriveInputs still{0.3, 0.0, {0, 1, 0}, {4e3, 0, 0}};
  Vec3 m = normalized(Vec3{0.8, 0.2, 0.5});
  double e = llg::energy_density(m, cold, still);
  bool monotone = true;
  for (int k = 0; k < 40000; ++k) {
    m = normalized(llg::heun_increment(m, cold, still, llg::kDefaultDt, {}));
    const double next = llg::energy_density(m, cold, still);
    if (next > e + 1e-12 * std::abs(e)) monotone = false;
    e = next;
  }

  double worst_perp = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const Vec3 mm = unit();
    const llg::DriveInputs d{0.5, 1e11, unit(), {}};
    const Vec3 tau = llg::sot_torque({mm, 0.0}, p, d);
    worst_perp = std::max(worst_perp, std::abs(dot(tau, mm)) / norm(tau));
  }

  double worst_balance = 0.0;
  for (double volts = 0.45; volts <= 0.651; volts += 0.025) {
    for (double i = -8e-6; i <= 8e-6; i += 1e-6) {
      const auto r = core::transition_rates(b, p, volts, i);
      const double logit = device::effective_beta(b, p, volts) * (b.gamma1 + b.gamma2 * i);
      worst_balance = std::max(worst_balance,
                               std::abs(r.to_ap / r.to_p - std::exp(logit)) / std::exp(logit));
    }
  }

  double worst_ode = 0.0;
  const double beta = b.beta(), h = 1e-3 / beta, v_init = 0.6;
  for (double t = 2 * h; t < 5 / beta; t += 0.1 / beta) {
    auto V = [&](double x) { return device::junction_voltage(b, v_init, x); };
    const double dv = (V(t - 2 * h) - 8 * V(t - h) + 8 * V(t + h) - V(t + 2 * h)) / (12 * h);
    const double r = dv + beta * (device::junction_voltage(b, v_init, t) - b.V0);
    worst_ode = std::max(worst_ode, std::abs(r) / (beta * std::abs(v_init - b.V0)));
  }

  v.detail << "norm=" << worst_norm << " perp=" << worst_perp << " balance=" << worst_balance
           << " ode=" << worst_ode << ' ';
  v.require(worst_norm < 1e-9, "norm conserved");
  v.require(monotone, "zero-temperature energy monotone");
  v.require(worst_perp < 1e-12, "SOT torque perpendicular to m");
  v.require(worst_balance < 1e-12, "detailed balance");
  v.require(worst_ode < 1e-9, "junction voltage ODE residual");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 8. Determinism from manifests.
void determinism(Verdict& v) {
  using experiments::Experiment;
  const auto dir = testing::scratch_dir("acceptance_determinism");
  const std::vector<std::string> small = {
      "retention.voltages=0.6,0.625,0.65,0.675", "retention.n_trials=10",
      "retention.horizon=2e-6", "sot.currents=-6e-6,-3e-6,0,3e-6,6e-6",
      "sot.n_trials=100", "sot.t_pulse=10e-9", "anneal.n_trials=50",
      "anneal.duration=1e-6", "anneal.trajectories=2"};
  for (auto e : {Experiment::kRetentionSweep, Experiment::kSotBias, Experiment::kLandscape,
                 Experiment::kAnneal, Experiment::kCalibrate}) {
    experiments::ExperimentConfig cfg;
    cfg.experiment = e;
    cfg.params_file = testing::source_dir() / "configs" / "default.cfg";
    cfg.output_dir = dir / "first";
    cfg.seed = 2026;
    cfg.threads = 1;
    cfg.overrides = small;
    const auto first = experiments::run_experiment(cfg);
    const std::string name(experiments::name(e));
    v.require(first.exit_status == 0, name + " runs");
    for (unsigned threads : {1u, 4u}) {
      const auto again = experiments::rerun_from_manifest(
          first.manifest, dir / (name + "_" + std::to_string(threads)), threads);
      bool same = again.exit_status == 0 && again.outputs.size() == first.outputs.size();
      for (std::size_t k = 0; same && k < first.outputs.size(); ++k) {
        same = slurp(first.outputs[k]) == slurp(again.outputs[k]);
      }
      v.require(same, name + " byte-identical at " + std::to_string(threads) + " threads");
    }
    v.detail << name << ' ';
  }
}

}  // namespace

int main() {
  const std::pair<const char*, Criterion> criteria[] = {
      {"1 retention semi-log law", retention},
      {"2 SOT bias S-curve", sot_curve},
      {"3 landscape exactness", landscape},
      {"4 anneal success", anneal_single},
      {"5 degenerate minima", anneal_degenerate},
      {"6 Gibbs fidelity", gibbs},
      {"7 physics invariants", invariants},
      {"8 determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "[exception: " << e.what() << "] ";
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %s: %s(%.1f s)\n", v.pass ? "PASS" : "FAIL", name,
                v.detail.str().c_str(), secs);
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  }
  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
