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


#include "mtc/experiments.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mtc/calibrate.hpp"
#include "mtc/csv.hpp"
#include "mtc/device_physics.hpp"
#include "mtc/llg.hpp"
#include "mtc/network.hpp"
#include "mtc/parallel.hpp"
#include "mtc/stats.hpp"

#ifndef MTC_VERSION_STRING
#define MTC_VERSION_STRING "unknown"
#endif

namespace mtc::experiments {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kManifestVersion = 1;

struct Names {
  Experiment e;
  std::string_view name;
};
constexpr Names kNames[] = {
    {Experiment::kRetentionSweep, "retention-sweep"},
    {Experiment::kSotBias, "sot-bias"},
    {Experiment::kLandscape, "landscape"},
    {Experiment::kAnneal, "anneal"},
    {Experiment::kCalibrate, "calibrate"},
};

// Collects output files of one run under a common stem.
class Outputs {
 public:
  Outputs(fs::path dir, std::string stem) : dir_(std::move(dir)), stem_(std::move(stem)) {}

  // suffix "" gives <stem>.csv; "_fit" gives <stem>_fit.csv.
  void write(std::string_view suffix, std::string_view ext, const std::string& body) {
    const fs::path path = dir_ / (stem_ + std::string(suffix) + std::string(ext));
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << body;
    out.close();
    if (!out) throw std::runtime_error("write failed: " + path.string());
    files_.push_back(path);
  }
  void csv(std::string_view suffix, const std::string& body) { write(suffix, ".csv", body); }

  const std::vector<fs::path>& files() const { return files_; }
  fs::path manifest_path() const { return dir_ / (stem_ + ".manifest.json"); }

 private:
  fs::path dir_;
  std::string stem_;
  std::vector<fs::path> files_;
};

std::string utc_stamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

std::string unique_stem(const fs::path& dir, std::string_view experiment,
                        const std::string& stamp) {
  std::string stem = std::string(experiment) + "_" + stamp;
  for (int k = 2; fs::exists(dir / (stem + ".csv")) ||
                  fs::exists(dir / (stem + ".manifest.json"));
       ++k) {
    stem = std::string(experiment) + "_" + stamp + "_" + std::to_string(k);
  }
  return stem;
}

void run_retention(const config::Config& cfg, std::uint64_t seed, unsigned threads,
                   Outputs& out) {
  const auto material = config::material_from(cfg);
  const auto voltages = cfg.numbers("retention.voltages");
  const auto n_trials = cfg.count("retention.n_trials");
  const double horizon = cfg.number("retention.horizon");
  const llg::RetentionOptions opts{cfg.number("llg.dt"), threads};

  std::ostringstream body;
  csv::Writer w(body);
  w.header({"V_V", "delta", "tau_hat_s", "ci_low_s", "ci_high_s", "n_trials",
            "n_events", "n_censored", "lower_bound_only", "tau_closed_form_s"});
  std::vector<double> fit_v, fit_log_tau;
  for (std::size_t i = 0; i < voltages.size(); ++i) {
    const double v = voltages[i];
    const auto est = llg::estimate_retention(
        material, v, n_trials, horizon, derive_seed(seed, SeedStream::kRetention, i), opts);
    w.field(v)
        .field(device::thermal_stability(material, v))
        .field(est.tau)
        .field(est.ci_low)
        .field(est.ci_high)
        .field(std::uint64_t{est.n_trials})
        .field(std::uint64_t{est.n_events})
        .field(std::uint64_t{est.n_censored})
        .field(est.lower_bound_only)
        .field(device::retention_time(material, v));
    w.end_row();
    if (!est.lower_bound_only) {
      fit_v.push_back(v);
      fit_log_tau.push_back(std::log(est.tau));
    }
  }
  out.csv("", body.str());

  std::ostringstream fit;
  csv::Writer f(fit);
  f.header({"name", "value"});
  stats::LinearFit lf{NAN, NAN, NAN, NAN};
  if (fit_v.size() >= 2) lf = stats::fit_line(fit_v, fit_log_tau);
  f.field("ln_tau_intercept").field(lf.intercept).end_row();
  f.field("ln_tau_slope_per_V").field(lf.slope).end_row();
  f.field("r_squared").field(lf.r_squared).end_row();
  f.field("rms_residual").field(lf.rms_residual).end_row();
  f.field("points_fitted").field(std::uint64_t{fit_v.size()}).end_row();
  out.csv("_fit", fit.str());
}

void run_sot_bias(const config::Config& cfg, std::uint64_t seed, unsigned threads,
                  Outputs& out) {
  const auto material = config::material_from(cfg);
  const auto behavioral = config::behavioral_from(cfg);
  const auto currents = cfg.numbers("sot.currents");
  const auto n_trials = cfg.count("sot.n_trials");
  const double v_pulse = cfg.number("sot.v_pulse");
  const double t_pulse = cfg.number("sot.t_pulse");
  const llg::SwitchOptions opts{config::sot_geometry_from(cfg),
                                cfg.number("sot.settle_time"),
                                cfg.number("llg.dt"), threads};

  std::ostringstream body;
  csv::Writer w(body);
  w.header({"I_A", "n_trials", "n_ap", "p_hat", "sigma", "p_behavioral"});
  for (std::size_t i = 0; i < currents.size(); ++i) {
    const auto est = llg::estimate_switch_prob(
        material, v_pulse, t_pulse, currents[i], n_trials,
        derive_seed(seed, SeedStream::kSwitchProbability, i), opts);
    w.field(currents[i])
        .field(std::uint64_t{est.n_trials})
        .field(std::uint64_t{est.n_ap})
        .field(est.p_hat)
        .field(est.sigma())
        .field(device::bias_probability(behavioral, material, currents[i], v_pulse));
    w.end_row();
  }
  out.csv("", body.str());
}

void run_landscape(const config::Config& cfg, Outputs& out) {
  const auto n = cfg.count("landscape.n");
  const auto land = network::enumerate_landscape(n);
  std::ostringstream body;
  csv::Writer w(body);
  w.header({"spin_code", "weight_code", "energy"});
  for (std::size_t s = 0; s < land.spin_codes; ++s) {
    for (std::size_t k = 0; k < land.weight_codes; ++k) {
      w.field(std::uint64_t{s}).field(std::uint64_t{k}).field(land.at(s, k)).end_row();
    }
  }
  out.csv("", body.str());
}

void run_anneal(const config::Config& cfg, std::uint64_t seed, unsigned threads,
                Outputs& out) {
  const auto net = config::network_from(cfg);
  const auto n_trials = cfg.count("anneal.n_trials");
  const auto ens = network::run_ensemble(net, n_trials, cfg.number("anneal.duration"),
                                         cfg.number("anneal.dt"), seed, threads);
  std::ostringstream body;
  csv::Writer w(body);
  w.header({"trial", "seed", "final_code", "final_energy", "settled"});
  for (std::size_t k = 0; k < ens.trials.size(); ++k) {
    const auto& t = ens.trials[k];
    w.field(std::uint64_t{k})
        .field(t.seed)
        .field(t.final_config.code)
        .field(t.final_energy)
        .field(t.settled)
        .end_row();
  }
  out.csv("", body.str());

  std::ostringstream hist;
  csv::Writer h(hist);
  h.header({"code", "count", "energy"});
  for (std::size_t c = 0; c < ens.histogram.size(); ++c) {
    h.field(std::uint64_t{c})
        .field(ens.histogram[c])
        .field(network::energy(network::decode_spin(c, net.size()), net.W))
        .end_row();
  }
  out.csv("_histogram", hist.str());

  const auto n_traj = std::min<std::uint64_t>(cfg.count("anneal.trajectories"),
                                               ens.trials.size());
  for (std::size_t k = 0; k < n_traj; ++k) {
    std::ostringstream traj;
    csv::Writer tw(traj);
    tw.header({"t_s", "code", "energy"});
    for (const auto& p : ens.trials[k].trajectory) {
      tw.field(p.t).field(p.code).field(p.energy).end_row();
    }
    out.csv("_trajectory_" + std::to_string(k), traj.str());
  }
}

void run_calibrate(const config::Config& cfg, std::uint64_t seed, unsigned threads,
                   Outputs& out) {
  const auto material = config::material_from(cfg);
  const auto base = config::behavioral_from(cfg);
  calibrate::SweepSpec spec;
  spec.voltages = cfg.numbers("retention.voltages");
  spec.retention_trials = cfg.count("retention.n_trials");
  spec.horizon = cfg.number("retention.horizon");
  spec.currents = cfg.numbers("sot.currents");
  spec.switch_trials = cfg.count("sot.n_trials");
  spec.v_pulse = cfg.number("sot.v_pulse");
  spec.t_pulse = cfg.number("sot.t_pulse");
  spec.geometry = config::sot_geometry_from(cfg);
  spec.settle_time = cfg.number("sot.settle_time");
  spec.dt = cfg.number("llg.dt");
  spec.threads = threads;
  const auto res = calibrate::calibrate(material, spec, base, seed);
  const auto& b = res.params;

  std::ostringstream body;
  csv::Writer w(body);
  w.header({"name", "value"});
  const std::pair<const char*, double> rows[] = {
      {"alpha1", b.alpha1},
      {"alpha2", b.alpha2},
      {"gamma1", b.gamma1},
      {"gamma2", b.gamma2},
      {"V0", b.V0},
      {"R", b.R},
      {"C", b.C},
      {"V_ref", b.V_ref},
      {"rate_fit_r_squared", res.rate_fit.r_squared},
      {"rms_log_rate_residual", res.rms_log_rate_residual},
      {"max_bias_deviation", res.max_bias_deviation},
  };
  for (const auto& [k, v] : rows) w.field(k).field(v).end_row();
  out.csv("", body.str());

  std::ostringstream resid;
  csv::Writer r(resid);
  r.header({"kind", "x", "observed", "fitted", "residual"});
  for (const auto& e : res.residuals) {
    r.field(e.kind).field(e.x).field(e.observed).field(e.fitted).field(e.residual).end_row();
  }
  out.csv("_residuals", resid.str());

  std::ostringstream snippet;
  snippet << "# calibrated behavioral parameters; paste into a config file\n";
  for (int i = 0; i < 4; ++i) {
    snippet << "behavioral." << rows[i].first << " = "
            << csv::format_double(rows[i].second) << '\n';
  }
  out.write("_behavioral", ".cfg", snippet.str());
}

void dispatch(Experiment e, const config::Config& cfg, std::uint64_t seed,
              unsigned threads, Outputs& out) {
  switch (e) {
    case Experiment::kRetentionSweep:
      return run_retention(cfg, seed, threads, out);
    case Experiment::kSotBias:
      return run_sot_bias(cfg, seed, threads, out);
    case Experiment::kLandscape:
      return run_landscape(cfg, out);
    case Experiment::kAnneal:
      return run_anneal(cfg, seed, threads, out);
    case Experiment::kCalibrate:
      return run_calibrate(cfg, seed, threads, out);
  }
}

json error_object(std::string_view kind, std::string_view message,
                  const std::vector<std::string>& diagnostics = {}) {
  json j = {{"kind", kind}, {"message", message}};
  if (!diagnostics.empty()) j["diagnostics"] = diagnostics;
  return j;
}

json classify(std::exception_ptr ep) {
  try {
    std::rethrow_exception(ep);
  } catch (const config::ConfigError& e) {
    return error_object("config", e.what());
  } catch (const calibrate::CalibrationError& e) {
    return error_object("calibration", e.what(), e.diagnostics());
  } catch (const std::invalid_argument& e) {
    return error_object("invalid_argument", e.what());
  } catch (const std::length_error& e) {
    return error_object("size", e.what());
  } catch (const std::exception& e) {
    return error_object("runtime", e.what());
  } catch (...) {
    return error_object("runtime", "unknown error");
  }
}

void write_manifest(const fs::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write manifest " + path.string());
  out << j.dump(2) << '\n';
}

RunResult execute(Experiment experiment, const config::Config* resolved,
                  const json& config_error, const fs::path& output_dir,
                  std::uint64_t seed, unsigned threads, json provenance) {
  fs::create_directories(output_dir);
  const auto stamp = utc_stamp();
  Outputs out(output_dir, unique_stem(output_dir, name(experiment), stamp));
  const unsigned workers = resolve_threads(threads);

  json m = std::move(provenance);
  m["manifest_version"] = kManifestVersion;
  m["experiment"] = name(experiment);
  m["seed"] = seed;
  m["threads"] = workers;
  m["code_version"] = code_version();
  m["started_utc"] = stamp;

  json error = config_error;
  if (resolved) {
    m["config"] = resolved->values();
    m["config_text"] = resolved->to_text();
    try {
      dispatch(experiment, *resolved, seed, workers, out);
    } catch (...) {
      error = classify(std::current_exception());
    }
  }

  RunResult r;
  r.outputs = out.files();
  r.manifest = out.manifest_path();
  json files = json::array();
  for (const auto& f : r.outputs) files.push_back(f.filename().string());
  m["outputs"] = files;
  if (error.is_null()) {
    m["status"] = "complete";
    m["error"] = nullptr;
  } else {
    m["status"] = r.outputs.empty() ? "failed" : "partial";
    m["error"] = error;
    r.exit_status = error["kind"] == "config" ? 2 : 1;
    r.error = json{{"error", error}}.dump();
  }
  write_manifest(r.manifest, m);
  return r;
}

}  // namespace

std::string_view name(Experiment e) {
  for (const auto& n : kNames) {
    if (n.e == e) return n.name;
  }
  return "unknown";
}

std::optional<Experiment> parse_experiment(std::string_view s) {
  for (const auto& n : kNames) {
    if (n.name == s) return n.e;
  }
  return std::nullopt;
}

std::string_view code_version() { return MTC_VERSION_STRING; }

std::string error_json(std::string_view kind, std::string_view message) {
  return json{{"error", error_object(kind, message)}}.dump();
}

RunResult run_resolved(Experiment experiment, config::Config resolved,
                       const fs::path& output_dir, std::uint64_t seed,
                       unsigned threads) {
  return execute(experiment, &resolved, nullptr, output_dir, seed, threads,
                 json::object());
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  json provenance = {{"params_file", cfg.params_file.string()},
                     {"overrides", cfg.overrides}};
  std::optional<config::Config> resolved;
  json config_error;
  try {
    auto c = config::Config::load(cfg.params_file);
    for (const auto& o : cfg.overrides) c.apply_override(o);
    c.finalize();
    resolved = std::move(c);
  } catch (...) {
    config_error = classify(std::current_exception());
  }
  return execute(cfg.experiment, resolved ? &*resolved : nullptr, config_error,
                 cfg.output_dir, cfg.seed, cfg.threads, std::move(provenance));
}

RunResult rerun_from_manifest(const fs::path& manifest, const fs::path& output_dir,
                              std::optional<unsigned> threads) {
  std::ifstream in(manifest);
  if (!in) throw config::ConfigError("cannot open manifest " + manifest.string());
  json m;
  try {
    m = json::parse(in);
  } catch (const json::exception& e) {
    throw config::ConfigError("malformed manifest: " + std::string(e.what()));
  }
  if (!m.contains("config_text") || !m.contains("experiment") || !m.contains("seed")) {
    throw config::ConfigError("manifest lacks config_text, experiment or seed");
  }
  const auto exp = parse_experiment(m["experiment"].get<std::string>());
  if (!exp) throw config::ConfigError("manifest names an unknown experiment");
  auto cfg = config::Config::parse(m["config_text"].get<std::string>(),
                                   manifest.string());
  cfg.finalize();
  json provenance = {{"rerun_of", manifest.filename().string()}};
  if (m.contains("params_file")) provenance["params_file"] = m["params_file"];
  if (m.contains("overrides")) provenance["overrides"] = m["overrides"];
  const unsigned t = threads ? *threads : m.value("threads", 1u);
  return execute(*exp, &cfg, nullptr, output_dir, m["seed"].get<std::uint64_t>(), t,
                 std::move(provenance));
}

}  // namespace mtc::experiments
