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


// mtcsim: command-line driver for the experiments.
//
//   mtcsim <experiment> [--config FILE] [--seed N] [--out DIR] [--threads N]
//                       [--set key=value ...]
//   mtcsim rerun MANIFEST [--out DIR] [--threads N]

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mtc/experiments.hpp"

#ifndef MTC_DEFAULT_CONFIG
#define MTC_DEFAULT_CONFIG "configs/default.cfg"
#endif

namespace {

using mtc::experiments::Experiment;

int report(const mtc::experiments::RunResult& r) {
  if (r.exit_status != 0) {
    std::cerr << r.error << '\n';
    std::cout << r.manifest.string() << '\n';
    return r.exit_status;
  }
  for (const auto& f : r.outputs) std::cout << f.string() << '\n';
  std::cout << r.manifest.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MTJ thermodynamic-core simulator"};
  app.set_version_flag("--version", std::string(mtc::experiments::code_version()));
  app.require_subcommand(1);

  struct Common {
    std::string config = MTC_DEFAULT_CONFIG;
    std::uint64_t seed = 1;
    std::string out = ".";
    unsigned threads = 0;
    std::vector<std::string> overrides;
  } common;

  const std::pair<Experiment, const char*> all[] = {
      {Experiment::kRetentionSweep, "LLG mean retention time against voltage"},
      {Experiment::kSotBias, "LLG AP probability against SOT current"},
      {Experiment::kLandscape, "energy of every spin and weight configuration"},
      {Experiment::kAnneal, "ensemble of behavioral network anneals"},
      {Experiment::kCalibrate, "fit behavioral parameters to LLG sweeps"}};
  std::vector<std::pair<CLI::App*, Experiment>> subs;
  for (auto [e, help] : all) {
    auto* sub = app.add_subcommand(std::string(mtc::experiments::name(e)), help);
    sub->add_option("--config", common.config, "configuration file")
        ->capture_default_str();
    sub->add_option("--seed", common.seed, "root seed")->capture_default_str();
    sub->add_option("--out", common.out, "output directory")->capture_default_str();
    sub->add_option("--threads", common.threads, "worker threads, 0 = all cores")
        ->capture_default_str();
    sub->add_option("--set", common.overrides, "override, key=value (repeatable)");
    subs.emplace_back(sub, e);
  }
  std::string manifest;
  std::optional<unsigned> rerun_threads;
  auto* rerun = app.add_subcommand("rerun", "replay a run from its manifest");
  rerun->add_option("manifest", manifest, "manifest JSON")->required();
  rerun->add_option("--out", common.out, "output directory")->capture_default_str();
  rerun->add_option("--threads", rerun_threads, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << mtc::experiments::error_json("usage", e.what()) << '\n';
    return 2;
  }

  try {
    if (rerun->parsed()) {
      return report(mtc::experiments::rerun_from_manifest(manifest, common.out,
                                                          rerun_threads));
    }
    for (const auto& [sub, e] : subs) {
      if (!sub->parsed()) continue;
      mtc::experiments::ExperimentConfig cfg;
      cfg.experiment = e;
      cfg.params_file = common.config;
      cfg.output_dir = common.out;
      cfg.seed = common.seed;
      cfg.overrides = common.overrides;
      cfg.threads = common.threads;
      return report(mtc::experiments::run_experiment(cfg));
    }
  } catch (const std::exception& e) {
    std::cerr << mtc::experiments::error_json("runtime", e.what()) << '\n';
    return 1;
  }
  return 2;
}
