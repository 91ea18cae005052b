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


#ifndef MTC_EXPERIMENTS_HPP_
#define MTC_EXPERIMENTS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mtc/config.hpp"

namespace mtc::experiments {

enum class Experiment { kRetentionSweep, kSotBias, kLandscape, kAnneal, kCalibrate };

std::string_view name(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view s);

struct ExperimentConfig {
  Experiment experiment = Experiment::kLandscape;
  std::filesystem::path params_file;
  std::filesystem::path output_dir = ".";
  std::uint64_t seed = 1;
  std::vector<std::string> overrides;  // "key=value"
  unsigned threads = 0;                // 0: available parallelism
};

struct RunResult {
  int exit_status = 0;  // 0 on success
  std::filesystem::path manifest;
  std::vector<std::filesystem::path> outputs;  // CSVs and companions
  std::string error;  // empty on success
};

// Loads params_file, applies overrides and runs. Errors are reported in the
// result and the manifest; only a failure to write the manifest throws.
RunResult run_experiment(const ExperimentConfig& cfg);

// Runs with an already resolved configuration.
RunResult run_resolved(Experiment experiment, config::Config resolved,
                       const std::filesystem::path& output_dir,
                       std::uint64_t seed, unsigned threads);

// Replays a manifest into output_dir. `threads` replaces the recorded count
// when set; results do not depend on it.
RunResult rerun_from_manifest(const std::filesystem::path& manifest,
                              const std::filesystem::path& output_dir,
                              std::optional<unsigned> threads = std::nullopt);

// {"error": {"kind": ..., "message": ...}} on one line.
std::string error_json(std::string_view kind, std::string_view message);

std::string_view code_version();

}  // namespace mtc::experiments

#endif  // MTC_EXPERIMENTS_HPP_
