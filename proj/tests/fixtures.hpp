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


#ifndef MTC_TESTS_FIXTURES_HPP_
#define MTC_TESTS_FIXTURES_HPP_

#include <filesystem>
#include <string>

#include "mtc/config.hpp"

namespace mtc::testing {

inline std::filesystem::path source_dir() { return MTC_SOURCE_DIR; }

inline config::Config default_config() {
  auto cfg = config::Config::load(source_dir() / "configs" / "default.cfg");
  cfg.finalize();
  return cfg;
}

inline MaterialParams default_material() {
  return config::material_from(default_config());
}

inline BehavioralParams default_behavioral() {
  return config::behavioral_from(default_config());
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("mtc_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace mtc::testing

#endif  // MTC_TESTS_FIXTURES_HPP_
