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

#ifndef MTC_CONFIG_HPP_
#define MTC_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mtc/core.hpp"
#include "mtc/llg.hpp"
#include "mtc/network.hpp"
#include "mtc/params.hpp"

// Flat key-value parameter files:
//
//   # comment
//   schema = 1
//   material.Ms = 1.0e6        # trailing comments are allowed
//   network.weights = 1, 1, 1, -1, 1, 1
//
// Parsing is strict: unknown keys, duplicate keys, missing required keys and
// malformed values are all errors, reported before any computation starts.
namespace mtc::config {

inline constexpr int kSchemaVersion = 1;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ValueType { kNumber, kInteger, kString, kNumberList };

struct KeySpec {
  std::string_view key;
  ValueType type;
  bool required;
  std::string_view fallback;  // used when !required and the key is absent
  std::string_view doc;
};

// Every key the harness understands, in documentation order.
std::span<const KeySpec> schema();
const KeySpec* find_key(std::string_view key);

class Config {
 public:
  static Config parse(std::string_view text, std::string_view origin = "<text>");
  static Config load(const std::filesystem::path& path);

  // Overrides (or adds) one key. The key must be in the schema.
  void set(std::string_view key, std::string_view value);
  // "key=value" form of set().
  void apply_override(std::string_view assignment);

  // Fills optional keys, then checks presence and types of every key.
  void finalize();

  double number(std::string_view key) const;
  std::int64_t integer(std::string_view key) const;
  std::uint64_t count(std::string_view key) const;  // integer >= 0
  const std::string& string(std::string_view key) const;
  std::vector<double> numbers(std::string_view key) const;
  bool has(std::string_view key) const;

  const std::map<std::string, std::string, std::less<>>& values() const {
    return values_;
  }

  // Canonical text: schema first, then keys in schema order.
  std::string to_text() const;

 private:
  const std::string& raw(std::string_view key) const;

  std::map<std::string, std::string, std::less<>> values_;
};

MaterialParams material_from(const Config& cfg);
BehavioralParams behavioral_from(const Config& cfg);
core::Schedule schedule_from(const Config& cfg, const BehavioralParams& b);
network::BoltzmannNetwork network_from(const Config& cfg);
llg::SotGeometry sot_geometry_from(const Config& cfg);

}  // namespace mtc::config

#endif  // MTC_CONFIG_HPP_
