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

#include "mtc/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mtc::config {

namespace {

using enum ValueType;

// clang-format off
constexpr std::array kSchema = {
  KeySpec{"schema", kInteger, true, "", "format version, must be 1"},

  KeySpec{"material.Ms", kNumber, true, "", "saturation magnetization [A/m]"},
  KeySpec{"material.Ki", kNumber, true, "", "interfacial PMA coefficient [J/m^2]"},
  KeySpec{"material.xi", kNumber, true, "", "VCMA coefficient [J/(V m)]"},
  KeySpec{"material.t_fl", kNumber, true, "", "free-layer thickness [m]"},
  KeySpec{"material.area", kNumber, true, "", "junction area [m^2]"},
  KeySpec{"material.Nx", kNumber, true, "", "demagnetization factor x"},
  KeySpec{"material.Ny", kNumber, true, "", "demagnetization factor y"},
  KeySpec{"material.Nz", kNumber, true, "", "demagnetization factor z"},
  KeySpec{"material.alpha", kNumber, true, "", "Gilbert damping"},
  KeySpec{"material.theta_sot", kNumber, true, "", "spin Hall angle"},
  KeySpec{"material.T", kNumber, true, "", "temperature [K]"},
  KeySpec{"material.tau0", kNumber, true, "", "attempt time [s]"},

  KeySpec{"behavioral.alpha1", kNumber, true, "", "base switching rate [1/s]"},
  KeySpec{"behavioral.alpha2", kNumber, true, "", "voltage sensitivity of the rate [1/V]"},
  KeySpec{"behavioral.gamma1", kNumber, true, "", "bias logit offset"},
  KeySpec{"behavioral.gamma2", kNumber, true, "", "bias logit per SOT current [1/A]"},
  KeySpec{"behavioral.V0", kNumber, true, "", "equilibrium junction voltage [V]"},
  KeySpec{"behavioral.R", kNumber, true, "", "junction resistance [Ohm]"},
  KeySpec{"behavioral.C", kNumber, true, "", "junction capacitance [F]"},
  KeySpec{"behavioral.V_ref", kNumber, true, "", "voltage at which gamma1, gamma2 apply [V]"},

  KeySpec{"llg.dt", kNumber, true, "", "LLG time step [s], at most 1e-12"},

  KeySpec{"retention.voltages", kNumberList, true, "", "junction voltages of the sweep [V]"},
  KeySpec{"retention.n_trials", kInteger, true, "", "first-passage trials per voltage"},
  KeySpec{"retention.horizon", kNumber, true, "", "censoring horizon per trial [s]"},

  KeySpec{"sot.bus_width", kNumber, true, "", "SOT bus width [m]"},
  KeySpec{"sot.bus_thickness", kNumber, true, "", "SOT bus thickness [m]"},
  KeySpec{"sot.hx", kNumber, true, "", "in-plane x field during SOT pulses [A/m]"},
  KeySpec{"sot.v_pulse", kNumber, true, "", "junction voltage during the pulse [V]"},
  KeySpec{"sot.t_pulse", kNumber, true, "", "pulse length [s]"},
  KeySpec{"sot.settle_time", kNumber, true, "", "relaxation after the pulse before readout [s]"},
  KeySpec{"sot.currents", kNumberList, true, "", "SOT currents of the sweep [A]"},
  KeySpec{"sot.n_trials", kInteger, true, "", "trials per current"},

  KeySpec{"network.weights", kNumberList, true, "", "pair weights W_ij, i<j, lexicographic"},
  KeySpec{"network.i0", kNumber, true, "", "current per unit weighted sum [A]"},

  KeySpec{"schedule.kind", kString, true, "", "rc_decay or table"},
  KeySpec{"schedule.v_init", kNumber, true, "", "initial junction voltage [V]"},
  KeySpec{"schedule.table", kNumberList, false, "", "t0, V0, t1, V1, ... for kind = table"},

  KeySpec{"anneal.n_trials", kInteger, true, "", "trials in the ensemble"},
  KeySpec{"anneal.duration", kNumber, true, "", "length of one trial [s]"},
  KeySpec{"anneal.dt", kNumber, true, "", "network step [s]"},
  KeySpec{"anneal.trajectories", kInteger, false, "0", "number of trials whose trajectories are exported"},

  KeySpec{"landscape.n", kInteger, true, "", "neurons in the enumerated landscape (2..5)"},
};
// clang-format on

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size() &&
         std::isfinite(out);
}

bool parse_int(std::string_view s, std::int64_t& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

bool parse_list(std::string_view s, std::vector<double>& out) {
  out.clear();
  s = trim(s);
  if (s.empty()) return true;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    double v = 0;
    if (!parse_double(s.substr(start, comma - start), v)) return false;
    out.push_back(v);
    if (comma == std::string_view::npos) return true;
    start = comma + 1;
  }
}

void check_value(const KeySpec& spec, const std::string& value) {
  bool ok = true;
  switch (spec.type) {
    case kNumber: {
      double d;
      ok = parse_double(value, d);
      break;
    }
    case kInteger: {
      std::int64_t i;
      ok = parse_int(value, i);
      break;
    }
    case kString:
      ok = !value.empty();
      break;
    case kNumberList: {
      std::vector<double> v;
      ok = parse_list(value, v);
      break;
    }
  }
  if (!ok) {
    throw ConfigError("malformed value for " + std::string(spec.key) + ": '" +
                      value + "'");
  }
}

}  // namespace

std::span<const KeySpec> schema() { return kSchema; }

const KeySpec* find_key(std::string_view key) {
  for (const auto& k : kSchema) {
    if (k.key == key) return &k;
  }
  return nullptr;
}

Config Config::parse(std::string_view text, std::string_view origin) {
  Config cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto where = std::string(origin) + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!find_key(key)) {
      throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
    }
    if (cfg.values_.contains(key)) {
      throw ConfigError(where + ": duplicate key '" + std::string(key) + "'");
    }
    cfg.values_.emplace(std::string(key), std::string(value));
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

void Config::set(std::string_view key, std::string_view value) {
  key = trim(key);
  if (!find_key(key)) {
    throw ConfigError("unknown key in override: '" + std::string(key) + "'");
  }
  values_.insert_or_assign(std::string(key), std::string(trim(value)));
}

void Config::apply_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override must look like key=value: '" +
                      std::string(assignment) + "'");
  }
  set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

void Config::finalize() {
  for (const auto& spec : kSchema) {
    auto it = values_.find(spec.key);
    if (it == values_.end()) {
      if (spec.required) {
        throw ConfigError("missing required key '" + std::string(spec.key) + "'");
      }
      if (!spec.fallback.empty()) {
        values_.emplace(std::string(spec.key), std::string(spec.fallback));
      }
      continue;
    }
    check_value(spec, it->second);
  }
  if (integer("schema") != kSchemaVersion) {
    throw ConfigError("unsupported schema " + raw("schema") + " (expected " +
                      std::to_string(kSchemaVersion) + ")");
  }
}

bool Config::has(std::string_view key) const { return values_.contains(key); }

const std::string& Config::raw(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError("key '" + std::string(key) + "' is not set");
  }
  return it->second;
}

double Config::number(std::string_view key) const {
  double d = 0;
  if (!parse_double(raw(key), d)) {
    throw ConfigError("key '" + std::string(key) + "' is not a number");
  }
  return d;
}

std::int64_t Config::integer(std::string_view key) const {
  std::int64_t i = 0;
  if (!parse_int(raw(key), i)) {
    throw ConfigError("key '" + std::string(key) + "' is not an integer");
  }
  return i;
}

std::uint64_t Config::count(std::string_view key) const {
  const auto i = integer(key);
  if (i < 0) throw ConfigError("key '" + std::string(key) + "' must be >= 0");
  return static_cast<std::uint64_t>(i);
}

const std::string& Config::string(std::string_view key) const { return raw(key); }

std::vector<double> Config::numbers(std::string_view key) const {
  std::vector<double> out;
  if (!parse_list(raw(key), out)) {
    throw ConfigError("key '" + std::string(key) + "' is not a number list");
  }
  return out;
}

std::string Config::to_text() const {
  std::ostringstream out;
  for (const auto& spec : kSchema) {
    const auto it = values_.find(spec.key);
    if (it != values_.end()) out << spec.key << " = " << it->second << '\n';
  }
  return out.str();
}

namespace {

template <typename Fn>
auto wrap(Fn&& fn) {
  try {
    return fn();
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  } catch (const core::StructureError& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

MaterialParams material_from(const Config& cfg) {
  MaterialParams p;
  p.Ms = cfg.number("material.Ms");
  p.Ki = cfg.number("material.Ki");
  p.xi = cfg.number("material.xi");
  p.t_fl = cfg.number("material.t_fl");
  p.area = cfg.number("material.area");
  p.Nx = cfg.number("material.Nx");
  p.Ny = cfg.number("material.Ny");
  p.Nz = cfg.number("material.Nz");
  p.alpha = cfg.number("material.alpha");
  p.theta_sot = cfg.number("material.theta_sot");
  p.T = cfg.number("material.T");
  p.tau0 = cfg.number("material.tau0");
  wrap([&] { p.validate(); return 0; });
  return p;
}

BehavioralParams behavioral_from(const Config& cfg) {
  BehavioralParams b;
  b.alpha1 = cfg.number("behavioral.alpha1");
  b.alpha2 = cfg.number("behavioral.alpha2");
  b.gamma1 = cfg.number("behavioral.gamma1");
  b.gamma2 = cfg.number("behavioral.gamma2");
  b.V0 = cfg.number("behavioral.V0");
  b.R = cfg.number("behavioral.R");
  b.C = cfg.number("behavioral.C");
  b.V_ref = cfg.number("behavioral.V_ref");
  wrap([&] { b.validate(); return 0; });
  return b;
}

core::Schedule schedule_from(const Config& cfg, const BehavioralParams& b) {
  const auto& kind = cfg.string("schedule.kind");
  return wrap([&] {
    if (kind == "rc_decay") {
      return core::Schedule::rc_decay(b, cfg.number("schedule.v_init"));
    }
    if (kind == "table") {
      if (!cfg.has("schedule.table")) {
        throw ConfigError("schedule.kind = table needs schedule.table");
      }
      const auto flat = cfg.numbers("schedule.table");
      if (flat.empty() || flat.size() % 2 != 0) {
        throw ConfigError("schedule.table must hold t, V pairs");
      }
      std::vector<core::Breakpoint> pts;
      for (std::size_t i = 0; i < flat.size(); i += 2) {
        pts.push_back({flat[i], flat[i + 1]});
      }
      return core::Schedule::table(std::move(pts));
    }
    throw ConfigError("schedule.kind must be rc_decay or table, got '" + kind +
                      "'");
  });
}

network::BoltzmannNetwork network_from(const Config& cfg) {
  const auto pairs = cfg.numbers("network.weights");
  std::size_t n = 2;
  while (network::pair_count(n) < pairs.size()) ++n;
  if (network::pair_count(n) != pairs.size()) {
    throw ConfigError("network.weights must hold n(n-1)/2 values, got " +
                      std::to_string(pairs.size()));
  }
  network::BoltzmannNetwork net;
  net.W = wrap([&] { return network::WeightMatrix::from_pairs(n, pairs); });
  net.i0 = cfg.number("network.i0");
  net.material = material_from(cfg);
  net.behavioral = behavioral_from(cfg);
  net.schedule = schedule_from(cfg, net.behavioral);
  return net;
}

llg::SotGeometry sot_geometry_from(const Config& cfg) {
  llg::SotGeometry g;
  g.bus_width = cfg.number("sot.bus_width");
  g.bus_thickness = cfg.number("sot.bus_thickness");
  g.hx = cfg.number("sot.hx");
  if (!(g.bus_width > 0) || !(g.bus_thickness > 0)) {
    throw ConfigError("SOT bus dimensions must be > 0");
  }
  return g;
}

}  // namespace mtc::config
