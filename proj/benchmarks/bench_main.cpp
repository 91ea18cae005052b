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


#include <benchmark/benchmark.h>

#include "mtc/core.hpp"
#include "mtc/llg.hpp"
#include "mtc/network.hpp"

namespace {

mtc::MaterialParams material() {
  mtc::MaterialParams p;
  p.Ms = 1.0e6;
  p.Ki = 6.995e-4;
  p.xi = 80e-15;
  p.t_fl = 1.1e-9;
  p.area = 2.96e-15;
  p.Nx = 0.02;
  p.Ny = 0.02;
  p.Nz = 0.96;
  p.alpha = 1.0;
  p.theta_sot = 1.0;
  return p;
}

mtc::BehavioralParams behavioral() {
  mtc::BehavioralParams b;
  b.alpha1 = 0.0799;
  b.alpha2 = 31.10;
  b.gamma1 = 0.05;
  b.gamma2 = 7.5e5;
  b.V0 = 0.5;
  b.R = 67.6e3;
  b.C = 22e-12;
  return b;
}

void BM_LlgStep(benchmark::State& state) {
  const auto p = material();
  mtc::Rng rng(1);
  mtc::llg::MagnetizationState s;
  const mtc::llg::DriveInputs d{0.6, 0.0, {0, 1, 0}, {}};
  for (auto _ : state) {
    s = mtc::llg::step(s, p, d, mtc::llg::kDefaultDt, rng);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_LlgStep);

// Steps through simulate(), which reuses the integrator.
void BM_LlgSimulate1ns(benchmark::State& state) {
  const auto p = material();
  const auto drive = [](double) { return mtc::llg::DriveInputs{0.6, 0, {0, 1, 0}, {}}; };
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto rec = mtc::llg::simulate({}, p, drive, 1e-9, ++seed);
    benchmark::DoNotOptimize(rec);
  }
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_LlgSimulate1ns);

void BM_CoreAdvance(benchmark::State& state) {
  const auto p = material();
  const auto b = behavioral();
  const auto s = mtc::core::Schedule::rc_decay(b, 0.6);
  mtc::Rng rng(1);
  mtc::core::CoreState c{0, 0.6, 1e-6, 0.0};
  for (auto _ : state) {
    c = mtc::core::advance(c, b, p, s, 0.1e-9, rng);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_CoreAdvance);

void BM_AnnealTrial(benchmark::State& state) {
  mtc::network::BoltzmannNetwork net;
  const double w[] = {1, 1, 1, -1, 1, 1};
  net.W = mtc::network::WeightMatrix::from_pairs(4, w);
  net.i0 = 20e-6;
  net.material = material();
  net.behavioral = behavioral();
  net.schedule = mtc::core::Schedule::rc_decay(net.behavioral, 0.6);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto rec = mtc::network::run_trial(net, 3e-6, 0.1e-9, ++seed);
    benchmark::DoNotOptimize(rec);
  }
}
BENCHMARK(BM_AnnealTrial)->Unit(benchmark::kMillisecond);

void BM_Landscape(benchmark::State& state) {
  for (auto _ : state) {
    auto land = mtc::network::enumerate_landscape(static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(land);
  }
}
BENCHMARK(BM_Landscape)->Arg(4)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
