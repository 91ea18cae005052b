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

#ifndef MTC_RANDOM_HPP_
#define MTC_RANDOM_HPP_

#include <cstdint>
#include <random>

namespace mtc {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Per-trial seed: mix64(mix64(root ^ mix64(stream)) + index). Trial `index`
// of stream `stream` is reproducible from the root seed alone, independent
// of how many other trials ran or on which thread.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream,
                                    std::uint64_t index) {
  return mix64(mix64(root ^ mix64(stream)) + index);
}

// Well-known stream ids, so different experiments never share draws.
enum class SeedStream : std::uint64_t {
  kRetention = 1,
  kSwitchProbability = 2,
  kAnneal = 3,
  kOccupancy = 4,
  kTrace = 5,
};

constexpr std::uint64_t derive_seed(std::uint64_t root, SeedStream stream,
                                    std::uint64_t index) {
  return derive_seed(root, static_cast<std::uint64_t>(stream), index);
}

}  // namespace mtc

#endif  // MTC_RANDOM_HPP_
