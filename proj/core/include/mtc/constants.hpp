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

#ifndef MTC_CONSTANTS_HPP_
#define MTC_CONSTANTS_HPP_

#include <numbers>

// Physical constants, SI (CODATA 2018).
namespace mtc::constants {

inline constexpr double kMu0 = 1.25663706212e-6;           // T·m/A
inline constexpr double kBoltzmann = 1.380649e-23;         // J/K
inline constexpr double kHbar = 1.054571817e-34;           // J·s
inline constexpr double kElectronCharge = 1.602176634e-19; // C
inline constexpr double kGyromagneticRatio = 1.76085963023e11;  // rad/(s·T)
inline constexpr double kPi = std::numbers::pi;

// Gaussian-unit conversion: 1 Oe = 1000/(4π) A/m.
inline constexpr double kOerstedToAm = 1000.0 / (4.0 * kPi);

// All exp() evaluations in the device model saturate at this exponent.
inline constexpr double kExpCap = 700.0;

}  // namespace mtc::constants

#endif  // MTC_CONSTANTS_HPP_
