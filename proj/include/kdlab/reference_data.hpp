// Copyright 2026 The kdlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <string_view>

namespace kdlab::reference {

/// Published measurement results, reproduced verbatim as annotations. These
/// are hardware and vendor-simulator outcomes and are never recomputed.

inline constexpr std::array<double, 3> kTaus{0.0, 2.21, 3.66};

struct Row {
  std::string_view label;
  std::array<double, 3> values;  // at kTaus
};

/// Exact N_AS of the experimental setting.
inline constexpr Row kTheoryNas{"Theory", {0.000, 0.554, 0.988}};

/// N_AS from the vendor noisy simulators and hardware runs.
inline constexpr std::array<Row, 4> kNasReference{{
    {"IonQ Sim.", {-0.041, 0.364, 0.135}},
    {"IonQ Expt.", {0.888, -0.328, 0.472}},
    {"IBM Sim.", {-0.033, 0.007, 0.675}},
    {"IBM Expt.", {2.869, 1.800, 1.531}},
}};

/// RMSE of the four measured quasiprobabilities against the exact values.
inline constexpr std::array<Row, 4> kRmseReference{{
    {"IonQ Sim.", {0.294, 0.056, 0.159}},
    {"IonQ Expt.", {0.491, 0.364, 0.461}},
    {"IBM Sim.", {0.333, 0.127, 0.070}},
    {"IBM Expt.", {0.777, 0.563, 0.476}},
}};

/// Median device characterization across all qubits. Times in seconds,
/// error rates as probabilities. A zero rate means "not reported".
struct DeviceParameters {
  std::string_view name;
  double t1;
  double t2;
  double time_1q;
  double time_2q;
  double time_readout;
  double error_1q;
  double error_2q;
  double error_readout;
  double error_spam;
};

extern const DeviceParameters kIbmTorino;
extern const DeviceParameters kIonqAria1;

}  // namespace kdlab::reference
