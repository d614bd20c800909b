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

#include "kdlab/reference_data.hpp"

namespace kdlab::reference {

// 133-qubit heavy-hexagon superconducting device (ibm_torino).
const DeviceParameters kIbmTorino{
    .name = "ibm_torino",
    .t1 = 183.29e-6,
    .t2 = 141.73e-6,
    .time_1q = 32e-9,
    .time_2q = 68e-9,
    .time_readout = 1560e-9,
    .error_1q = 0.037e-2,
    .error_2q = 0.286e-2,
    .error_readout = 2.539e-2,
    .error_spam = 0.0,
};

// 25-qubit all-to-all trapped-ion device (IonQ Aria-1). Readout is only
// reported as a combined SPAM error.
const DeviceParameters kIonqAria1{
    .name = "ionq_aria_1",
    .t1 = 100.0,
    .t2 = 1.0,
    .time_1q = 135e-6,
    .time_2q = 600e-6,
    .time_readout = 300e-6,
    .error_1q = 0.010e-2,
    .error_2q = 1.240e-2,
    .error_readout = 0.0,
    .error_spam = 0.370e-2,
};

}  // namespace kdlab::reference
