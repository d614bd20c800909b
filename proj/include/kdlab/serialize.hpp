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

#include <ostream>
#include <string>

#include "json.hpp"
#include "kdlab/circuit.hpp"
#include "kdlab/kdq.hpp"
#include "kdlab/model.hpp"
#include "kdlab/noise.hpp"
#include "kdlab/sweep.hpp"

namespace kdlab {

using Json = nlohmann::ordered_json;

/// {"re": x, "im": y}.
Json to_json(Complex z);
Complex complex_from_json(const Json& j);

Json to_json(const QuasiTable& q);
Json to_json(const RealTable& r);
QuasiTable quasi_table_from_json(const Json& j);

Json to_json(const NonclassicalityReport& r);
Json to_json(const ModificationTerms& mt);

Json to_json(const ModelParams& p);
ModelParams model_from_json(const Json& j, ModelParams base = {});

/// Single-qubit state description. Accepted forms: "X0"/"Y1"/"Z0" (basis and
/// outcome), "Z" (outcome 0), {"basis": "Y", "outcome": 1},
/// {"bloch": [x, y, z]} and {"ket": [{re, im}, {re, im}]}. Written as "ket".
Json ket_to_json(const QubitKet& k);
QubitKet ket_from_json(const Json& j);

/// {"site_a", "a", "site_b", "b", "initial"}; `a`/`b` are kets spanning the
/// outcome-0 projector. time_a is not stored.
Json to_json(const MeasurementSetting& s);
MeasurementSetting setting_from_json(const Json& j, const ModelParams& params);

Json to_json(const SweepConfig& c);
SweepConfig sweep_config_from_json(const Json& j, SweepConfig base = {});

Json to_json(const NoiseModel& n);
NoiseModel noise_from_json(const Json& j);

Json to_json(const ShotRecord& s);
Json to_json(const KdEstimate& e);

/// Shortest round-trip decimal form, as used in every CSV writer.
std::string format_double(double x);

/// omega,tau,bin_lo,bin_hi,count
void write_heatmap_csv(std::ostream& os, const HeatmapDataset& d);
/// omega,value,cum_frac
void write_cdf_csv(std::ostream& os, const CdfDataset& d);
/// omega,tau,value for the designated setting of each panel.
void write_trace_csv(std::ostream& os, const HeatmapDataset& d);
Json to_json(const HeatmapDataset& d);
Json to_json(const CdfDataset& d);

}  // namespace kdlab
