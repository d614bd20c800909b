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

#include "kdlab/serialize.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kdlab {
namespace {

double finite_or_null(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

Json inf_as_null(double x) { return std::isinf(x) ? Json(nullptr) : Json(x); }

}  // namespace

Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

Json to_json(const QuasiTable& q) {
  Json out = Json::array();
  for (const auto& row : q) out.push_back(Json::array({to_json(row[0]), to_json(row[1])}));
  return out;
}

Json to_json(const RealTable& r) {
  Json out = Json::array();
  for (const auto& row : r) out.push_back(Json::array({row[0], row[1]}));
  return out;
}

QuasiTable quasi_table_from_json(const Json& j) {
  QuasiTable q{};
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) q[i][k] = complex_from_json(j.at(i).at(k));
  }
  return q;
}

Json to_json(const NonclassicalityReport& r) {
  return Json{{"n_as", r.n_as},         {"n_as_re", r.n_as_re}, {"n_as_im", r.n_as_im}, {"n_inf", r.n_inf},
              {"n_inf_re", r.n_inf_re}, {"n_inf_im", r.n_inf_im}, {"n_h", r.n_h}};
}

Json to_json(const ModificationTerms& mt) {
  return Json{{"real_term", to_json(mt.real_term)}, {"imag_term", to_json(mt.imag_term)}};
}

Json to_json(const ModelParams& p) {
  return Json{{"delta", p.delta}, {"omega", p.omega}, {"couplings", p.couplings}};
}

ModelParams model_from_json(const Json& j, ModelParams base) {
  if (j.contains("delta")) base.delta = j.at("delta").get<double>();
  if (j.contains("omega")) base.omega = j.at("omega").get<double>();
  if (j.contains("couplings")) base.couplings = j.at("couplings").get<std::vector<double>>();
  if (j.contains("n_env")) {
    const int n = j.at("n_env").get<int>();
    if (!j.contains("couplings")) {
      base.couplings.assign(static_cast<std::size_t>(std::max(n, 0)), base.couplings.empty() ? 1.0 : base.couplings[0]);
    } else if (n != base.n_env()) {
      throw std::invalid_argument("model: n_env disagrees with the length of couplings");
    }
  }
  base.validate();
  return base;
}

Json ket_to_json(const QubitKet& k) { return Json{{"ket", Json::array({to_json(k[0]), to_json(k[1])})}}; }

QubitKet ket_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.empty() || s.size() > 2 || (s.size() == 2 && s[1] != '0' && s[1] != '1')) {
      throw std::invalid_argument("state '" + s + "' is not of the form X, Y, Z, X0, Y1, ...");
    }
    return basis_ket(parse_basis(s.substr(0, 1)), s.size() == 2 ? s[1] - '0' : 0);
  }
  if (j.contains("basis")) return basis_ket(parse_basis(j.at("basis").get<std::string>()), j.value("outcome", 0));
  if (j.contains("bloch")) {
    const auto v = j.at("bloch").get<std::vector<double>>();
    if (v.size() != 3) throw std::invalid_argument("bloch vector must have 3 components");
    return ProjectorPair::from_bloch(Eigen::Vector3d(v[0], v[1], v[2])).ket(0);
  }
  if (j.contains("ket")) {
    const Json& k = j.at("ket");
    if (!k.is_array() || k.size() != 2) throw std::invalid_argument("ket must have 2 amplitudes");
    QubitKet out(complex_from_json(k[0]), complex_from_json(k[1]));
    if (out.norm() == 0.0) throw std::invalid_argument("ket must be nonzero");
    return out / out.norm();
  }
  throw std::invalid_argument("state needs one of: basis string, basis, bloch, ket");
}

Json to_json(const MeasurementSetting& s) {
  Json initial = Json::array();
  for (const auto& k : s.initial) initial.push_back(ket_to_json(k));
  return Json{{"site_a", s.site_a},
              {"a", ket_to_json(s.a.ket(0))},
              {"site_b", s.site_b},
              {"b", ket_to_json(s.b.ket(0))},
              {"initial", initial}};
}

MeasurementSetting setting_from_json(const Json& j, const ModelParams& params) {
  if (j.is_string()) {
    if (j.get<std::string>() != "inferred") {
      throw std::invalid_argument("setting: unknown preset '" + j.get<std::string>() + "' (expected inferred)");
    }
    return experiment_setting(0.0, params.n_env());
  }
  MeasurementSetting s;
  auto field = [&j](const char* name) -> const Json& {
    if (!j.contains(name)) throw std::invalid_argument(std::string("setting: missing field '") + name + "'");
    return j.at(name);
  };
  try {
    s.site_a = j.value("site_a", 1);
    s.site_b = j.value("site_b", 2);
    s.a = ProjectorPair(ket_from_json(field("a")));
    s.b = ProjectorPair(ket_from_json(field("b")));
    if (j.contains("initial")) {
      for (const auto& k : j.at("initial")) s.initial.push_back(ket_from_json(k));
    } else {
      s.initial.assign(static_cast<std::size_t>(params.n_qubits()), basis_ket(Basis::Z, 0));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("setting: ") + e.what());
  }
  s.validate(params);
  return s;
}

Json to_json(const SweepConfig& c) {
  return Json{{"omega_grid", c.omega_grid},
              {"tau_min", c.tau_min},
              {"tau_max", c.tau_max},
              {"tau_steps", c.tau_steps},
              {"n_settings", c.n_settings},
              {"seed", c.seed},
              {"measure", std::string(measure_name(c.measure))},
              {"resample_per_tau", c.resample_per_tau}};
}

SweepConfig sweep_config_from_json(const Json& j, SweepConfig base) {
  if (j.contains("omega_grid")) base.omega_grid = j.at("omega_grid").get<std::vector<double>>();
  if (j.contains("tau_min")) base.tau_min = j.at("tau_min").get<double>();
  if (j.contains("tau_max")) base.tau_max = j.at("tau_max").get<double>();
  if (j.contains("tau_steps")) base.tau_steps = j.at("tau_steps").get<int>();
  if (j.contains("n_settings")) base.n_settings = j.at("n_settings").get<int>();
  if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("measure")) base.measure = parse_measure(j.at("measure").get<std::string>());
  if (j.contains("resample_per_tau")) base.resample_per_tau = j.at("resample_per_tau").get<bool>();
  base.validate();
  return base;
}

Json to_json(const NoiseModel& n) {
  return Json{{"name", n.name},       {"p1", n.p1},
              {"p2", n.p2},           {"p_readout", n.p_readout},
              {"t1", inf_as_null(n.t1)}, {"t2", inf_as_null(n.t2)},
              {"time_1q", n.time_1q}, {"time_2q", n.time_2q}};
}

NoiseModel noise_from_json(const Json& j) {
  NoiseModel n;
  n.name = j.value("name", std::string("custom"));
  n.p1 = j.value("p1", 0.0);
  n.p2 = j.value("p2", 0.0);
  n.p_readout = j.value("p_readout", 0.0);
  if (j.contains("t1")) n.t1 = finite_or_null(j.at("t1"));
  if (j.contains("t2")) n.t2 = finite_or_null(j.at("t2"));
  n.time_1q = j.value("time_1q", 0.0);
  n.time_2q = j.value("time_2q", 0.0);
  n.validate();
  return n;
}

Json to_json(const ShotRecord& s) {
  return Json{{"part", std::string(part_name(s.part))},
              {"i", s.outcome_a},
              {"j", s.outcome_b},
              {"n_shots", s.n_shots},
              {"count_zero", s.count_zero}};
}

Json to_json(const KdEstimate& e) {
  Json shots = Json::array();
  for (const auto& s : e.shots) shots.push_back(to_json(s));
  return Json{{"q", to_json(e.q)},
              {"se_re", to_json(e.se_re)},
              {"se_im", to_json(e.se_im)},
              {"p0_real", to_json(e.probabilities.real)},
              {"p0_imag", to_json(e.probabilities.imag)},
              {"scale", e.probabilities.scale},
              {"shots", shots}};
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_heatmap_csv(std::ostream& os, const HeatmapDataset& d) {
  os << "omega,tau,bin_lo,bin_hi,count\n";
  for (const auto& panel : d.panels) {
    for (std::size_t t = 0; t < d.tau.size(); ++t) {
      for (std::size_t b = 0; b < panel.counts[t].size(); ++b) {
        os << format_double(panel.omega) << ',' << format_double(d.tau[t]) << ',' << format_double(d.bin_edges[b])
           << ',' << format_double(d.bin_edges[b + 1]) << ',' << panel.counts[t][b] << '\n';
      }
    }
  }
}

void write_cdf_csv(std::ostream& os, const CdfDataset& d) {
  os << "omega,value,cum_frac\n";
  for (const auto& panel : d.panels) {
    for (std::size_t k = 0; k < panel.values.size(); ++k) {
      os << format_double(panel.omega) << ',' << format_double(panel.values[k]) << ','
         << format_double(panel.cum_frac[k]) << '\n';
    }
  }
}

void write_trace_csv(std::ostream& os, const HeatmapDataset& d) {
  os << "omega,tau,value\n";
  for (const auto& panel : d.panels) {
    for (std::size_t t = 0; t < panel.designated_trace.size(); ++t) {
      os << format_double(panel.omega) << ',' << format_double(d.tau[t]) << ','
         << format_double(panel.designated_trace[t]) << '\n';
    }
  }
}

Json to_json(const HeatmapDataset& d) {
  Json panels = Json::array();
  for (const auto& p : d.panels) {
    panels.push_back(Json{{"omega", p.omega}, {"counts", p.counts}, {"designated_trace", p.designated_trace}});
  }
  return Json{{"tau", d.tau}, {"bin_edges", d.bin_edges}, {"panels", panels}};
}

Json to_json(const CdfDataset& d) {
  Json panels = Json::array();
  for (const auto& p : d.panels) panels.push_back(Json{{"omega", p.omega}, {"values", p.values}, {"cum_frac", p.cum_frac}});
  return Json{{"tau", d.tau}, {"panels", panels}};
}

}  // namespace kdlab
