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

#include "kdlab/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kdlab/reference_data.hpp"

namespace kdlab {
namespace {

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, x);
  return buf;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

template <class F>
auto as_config_error(const char* what, F&& f) {
  try {
    return f();
  } catch (const CliError&) {
    throw;
  } catch (const std::exception& e) {
    throw CliError("config", std::string(what) + ": " + e.what());
  }
}

struct TauRow {
  double tau;
  KDDistribution kd;
  TPMDistribution tpm;
  ModificationTerms mt;
  NonclassicalityReport report;
};

TauRow exact_row(const RunConfig& c, double tau) {
  const MeasurementSetting s = c.resolved_setting(tau);
  TauRow r{tau, kd_distribution(s, c.model), tpm_distribution(s, c.model), modification_terms(s, c.model), {}};
  r.report = measures(r.kd, r.mt);
  return r;
}

EstimateOptions estimate_options(const RunConfig& c, std::optional<NoiseModel> noise) {
  EstimateOptions o;
  o.shots_per_part = c.shots;
  o.n_trotter = c.n_trotter;
  if (noise) o.noise = noise->scaled(c.noise_scale);
  o.n_trajectories = c.n_trajectories;
  return o;
}

}  // namespace

Command parse_command(std::string_view name) {
  if (name == "exact") return Command::EXACT;
  if (name == "sweep") return Command::SWEEP;
  if (name == "circuit") return Command::CIRCUIT;
  if (name == "bench") return Command::BENCH;
  throw CliError("config", "unknown command '" + std::string(name) + "'");
}

std::string_view command_name(Command c) {
  switch (c) {
    case Command::EXACT:
      return "exact";
    case Command::SWEEP:
      return "sweep";
    case Command::CIRCUIT:
      return "circuit";
    case Command::BENCH:
      return "bench";
  }
  return "exact";
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::CSV;
  if (name == "json") return OutputFormat::JSON;
  throw CliError("config", "unknown format '" + std::string(name) + "' (expected csv or json)");
}

std::string_view format_name(OutputFormat f) { return f == OutputFormat::CSV ? "csv" : "json"; }

void RunConfig::validate() const {
  as_config_error("model", [this] {
    model.validate();
    return 0;
  });
  as_config_error("sweep", [this] {
    sweep.validate();
    return 0;
  });
  if (taus.empty()) throw CliError("config", "taus: at least one value required");
  for (double t : taus) {
    if (!std::isfinite(t)) throw CliError("config", "taus: values must be finite");
  }
  if (shots && *shots < 1) throw CliError("config", "circuit.shots: must be >= 1 or \"exact\"");
  if (n_trotter < 1) throw CliError("config", "circuit.n_trotter: must be >= 1");
  if (n_trajectories < 1) throw CliError("config", "circuit.n_trajectories: must be >= 1");
  if (!(noise_scale >= 0.0) || !std::isfinite(noise_scale)) {
    throw CliError("config", "circuit.noise_scale: must be finite and >= 0");
  }
  if (noise == "custom") {
    if (!custom_noise) throw CliError("config", "circuit.noise: custom preset without a model");
  } else {
    as_config_error("circuit.noise", [this] { return NoiseModel::preset(noise); });
  }
  try {
    resolved_setting(taus.front());
  } catch (const std::exception& e) {
    throw CliError("setting", e.what());
  }
}

MeasurementSetting RunConfig::resolved_setting(double tau) const {
  MeasurementSetting s = setting ? *setting : experiment_setting(tau, model.n_env());
  s.time_a = tau;
  s.validate(model);
  return s;
}

std::optional<NoiseModel> RunConfig::noise_model() const {
  if (noise == "none") return std::nullopt;
  if (noise == "custom") return custom_noise;
  return NoiseModel::preset(noise);
}

RunConfig config_from_json(const Json& in, RunConfig c) {
  const Json& j = in.contains("config") ? in.at("config") : in;
  if (!j.is_object()) throw CliError("config", "config must be a JSON object");
  as_config_error("config", [&] {
    if (j.contains("command")) c.command = parse_command(j.at("command").get<std::string>());
    if (j.contains("model")) c.model = model_from_json(j.at("model"), c.model);
    if (j.contains("taus")) c.taus = j.at("taus").get<std::vector<double>>();
    if (j.contains("sweep")) c.sweep = sweep_config_from_json(j.at("sweep"), c.sweep);
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("circuit")) {
      const Json& k = j.at("circuit");
      if (k.contains("shots")) {
        if (k.at("shots").is_string()) {
          if (k.at("shots").get<std::string>() != "exact") throw std::invalid_argument("shots: expected N or \"exact\"");
          c.shots.reset();
        } else {
          c.shots = k.at("shots").get<std::uint64_t>();
        }
      }
      if (k.contains("n_trotter")) c.n_trotter = k.at("n_trotter").get<int>();
      if (k.contains("n_trajectories")) c.n_trajectories = k.at("n_trajectories").get<int>();
      if (k.contains("noise_scale")) c.noise_scale = k.at("noise_scale").get<double>();
      if (k.contains("noise")) {
        const Json& n = k.at("noise");
        if (n.is_string()) {
          c.noise = n.get<std::string>();
          c.custom_noise.reset();
        } else {
          c.noise = "custom";
          c.custom_noise = noise_from_json(n);
        }
      }
    }
    if (j.contains("output")) {
      const Json& o = j.at("output");
      if (o.contains("path")) c.out = o.at("path").get<std::string>();
      if (o.contains("format")) c.format = parse_format(o.at("format").get<std::string>());
    }
    return 0;
  });
  if (j.contains("setting")) {
    try {
      c.setting.reset();
      const Json& s = j.at("setting");
      if (!(s.is_string() && s.get<std::string>() == "inferred")) c.setting = setting_from_json(s, c.model);
    } catch (const std::exception& e) {
      throw CliError("setting", e.what());
    }
  }
  return c;
}

Json config_to_json(const RunConfig& c) {
  SweepConfig sweep = c.sweep;
  sweep.seed = c.seed;
  Json sweep_json = to_json(sweep);
  sweep_json.erase("seed");
  Json circuit{{"shots", c.shots ? Json(*c.shots) : Json("exact")},
               {"n_trotter", c.n_trotter},
               {"noise", c.noise == "custom" && c.custom_noise ? to_json(*c.custom_noise) : Json(c.noise)},
               {"noise_scale", c.noise_scale},
               {"n_trajectories", c.n_trajectories}};
  return Json{{"command", std::string(command_name(c.command))},
              {"model", to_json(c.model)},
              {"setting", c.setting ? to_json(*c.setting) : Json("inferred")},
              {"taus", c.taus},
              {"sweep", sweep_json},
              {"circuit", circuit},
              {"seed", c.seed},
              {"output", Json{{"path", c.out}, {"format", std::string(format_name(c.format))}}}};
}

Json manifest(const RunConfig& c) {
  return Json{{"artifact", "kdlab"}, {"version", std::string(kVersion)}, {"seed", c.seed}, {"config", config_to_json(c)}};
}

RunResult run_exact(const RunConfig& c) {
  c.validate();
  std::vector<TauRow> rows;
  for (double tau : c.taus) rows.push_back(exact_row(c, tau));

  RunResult r;
  std::ostringstream sum;
  sum << "tau        N_AS       N_inf      N_H\n";
  for (const auto& row : rows) {
    sum << fmt("%-10.4g ", row.tau) << fmt("%-10.6f ", row.report.n_as) << fmt("%-10.6f ", row.report.n_inf)
        << fmt("%.6f\n", row.report.n_h);
  }
  r.summary = sum.str();

  if (c.format == OutputFormat::JSON) {
    Json results = Json::array();
    for (const auto& row : rows) {
      results.push_back(Json{{"tau", row.tau},
                             {"q", to_json(row.kd.q)},
                             {"p", to_json(row.tpm.p)},
                             {"modification", to_json(row.mt)},
                             {"measures", to_json(row.report)}});
    }
    r.files.push_back({"exact.json", dump(Json{{"model", to_json(c.model)},
                                               {"setting", to_json(c.resolved_setting(0.0))},
                                               {"results", results}})});
    return r;
  }
  std::ostringstream kd;
  kd << "tau,i,j,q_re,q_im,p,real_term,imag_term\n";
  std::ostringstream ms;
  ms << "tau,n_as,n_as_re,n_as_im,n_inf,n_inf_re,n_inf_im,n_h\n";
  for (const auto& row : rows) {
    const std::string t = format_double(row.tau);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        kd << t << ',' << i << ',' << j << ',' << format_double(row.kd.q[i][j].real()) << ','
           << format_double(row.kd.q[i][j].imag()) << ',' << format_double(row.tpm.p[i][j]) << ','
           << format_double(row.mt.real_term[i][j]) << ',' << format_double(row.mt.imag_term[i][j]) << '\n';
      }
    }
    const auto& m = row.report;
    ms << t << ',' << format_double(m.n_as) << ',' << format_double(m.n_as_re) << ',' << format_double(m.n_as_im)
       << ',' << format_double(m.n_inf) << ',' << format_double(m.n_inf_re) << ',' << format_double(m.n_inf_im) << ','
       << format_double(m.n_h) << '\n';
  }
  r.files.push_back({"kd.csv", kd.str()});
  r.files.push_back({"measures.csv", ms.str()});
  return r;
}

RunResult run_sweep(const RunConfig& c) {
  c.validate();
  SweepConfig sc = c.sweep;
  sc.seed = c.seed;
  const HeatmapDataset heat = sweep_heatmap(sc, c.model);
  std::vector<CdfDataset> cdfs;
  for (double tau : c.taus) cdfs.push_back(sweep_cdf(sc, c.model, tau));

  RunResult r;
  std::ostringstream sum;
  sum << "measure " << measure_name(sc.measure) << ", " << sc.n_settings << " settings\n";
  sum << "omega      tau        min          median       max\n";
  for (const auto& cdf : cdfs) {
    for (const auto& panel : cdf.panels) {
      const PanelSummary s = summarize(panel);
      sum << fmt("%-10.4g ", s.omega) << fmt("%-10.4g ", cdf.tau) << fmt("%-12.4e ", s.min)
          << fmt("%-12.4e ", s.median) << fmt("%.4e\n", s.max);
    }
  }
  r.summary = sum.str();

  if (c.format == OutputFormat::JSON) {
    Json cdf_json = Json::array();
    for (const auto& cdf : cdfs) cdf_json.push_back(to_json(cdf));
    r.files.push_back({"heatmap.json", dump(to_json(heat))});
    r.files.push_back({"cdf.json", dump(cdf_json)});
    return r;
  }
  std::ostringstream h, t, cd;
  write_heatmap_csv(h, heat);
  write_trace_csv(t, heat);
  cd << "tau,";
  bool header = true;
  for (const auto& cdf : cdfs) {
    std::ostringstream one;
    write_cdf_csv(one, cdf);
    std::istringstream lines(one.str());
    std::string line;
    std::getline(lines, line);
    if (header) {
      cd << line << '\n';
      header = false;
    }
    while (std::getline(lines, line)) cd << format_double(cdf.tau) << ',' << line << '\n';
  }
  r.files.push_back({"heatmap.csv", h.str()});
  r.files.push_back({"trace.csv", t.str()});
  r.files.push_back({"cdf.csv", cd.str()});
  return r;
}

RunResult run_circuit(const RunConfig& c) {
  c.validate();
  const auto noise = c.noise_model();
  RunResult r;
  Json results = Json::array();
  std::ostringstream csv, summary_csv, sum;
  csv << "tau,i,j,q_re,q_im,se_re,se_im,exact_re,exact_im,dev_re_sigma,dev_im_sigma\n";
  summary_csv << "tau,rmse,n_as_estimate,n_as_exact\n";
  sum << "noise " << c.noise << ", shots " << (c.shots ? std::to_string(*c.shots) : "exact") << ", trotter "
      << c.n_trotter << "\n";
  sum << "tau        RMSE         N_AS est     N_AS exact\n";
  for (std::size_t k = 0; k < c.taus.size(); ++k) {
    const double tau = c.taus[k];
    const MeasurementSetting s = c.resolved_setting(tau);
    const KDDistribution exact = kd_distribution(s, c.model);
    CounterRng rng(c.seed, k);
    KdEstimate est;
    try {
      est = estimate_kd(s, c.model, estimate_options(c, noise), rng);
    } catch (const UnsupportedPreparation& e) {
      throw CliError("unsupported_setting", e.what());
    }
    const double err = rmse(est.q, exact.q);
    const double nas_est = n_as(est.q);
    const double nas_exact = n_as(exact.q);
    const std::string t = format_double(tau);
    auto sigma = [](double diff, double se) { return se > 0.0 ? format_double(diff / se) : std::string(); };
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const Complex d = est.q[i][j] - exact.q[i][j];
        csv << t << ',' << i << ',' << j << ',' << format_double(est.q[i][j].real()) << ','
            << format_double(est.q[i][j].imag()) << ',' << format_double(est.se_re[i][j]) << ','
            << format_double(est.se_im[i][j]) << ',' << format_double(exact.q[i][j].real()) << ','
            << format_double(exact.q[i][j].imag()) << ',' << sigma(d.real(), est.se_re[i][j]) << ','
            << sigma(d.imag(), est.se_im[i][j]) << '\n';
      }
    }
    summary_csv << t << ',' << format_double(err) << ',' << format_double(nas_est) << ',' << format_double(nas_exact)
                << '\n';
    sum << fmt("%-10.4g ", tau) << fmt("%-12.6f ", err) << fmt("%-12.6f ", nas_est) << fmt("%.6f\n", nas_exact);
    results.push_back(Json{{"tau", tau},
                           {"estimate", to_json(est)},
                           {"exact", to_json(exact.q)},
                           {"rmse", err},
                           {"n_as_estimate", nas_est},
                           {"n_as_exact", nas_exact}});
  }
  r.summary = sum.str();
  if (c.format == OutputFormat::JSON) {
    r.files.push_back({"circuit.json", dump(Json{{"noise", noise ? to_json(noise->scaled(c.noise_scale)) : Json(nullptr)},
                                                 {"results", results}})});
  } else {
    r.files.push_back({"circuit.csv", csv.str()});
    r.files.push_back({"circuit_summary.csv", summary_csv.str()});
  }
  return r;
}

RunResult run_bench(const RunConfig& c) {
  c.validate();
  struct BenchRow {
    std::string label;
    std::string metric;
    std::string kind;
    std::array<double, 3> values{};
  };
  std::vector<BenchRow> rows;
  const auto& taus = reference::kTaus;

  BenchRow theory{"Theory", "N_AS", "computed", {}};
  std::array<KDDistribution, 3> exact;
  for (std::size_t k = 0; k < taus.size(); ++k) {
    exact[k] = kd_distribution(c.resolved_setting(taus[k]), c.model);
    theory.values[k] = n_as(exact[k].q);
  }
  rows.push_back(theory);

  const std::array<std::pair<std::string, std::optional<NoiseModel>>, 3> variants{{
      {"Noiseless circuit", std::nullopt},
      {"Circuit table4-ionq", NoiseModel::table4_ionq()},
      {"Circuit table4-ibm", NoiseModel::table4_ibm()},
  }};
  for (std::size_t v = 0; v < variants.size(); ++v) {
    BenchRow nas{variants[v].first, "N_AS", "computed", {}};
    BenchRow err{variants[v].first, "RMSE", "computed", {}};
    for (std::size_t k = 0; k < taus.size(); ++k) {
      CounterRng rng(c.seed, v * taus.size() + k);
      KdEstimate est;
      try {
        est = estimate_kd(c.resolved_setting(taus[k]), c.model, estimate_options(c, variants[v].second), rng);
      } catch (const UnsupportedPreparation& e) {
        throw CliError("unsupported_setting", e.what());
      }
      nas.values[k] = n_as(est.q);
      err.values[k] = rmse(est.q, exact[k].q);
    }
    rows.push_back(nas);
    rows.push_back(err);
  }
  rows.push_back({std::string(reference::kTheoryNas.label), "N_AS", "reference", reference::kTheoryNas.values});
  for (const auto& ref : reference::kNasReference) rows.push_back({std::string(ref.label), "N_AS", "reference", ref.values});
  for (const auto& ref : reference::kRmseReference) rows.push_back({std::string(ref.label), "RMSE", "reference", ref.values});

  RunResult r;
  std::ostringstream sum;
  sum << "shots " << (c.shots ? std::to_string(*c.shots) : "exact") << ", trotter " << c.n_trotter
      << ", trajectories " << c.n_trajectories << "\n";
  sum << "label                  metric kind       tau=0      tau=2.21   tau=3.66\n";
  for (const auto& row : rows) {
    char line[160];
    std::snprintf(line, sizeof line, "%-22s %-6s %-10s %-10.3f %-10.3f %.3f\n", row.label.c_str(), row.metric.c_str(),
                  row.kind.c_str(), row.values[0], row.values[1], row.values[2]);
    sum << line;
  }
  r.summary = sum.str();

  if (c.format == OutputFormat::JSON) {
    Json out = Json::array();
    for (const auto& row : rows) {
      out.push_back(Json{{"label", row.label}, {"metric", row.metric}, {"kind", row.kind}, {"values", row.values}});
    }
    r.files.push_back({"bench.json", dump(Json{{"taus", taus}, {"rows", out}})});
    return r;
  }
  std::ostringstream csv;
  csv << "label,metric,kind";
  for (double t : taus) csv << ",tau_" << format_double(t);
  csv << '\n';
  for (const auto& row : rows) {
    csv << row.label << ',' << row.metric << ',' << row.kind;
    for (double v : row.values) csv << ',' << format_double(v);
    csv << '\n';
  }
  r.files.push_back({"bench.csv", csv.str()});
  return r;
}

RunResult run(const RunConfig& c) {
  RunResult r;
  switch (c.command) {
    case Command::EXACT:
      r = run_exact(c);
      break;
    case Command::SWEEP:
      r = run_sweep(c);
      break;
    case Command::CIRCUIT:
      r = run_circuit(c);
      break;
    case Command::BENCH:
      r = run_bench(c);
      break;
  }
  r.files.push_back({"manifest.json", dump(manifest(c))});
  return r;
}

void write_outputs(const RunResult& r, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw CliError("io", "cannot create output directory '" + dir + "': " + ec.message());
  for (const auto& f : r.files) {
    const fs::path path = fs::path(dir) / f.name;
    std::ofstream os(path, std::ios::binary);
    os << f.content;
    os.close();
    if (!os) throw CliError("io", "cannot write '" + path.string() + "'");
  }
}

std::string error_line(std::string_view category, std::string_view message) {
  std::string escaped;
  for (char ch : message) {
    if (ch == '\n' || ch == '\r') {
      escaped += ' ';
    } else if (ch == '"' || ch == '\\') {
      escaped += '\\';
      escaped += ch;
    } else {
      escaped += ch;
    }
  }
  return "error: category=" + std::string(category) + " message=\"" + escaped + "\"";
}

}  // namespace kdlab
