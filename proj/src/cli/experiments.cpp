// Copyright 2026 The AAWF Authors
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

#include "aawf/cli/experiments.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "aawf/channels.hpp"
#include "aawf/mastereq.hpp"
#include "aawf/mcwf.hpp"
#include "aawf/rydberg.hpp"
#include "aawf/tomography.hpp"

namespace aawf::cli {

namespace {

using Json = nlohmann::ordered_json;

CMatrix parse_matrix(const Json& m, const std::string& what) {
  if (!m.is_array() || m.empty() || !m[0].is_array()) throw ConfigError(what + ": expected a matrix");
  const auto rows = static_cast<Eigen::Index>(m.size());
  const auto cols = static_cast<Eigen::Index>(m[0].size());
  CMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = m[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw ConfigError(what + ": ragged matrix");
    for (Eigen::Index j = 0; j < cols; ++j) {
      const Json& v = row[static_cast<std::size_t>(j)];
      if (v.is_number()) {
        out(i, j) = v.get<double>();
      } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        out(i, j) = cd(v[0].get<double>(), v[1].get<double>());
      } else {
        throw ConfigError(what + ": entries must be numbers or [re, im]");
      }
    }
  }
  return out;
}

JumpOperator parse_jump(const Json& j, const std::string& what, bool allow_cascade) {
  if (!j.is_object()) throw ConfigError(what + ": expected an object");
  for (const auto& item : j.items()) {
    const std::string& k = item.key();
    if (k != "label" && k != "op" && k != "to_loss" && !(allow_cascade && k == "cascade")) {
      throw ConfigError(what + "." + k + ": unknown key");
    }
  }
  JumpOperator out;
  if (!j.contains("label") || !j.at("label").is_string()) throw ConfigError(what + ".label: required string");
  out.label = j.at("label").get<std::string>();
  if (!j.contains("op")) throw ConfigError(what + ".op: required");
  out.op = parse_matrix(j.at("op"), what + ".op");
  out.to_loss = j.value("to_loss", false);
  if (j.contains("cascade")) {
    const Json& c = j.at("cascade");
    for (std::size_t k = 0; k < c.size(); ++k) {
      out.cascade.push_back(parse_jump(c[k], what + ".cascade[" + std::to_string(k) + "]", false));
    }
  }
  return out;
}

struct Metrics4 {
  double t = 0.0, f = 0.0;
  std::optional<double> bound, bound_single;
};

Metrics4 ensemble_metrics(const EnsembleChi& ec, const ChiMatrix& ideal) {
  Metrics4 m;
  m.t = trace_distance(ideal, ec.chi);
  m.f = fidelity(ideal, ec.chi);
  if (ec.first_no_jump) {
    const CMatrix chi_s = ec.first_no_jump->coeffs * ec.first_no_jump->coeffs.adjoint();
    m.bound = nojump_upper_bound(ideal.data, chi_s, ec.chi.meta.no_jump, *ec.chi.meta.n);
    if (ec.survival) m.bound_single = single_trajectory_upper_bound(ideal.data, chi_s, *ec.survival);
  }
  return m;
}

struct RunOutput {
  EnsembleChi ensemble;
  Metrics4 metrics;
};

RunOutput run_ensemble_chi(const ModelSetup& setup, const OdeTolerances& tol, std::uint64_t seed,
                           std::size_t n, std::size_t workers) {
  const auto& spec = setup.model.spec();
  const OperatorBasis basis = pauli_basis(spec.qubit_dims.size());
  const EntangledInput input = maximally_entangled_input(spec);
  const KappaSystem kappa = build_kappa(basis, input);
  const TrajectoryEngine engine(setup.model, spec.qubit_dim(), tol);
  const auto trajectories = run_ensemble(engine, input.state, seed, n, workers);
  RunOutput out{ensemble_chi(trajectories, kappa, spec, workers), {}};
  out.ensemble.chi.meta.seed = seed;
  out.ensemble.chi.meta.labels = basis.labels();
  out.metrics = ensemble_metrics(out.ensemble, ideal_chi(setup.ideal_unitary, basis));
  return out;
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

}  // namespace

ModelSetup load_custom_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("custom model: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  Json doc;
  try {
    doc = Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("custom model: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("custom model: expected an object");
  for (const auto& item : doc.items()) {
    static const std::set<std::string> ok = {"qubits",        "full_dim", "qubit_dims", "qubit_index_map",
                                             "loss_indices",  "segments", "jumps",      "ideal_unitary"};
    if (!ok.count(item.key())) throw ConfigError("custom model: " + item.key() + ": unknown key");
  }
  try {
    HilbertSpec spec;
    if (doc.contains("qubits")) {
      spec = HilbertSpec::qubits(doc.at("qubits").get<std::size_t>());
    } else {
      spec.full_dim = doc.at("full_dim").get<std::size_t>();
      spec.qubit_dims = doc.at("qubit_dims").get<std::vector<std::size_t>>();
      spec.qubit_index_map = doc.at("qubit_index_map").get<std::vector<std::size_t>>();
      if (doc.contains("loss_indices")) spec.loss_indices = doc.at("loss_indices").get<std::vector<std::size_t>>();
    }
    std::vector<Segment> schedule;
    const Json& segs = doc.at("segments");
    for (std::size_t k = 0; k < segs.size(); ++k) {
      const std::string what = "custom model: segments[" + std::to_string(k) + "]";
      for (const auto& item : segs[k].items()) {
        if (item.key() != "duration_s" && item.key() != "hamiltonian_rad_per_s") {
          throw ConfigError(what + "." + item.key() + ": unknown key");
        }
      }
      schedule.push_back({segs[k].at("duration_s").get<double>(),
                          parse_matrix(segs[k].at("hamiltonian_rad_per_s"), what + ".hamiltonian_rad_per_s")});
    }
    std::vector<JumpOperator> jumps;
    if (doc.contains("jumps")) {
      const Json& js = doc.at("jumps");
      for (std::size_t k = 0; k < js.size(); ++k) {
        jumps.push_back(parse_jump(js[k], "custom model: jumps[" + std::to_string(k) + "]", true));
      }
    }
    LindbladModel model(std::move(spec), std::move(schedule), std::move(jumps));
    const auto dq = static_cast<Eigen::Index>(model.spec().qubit_dim());
    CMatrix ideal = doc.contains("ideal_unitary") ? parse_matrix(doc.at("ideal_unitary"), "custom model: ideal_unitary")
                                                  : CMatrix(CMatrix::Identity(dq, dq));
    if (ideal.rows() != dq || ideal.cols() != dq) throw ConfigError("custom model: ideal_unitary must be D_q x D_q");
    return {std::move(model), std::move(ideal)};
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("custom model: ") + e.what());
  }
}

CMatrix channel_ideal(const ChannelParams& p) {
  const double a = p.hx * p.duration;
  CMatrix u(2, 2);
  u << std::cos(a), -kI * std::sin(a), -kI * std::sin(a), std::cos(a);
  return u;
}

ModelSetup build_model(const RunConfig& cfg) {
  switch (cfg.model) {
    case ModelKind::kAmplitudeDamping:
      return {amplitude_damping_model(cfg.channel), channel_ideal(cfg.channel)};
    case ModelKind::kDephasing:
      return {dephasing_model(cfg.channel), channel_ideal(cfg.channel)};
    case ModelKind::kCustomMatrixFile:
      return load_custom_model(cfg.custom_matrix_file);
    case ModelKind::kRydbergCphase:
      return {rydberg::build_cphase_model(cfg.rydberg), rydberg::ideal_cphase()};
  }
  throw ConfigError("unknown model");
}

ChiArtifact characterize(const RunConfig& cfg, std::uint64_t seed, std::size_t n, std::size_t workers) {
  const ModelSetup setup = build_model(cfg);
  RunOutput run = run_ensemble_chi(setup, cfg.mcwf_tol, seed, n, workers);
  ChiArtifact a;
  a.d_q = setup.model.spec().qubit_dim();
  a.chi = std::move(run.ensemble.chi);
  a.model = cfg.model_echo;
  a.metrics.trace_distance_to_ideal = run.metrics.t;
  a.metrics.fidelity_to_ideal = run.metrics.f;
  a.metrics.nojump_upper_bound = run.metrics.bound;
  a.metrics.nojump_upper_bound_single = run.metrics.bound_single;
  return a;
}

ChiArtifact oracle(const RunConfig& cfg) {
  const ModelSetup setup = build_model(cfg);
  const auto& spec = setup.model.spec();
  if (spec.qubit_dim() > 4) throw ConfigError("oracle: the K-tensor route is limited to D_q <= 4");
  const OperatorBasis basis = pauli_basis(spec.qubit_dims.size());
  ChiSolveReport report;
  const CMatrix k = build_K(basis);
  ChiArtifact a;
  a.d_q = spec.qubit_dim();
  a.chi = chi_from_lambda(basis, k, sqpc_lambda(setup.model, cfg.oracle_tol), &report);
  a.chi.meta.seed = cfg.master_seed;
  a.model = cfg.model_echo;
  const ChiMatrix ideal = ideal_chi(setup.ideal_unitary, basis);
  a.metrics.trace_distance_to_ideal = trace_distance(ideal, a.chi);
  a.metrics.fidelity_to_ideal = fidelity(ideal.data, a.chi.data, 1e-6);
  a.extra["route"] = "sqpc";
  a.extra["k_rank"] = report.rank;
  a.extra["k_unknowns"] = report.unknowns;
  if (cfg.aapc_check) {
    const ChiMatrix aapc = chi_from_lambda(basis, k, aapc_lambda(setup.model, cfg.oracle_tol));
    a.extra["aapc_max_abs_diff"] = (aapc.data - a.chi.data).cwiseAbs().maxCoeff();
  }
  return a;
}

std::vector<ConvergeRow> converge(const RunConfig& cfg, std::uint64_t seed, std::size_t workers) {
  const ModelSetup setup = build_model(cfg);
  std::vector<ConvergeRow> rows;
  for (std::size_t k = 0; k < cfg.converge.n_list.size(); ++k) {
    const std::size_t n = cfg.converge.n_list[k];
    std::vector<double> fs, ts;
    for (std::size_t r = 0; r < cfg.converge.repeats; ++r) {
      const RunOutput run =
          run_ensemble_chi(setup, cfg.mcwf_tol, derive_seed(derive_seed(seed, k), r), n, workers);
      fs.push_back(run.metrics.f);
      ts.push_back(run.metrics.t);
    }
    rows.push_back({n, mean(fs), sample_std(fs), mean(ts), sample_std(ts)});
  }
  return rows;
}

SweepResult sweep(const RunConfig& cfg, std::uint64_t seed, std::size_t workers,
                  const std::function<void(const SweepRow&)>& on_row) {
  if (cfg.model != ModelKind::kRydbergCphase) throw ConfigError("sweep: requires model 'rydberg_cphase'");
  SweepResult result;
  result.labels = pauli_basis(2).labels();
  const auto flagged = [&cfg](double ob, double b) {
    return cfg.sweep.flag_point && cfg.sweep.flag_point->omega_b_mhz == ob &&
           cfg.sweep.flag_point->blockade_mhz == b;
  };
  std::size_t point = 0;
  bool flag_done = false;
  for (double b : cfg.sweep.blockade_mhz) {
    for (double ob : cfg.sweep.omega_b_mhz) {
      const std::uint64_t point_seed = derive_seed(seed, point++);
      try {
        RunConfig local = cfg;
        local.rydberg.omega_b = rydberg::mhz_to_angular(ob);
        local.rydberg.blockade = rydberg::mhz_to_angular(b);
        const ModelSetup setup = build_model(local);
        const RunOutput run = run_ensemble_chi(setup, cfg.mcwf_tol, point_seed, cfg.n_trajectories, workers);
        SweepRow row{ob, b, run.metrics.t, run.metrics.f, run.metrics.bound, run.metrics.bound_single,
                     run.ensemble.chi.meta.no_jump, run.ensemble.chi.meta.jumped, *run.ensemble.chi.meta.n};
        if (flagged(ob, b)) {
          result.flagged_delta = run.ensemble.chi.data - ideal_chi(setup.ideal_unitary, pauli_basis(2)).data;
          flag_done = true;
        }
        result.rows.push_back(row);
        if (on_row) on_row(row);
      } catch (const NumericError& e) {
        result.failures.push_back({ob, b, e.what()});
      }
    }
  }
  if (cfg.sweep.flag_point && !flag_done) {
    RunConfig local = cfg;
    local.rydberg.omega_b = rydberg::mhz_to_angular(cfg.sweep.flag_point->omega_b_mhz);
    local.rydberg.blockade = rydberg::mhz_to_angular(cfg.sweep.flag_point->blockade_mhz);
    try {
      const ModelSetup setup = build_model(local);
      const RunOutput run = run_ensemble_chi(setup, cfg.mcwf_tol, derive_seed(seed, point), cfg.n_trajectories, workers);
      result.flagged_delta = run.ensemble.chi.data - ideal_chi(setup.ideal_unitary, pauli_basis(2)).data;
    } catch (const NumericError& e) {
      result.failures.push_back({cfg.sweep.flag_point->omega_b_mhz, cfg.sweep.flag_point->blockade_mhz, e.what()});
    }
  }
  return result;
}

}  // namespace aawf::cli
