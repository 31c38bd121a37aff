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

// Acceptance harness: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "aawf/channels.hpp"
#include "aawf/cli/artifact.hpp"
#include "aawf/cli/commands.hpp"
#include "aawf/cli/config.hpp"
#include "aawf/cli/experiments.hpp"
#include "aawf/mastereq.hpp"
#include "aawf/mcwf.hpp"
#include "aawf/rydberg.hpp"
#include "aawf/tomography.hpp"

using namespace aawf;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20260415;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [violated]");
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double max_abs(const CMatrix& a) { return a.cwiseAbs().maxCoeff(); }

ChiMatrix aawf_chi(const LindbladModel& m, const OperatorBasis& b, std::size_t n, std::uint64_t seed,
                   std::size_t workers = 1) {
  const EntangledInput in = maximally_entangled_input(m.spec());
  const TrajectoryEngine engine(m, m.spec().qubit_dim());
  const auto trs = run_ensemble(engine, in.state, seed, n, workers);
  return ensemble_chi(trs, build_kappa(b, in), m.spec(), workers).chi;
}

// Kraus operators of amplitude damping expanded by hand in I, X, Y, Z.
CMatrix kraus_damping_chi(double p) {
  const double s = std::sqrt(1.0 - p);
  CVector c0 = CVector::Zero(4), c1 = CVector::Zero(4);
  c0(0) = 0.5 * (1.0 + s);
  c0(3) = 0.5 * (1.0 - s);
  c1(1) = 0.5 * std::sqrt(p);
  c1(2) = cd(0.0, 0.5 * std::sqrt(p));
  return c0 * c0.adjoint() + c1 * c1.adjoint();
}

void criterion1(Outcome& o) {
  const std::size_t n = 10000;
  const double tol = 5.0 / std::sqrt(static_cast<double>(n));
  const OperatorBasis b1 = pauli_basis(1);
  const std::vector<std::pair<std::string, LindbladModel>> models = {
      {"amplitude_damping", amplitude_damping_model({0.1, 1.0, 0.0})},
      {"dephasing", dephasing_model({0.1, 1.0, 0.0})},
      {"toy_2q", two_qubit_toy_model({})}};
  for (const auto& [name, m] : models) {
    const OperatorBasis b = m.spec().qubit_dim() == 2 ? b1 : pauli_basis(2);
    const auto t0 = std::chrono::steady_clock::now();
    const ChiMatrix wf = aawf_chi(m, b, n, kSeed);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const ChiMatrix exact = sqpc_characterize(m, b);
    const double e = max_abs(wf.data - exact.data);
    const double t = trace_distance(wf, exact);
    o.require(e <= tol && t <= 0.05, name + " max|dchi|=" + num(e) + " T=" + num(t));
    if (m.spec().qubit_dim() == 4) o.require(secs <= 60.0, name + " aawf " + num(secs) + "s");
  }
}

void criterion2(Outcome& o) {
  const double gamma = 0.1, t = 1.0;
  const ChiMatrix chi = sqpc_characterize(amplitude_damping_model({gamma, t, 0.0}), pauli_basis(1));
  const double e = max_abs(chi.data - kraus_damping_chi(1.0 - std::exp(-gamma * t)));
  o.require(e <= 1e-6, "max|chi - chi_kraus|=" + num(e));
}

double rank1_defect(const CMatrix& chi) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(chi, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  double rest = 0.0;
  for (Eigen::Index i = 0; i + 1 < ev.size(); ++i) rest = std::max(rest, std::abs(ev(i)));
  return rest;
}

void criterion3(Outcome& o) {
  rydberg::RydbergParams ryd = rydberg::RydbergParams::operating_point().without_dissipation();
  struct Case {
    std::string name;
    LindbladModel model;
    bool unitary_block;
  };
  const std::vector<Case> cases = {
      {"amplitude_damping", amplitude_damping_model({0.0, 1.0, 0.7}), true},
      {"dephasing", dephasing_model({0.0, 1.0, 0.7}), true},
      {"toy_2q", two_qubit_toy_model({0.8, 0.3, 0.0, 0.0, 1.0}), true},
      {"rydberg_cphase", rydberg::build_cphase_model(ryd), false},
      {"rydberg_single_atom", rydberg::build_single_atom_pulse_model(ryd), false}};
  for (const auto& c : cases) {
    const OperatorBasis b = pauli_basis(c.model.spec().qubit_dim() == 2 ? 1 : 2);
    const CMatrix block = qubit_block(c.model.spec(), schedule_unitary(c.model));
    // with finite blockade the lossless gate leaves residual Rydberg population, so the
    // projected propagator is only sub-unitary
    const ChiMatrix target = c.unitary_block ? ideal_chi(block, b) : operator_chi(block, b);
    double worst = 0.0, defect = 0.0;
    std::size_t jumps = 0;
    for (std::uint64_t seed : {std::uint64_t{0}, kSeed, ~std::uint64_t{0}}) {
      const ChiMatrix chi = aawf_chi(c.model, b, 4, seed);
      worst = std::max(worst, max_abs(chi.data - target.data));
      defect = std::max(defect, rank1_defect(chi.data));
      jumps += chi.meta.jumped;
    }
    o.require(worst <= 1e-6 && defect <= 1e-6 && jumps == 0,
              c.name + " max|dchi|=" + num(worst) + " rank1 defect=" + num(defect) + " J=" +
                  std::to_string(jumps));
  }
}

void criterion4(Outcome& o) {
  const std::size_t n = 10000;
  const double tol = 5.0 / std::sqrt(static_cast<double>(n));
  CVector q(2);
  q << cd(0.6), cd(0.0, 0.8);
  CVector a = CVector::Zero(4);
  a(rydberg::kLevel0) = std::sqrt(0.5);
  a(rydberg::kLevel1) = std::sqrt(0.5);
  const std::vector<std::tuple<std::string, LindbladModel, CVector>> cases = {
      {"amplitude_damping", amplitude_damping_model({0.4, 1.0, 0.9}), q},
      {"dephasing", dephasing_model({0.4, 1.0, 0.9}), q},
      {"rydberg_single_atom", rydberg::build_single_atom_pulse_model(rydberg::RydbergParams::operating_point()), a}};
  for (const auto& [name, m, psi] : cases) {
    const auto t0 = std::chrono::steady_clock::now();
    const CMatrix avg = average_density(run_ensemble(TrajectoryEngine(m), psi, kSeed, n, 1), m.full_dim());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double t = trace_distance(avg, propagate_density(m, DensityMatrix::pure(psi)).data);
    o.require(t <= tol && secs < 60.0, name + " T=" + num(t) + " in " + num(secs) + "s");
  }
}

cli::RunConfig rydberg_config(std::size_t n, const std::string& sweep_block) {
  std::string text = R"({"model": "rydberg_cphase", "n_trajectories": )" + std::to_string(n);
  if (!sweep_block.empty()) text += R"(, "sweep": )" + sweep_block;
  return cli::parse_config_text(text + "}");
}

void criterion5(Outcome& o) {
  const auto check = [&o](const cli::SweepResult& r, const std::string& tag, std::size_t expected) {
    std::size_t violations = 0;
    for (const auto& row : r.rows) {
      if (!row.upper_bound || *row.upper_bound < row.t) ++violations;
    }
    o.require(r.failures.empty() && r.rows.size() == expected && violations == 0,
              tag + " points=" + std::to_string(r.rows.size()) + " failures=" + std::to_string(r.failures.size()) +
                  " bound violations=" + std::to_string(violations));
  };

  const cli::RunConfig full = rydberg_config(500, "");
  const cli::SweepResult r = cli::sweep(full, kSeed, 1);
  check(r, "full grid n=500", full.sweep.omega_b_mhz.size() * full.sweep.blockade_mhz.size());

  const auto series = [&r](double blockade) {
    std::vector<cli::SweepRow> out;
    for (const auto& row : r.rows) {
      if (row.blockade_mhz == blockade) out.push_back(row);
    }
    return out;
  };
  const auto argmin = [](const std::vector<cli::SweepRow>& s) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (s[i].t < s[k].t) k = i;
    }
    return k;
  };
  const auto b20 = series(20.0), b30 = series(30.0);
  if (b20.empty() || b30.empty()) {
    o.require(false, "grid lacks the 20 or 30 MHz blockade series");
    return;
  }
  const std::size_t k20 = argmin(b20), k30 = argmin(b30);
  o.require(k20 > 0 && k20 + 1 < b20.size(),
            "B=20 argmin Omega_B=" + num(b20[k20].omega_b_mhz) + " T=" + num(b20[k20].t));
  o.require(b30[k30].t <= b20[k20].t, "min T(B=30)=" + num(b30[k30].t) + " <= min T(B=20)");

  const auto t0 = std::chrono::steady_clock::now();
  const cli::RunConfig reduced = rydberg_config(
      200, R"({"omega_b_list_mhz_over_2pi": [20, 39, 80], "blockade_list_mhz_over_2pi": [20, 30]})");
  check(cli::sweep(reduced, kSeed + 1, 1), "reduced grid n=200", 6);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(secs < 300.0, "reduced grid " + num(secs) + "s");
}

std::size_t inversions(const std::vector<double>& v) {
  std::size_t k = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i + 1] > v[i]) ++k;
  }
  return k;
}

double loglog_slope(const std::vector<cli::ConvergeRow>& rows, double cli::ConvergeRow::*field) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(rows.size());
  for (const auto& r : rows) {
    const double x = std::log(static_cast<double>(r.n)), y = std::log(r.*field);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

void criterion6(Outcome& o) {
  const auto rows = cli::converge(rydberg_config(500, ""), kSeed, 1);
  std::vector<double> sf, st;
  std::ostringstream desc;
  for (const auto& r : rows) {
    sf.push_back(r.std_f);
    st.push_back(r.std_t);
    desc << " " << r.n << ":" << num(r.std_f) << "/" << num(r.std_t);
  }
  o.require(rows.size() == 5 && inversions(sf) <= 1 && inversions(st) <= 1,
            "cphase std F/T" + desc.str());

  const cli::RunConfig ad = cli::parse_config_text(R"({"model": "amplitude_damping",
      "channel": {"gamma_per_s": 0.1, "duration_s": 1.0}})");
  const auto surrogate = cli::converge(ad, kSeed, 1);
  const double kf = loglog_slope(surrogate, &cli::ConvergeRow::std_f);
  const double kt = loglog_slope(surrogate, &cli::ConvergeRow::std_t);
  o.require(kf >= -0.7 && kf <= -0.3 && kt >= -0.7 && kt <= -0.3,
            "damping slopes F=" + num(kf) + " T=" + num(kt));
}

void criterion7(Outcome& o) {
  for (std::size_t q : {1, 2}) {
    const HilbertSpec spec = HilbertSpec::qubits(q);
    const CMatrix k = build_kappa(pauli_basis(q), maximally_entangled_input(spec)).kappa();
    const auto dq = static_cast<double>(spec.qubit_dim());
    const double e = max_abs(k.adjoint() * k - dq * CMatrix::Identity(k.cols(), k.cols()));
    o.require(e <= 1e-12, "D_q=" + std::to_string(spec.qubit_dim()) + " |kappa^+kappa - D_q I|=" + num(e));
  }

  const std::vector<std::pair<std::string, LindbladModel>> models = {
      {"toy_2q", two_qubit_toy_model({0.8, 0.3, 0.2, 0.1, 1.0})},
      {"rydberg_cphase", rydberg::build_cphase_model(rydberg::RydbergParams::operating_point())}};
  for (const auto& [name, m] : models) {
    const OperatorBasis b = pauli_basis(2);
    const EntangledInput in = maximally_entangled_input(m.spec());
    const KappaSystem kappa = build_kappa(b, in);
    const std::size_t n = 400;
    const auto trs = run_ensemble(TrajectoryEngine(m, 4), in.state, kSeed, n, 1);
    std::vector<ZetaVector> zetas;
    std::size_t disposed = 0;
    for (std::size_t i = 0; i < trs.size(); ++i) {
      if (trs[i].disposed) {
        ++disposed;
        continue;
      }
      zetas.push_back(zeta_from_state(kappa, m.spec(), *trs[i].final_state, i, !trs[i].no_jump()));
    }
    const ChiMatrix chi = accumulate_chi(zetas, disposed, n);
    const ChiSplit sp = split_chi(zetas, disposed);
    const double nn = static_cast<double>(n);
    const CMatrix rebuilt = (static_cast<double>(sp.no_jump) / nn) * sp.chi_s +
                            (static_cast<double>(sp.jumped) / nn) * sp.chi_j;
    const double e = max_abs(chi.data - rebuilt);
    o.require(e <= 1e-12 && sp.no_jump + sp.jumped == n,
              name + " S=" + std::to_string(sp.no_jump) + " J=" + std::to_string(sp.jumped) +
                  " |chi - decomposition|=" + num(e));
  }

  const std::size_t n = 10000;
  const LindbladModel m = amplitude_damping_model({0.1, 1.0, 0.0});
  const OperatorBasis b = pauli_basis(1);
  const ChiMatrix chi = aawf_chi(m, b, n, kSeed + 7);
  CVector x(16);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) x(i * 4 + j) = chi.data(i, j);
  }
  const double e = (build_K(b) * x - sqpc_lambda(m).entries).cwiseAbs().maxCoeff();
  o.require(e <= 5.0 / std::sqrt(static_cast<double>(n)), "|K chi - Lambda|=" + num(e));
}

void criterion8(Outcome& o) {
  const std::size_t n = 10000;
  const LindbladModel m = amplitude_damping_model({0.5, 1.0, 0.0});
  CVector one = CVector::Zero(2);
  one(1) = 1.0;
  std::size_t s = 0;
  for (const auto& t : run_ensemble(TrajectoryEngine(m), one, kSeed, n, 1)) s += t.no_jump() ? 1 : 0;
  const double p = std::exp(-0.5);
  const double frac = static_cast<double>(s) / static_cast<double>(n);
  const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  o.require(std::abs(frac - p) <= 3.0 * sigma,
            "no-jump fraction " + num(frac) + " vs " + num(p) + " (3 sigma " + num(3.0 * sigma) + ")");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void criterion9(Outcome& o) {
  const fs::path root = fs::temp_directory_path() / "aawf_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const std::vector<std::pair<std::string, std::string>> configs = {
      {"damping", R"({"model": "amplitude_damping", "channel": {"gamma_per_s": 0.1, "duration_s": 1.0},
                      "n_trajectories": 2000})"},
      {"cphase", R"({"model": "rydberg_cphase", "n_trajectories": 200})"}};
  for (const auto& [name, text] : configs) {
    std::ofstream(root / (name + ".json")) << text;
    std::vector<std::string> files;
    for (const char* workers : {"1", "4"}) {
      const fs::path out = root / (name + "_w" + workers);
      const std::vector<std::string> args = {"aawf", "characterize", "--config", (root / (name + ".json")).string(),
                                             "--seed", "77", "--out", out.string(), "--workers", workers};
      std::vector<const char*> argv;
      for (const auto& a : args) argv.push_back(a.c_str());
      std::ostringstream sink;
      const int rc = cli::run(static_cast<int>(argv.size()), argv.data(), sink, sink);
      if (rc != cli::kExitOk) {
        o.require(false, name + " characterize exit " + std::to_string(rc));
        return;
      }
      files.push_back(slurp(out / "chi.json"));
    }
    o.require(!files[0].empty() && files[0] == files[1], name + " workers 1 vs 4 byte-identical");
  }
  fs::remove_all(root);
}

}  // namespace

int main() {
  const std::vector<std::function<void(Outcome&)>> criteria = {criterion1, criterion2, criterion3,
                                                                criterion4, criterion5, criterion6,
                                                                criterion7, criterion8, criterion9};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i](o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << " (" << num(secs) << " s) "
              << o.detail.str() << std::endl;
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
