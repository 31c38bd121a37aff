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

#include "aawf/cli/commands.hpp"

#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "aawf/cli/artifact.hpp"
#include "aawf/cli/config.hpp"
#include "aawf/cli/experiments.hpp"

namespace aawf::cli {

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::optional<std::size_t> workers;
};

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

void print_summary(std::ostream& out, const ChiArtifact& a, const std::string& path) {
  out << "model      " << a.model.value("model", "?") << "\n";
  out << "n          " << (a.chi.meta.n ? std::to_string(*a.chi.meta.n) : "exact") << "\n";
  if (a.chi.meta.n) {
    out << "S / J      " << a.chi.meta.no_jump << " / " << a.chi.meta.jumped << " (disposed "
        << a.chi.meta.disposed << ")\n";
  }
  out << "Tr chi     " << format_double(a.chi.data.trace().real()) << "\n";
  if (a.metrics.trace_distance_to_ideal) out << "T          " << format_double(*a.metrics.trace_distance_to_ideal) << "\n";
  if (a.metrics.fidelity_to_ideal) out << "F          " << format_double(*a.metrics.fidelity_to_ideal) << "\n";
  if (a.metrics.nojump_upper_bound) out << "T bound    " << format_double(*a.metrics.nojump_upper_bound) << "\n";
  if (a.extra.contains("aapc_max_abs_diff")) {
    out << "AAPC diff  " << format_double(a.extra["aapc_max_abs_diff"].get<double>()) << "\n";
  }
  out << "wrote      " << path << "\n";
}

int cmd_characterize(const RunConfig& cfg, const Options& o, std::ostream& out, std::ostream& err) {
  const ChiArtifact a = characterize(cfg, o.seed.value_or(cfg.master_seed), cfg.n_trajectories,
                                     o.workers.value_or(cfg.workers));
  if (!a.metrics.nojump_upper_bound) err << "warning: no zero-jump trajectory (S = 0); upper bound omitted\n";
  const std::string path = (std::filesystem::path(o.out) / "chi.json").string();
  write_artifact(path, a);
  print_summary(out, a, path);
  return kExitOk;
}

int cmd_oracle(const RunConfig& cfg, const Options& o, std::ostream& out, std::ostream&) {
  RunConfig local = cfg;
  if (o.seed) local.master_seed = *o.seed;
  const ChiArtifact a = oracle(local);
  const std::string path = (std::filesystem::path(o.out) / "chi_oracle.json").string();
  write_artifact(path, a);
  print_summary(out, a, path);
  return kExitOk;
}

int cmd_converge(const RunConfig& cfg, const Options& o, std::ostream& out, std::ostream&) {
  const auto rows = converge(cfg, o.seed.value_or(cfg.master_seed), o.workers.value_or(cfg.workers));
  std::vector<std::vector<std::string>> table;
  for (const auto& r : rows) {
    table.push_back({std::to_string(r.n), format_double(r.mean_f), format_double(r.std_f),
                     format_double(r.mean_t), format_double(r.std_t)});
    out << "n=" << r.n << "  F=" << r.mean_f << " +- " << r.std_f << "  T=" << r.mean_t << " +- " << r.std_t << "\n";
  }
  const std::string path = (std::filesystem::path(o.out) / "converge.csv").string();
  write_csv(path, {"n", "mean_F", "std_F", "mean_T", "std_T"}, table);
  out << "wrote " << path << "\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const Options& o, std::ostream& out, std::ostream& err) {
  const SweepResult res = sweep(cfg, o.seed.value_or(cfg.master_seed), o.workers.value_or(cfg.workers),
                                [&out](const SweepRow& r) {
                                  out << "Omega_B=" << r.omega_b_mhz << " B=" << r.blockade_mhz << "  T=" << r.t
                                      << "  bound=" << (r.upper_bound ? *r.upper_bound : -1.0) << "\n";
                                });
  const std::filesystem::path dir(o.out);
  std::vector<std::vector<std::string>> table;
  for (const auto& r : res.rows) {
    table.push_back({format_double(r.omega_b_mhz), format_double(r.blockade_mhz), format_double(r.t),
                     format_double(r.f), opt(r.upper_bound), std::to_string(r.s), std::to_string(r.j),
                     std::to_string(r.n), opt(r.upper_bound_single)});
  }
  write_csv((dir / "sweep.csv").string(),
            {"omega_B_MHz", "B_MHz", "T", "F", "upper_bound", "S", "J", "n", "upper_bound_single"}, table);
  if (res.flagged_delta) {
    std::vector<std::vector<std::string>> d;
    const CMatrix& m = *res.flagged_delta;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        d.push_back({res.labels[static_cast<std::size_t>(i)], res.labels[static_cast<std::size_t>(j)],
                     format_double(m(i, j).real()), format_double(m(i, j).imag())});
      }
    }
    write_csv((dir / "delta_chi.csv").string(), {"row", "col", "re", "im"}, d);
  }
  if (!res.failures.empty()) {
    std::vector<std::vector<std::string>> f;
    for (const auto& x : res.failures) {
      err << "sweep point Omega_B=" << x.omega_b_mhz << " B=" << x.blockade_mhz << " failed: " << x.message << "\n";
      std::string msg = x.message;
      for (char& c : msg) {
        if (c == ',' || c == '\n') c = ';';
      }
      f.push_back({format_double(x.omega_b_mhz), format_double(x.blockade_mhz), msg});
    }
    write_csv((dir / "sweep_failures.csv").string(), {"omega_B_MHz", "B_MHz", "error"}, f);
    return kExitPartialSweep;
  }
  out << "wrote " << (dir / "sweep.csv").string() << "\n";
  return kExitOk;
}

}  // namespace

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ancilla-assisted wave-function process characterisation"};
  app.require_subcommand(1);
  Options o;
  std::uint64_t seed = 0;
  std::size_t workers = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON run configuration")->required();
    sub->add_option("--seed", seed, "master seed (overrides the config)");
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    sub->add_option("--workers", workers, "worker threads (overrides the config)")->check(CLI::PositiveNumber);
  };
  CLI::App* c_char = app.add_subcommand("characterize", "Monte-Carlo wave-function chi of the model");
  CLI::App* c_orac = app.add_subcommand("oracle", "exact density-matrix chi");
  CLI::App* c_conv = app.add_subcommand("converge", "spread of F and T against ensemble size");
  CLI::App* c_swee = app.add_subcommand("sweep", "C-PHASE trace distance over (Omega_B, B)");
  for (CLI::App* s : {c_char, c_orac, c_conv, c_swee}) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--seed")) o.seed = seed;
  if (sub->count("--workers")) o.workers = workers;

  return guarded(
      [&]() {
        const RunConfig cfg = load_config(o.config);
        std::error_code ec;
        std::filesystem::create_directories(o.out, ec);
        if (ec) throw ConfigError("cannot create output directory " + o.out + ": " + ec.message());
        if (sub == c_char) return cmd_characterize(cfg, o, out, err);
        if (sub == c_orac) return cmd_oracle(cfg, o, out, err);
        if (sub == c_conv) return cmd_converge(cfg, o, out, err);
        return cmd_sweep(cfg, o, out, err);
      },
      err);
}

}  // namespace aawf::cli
