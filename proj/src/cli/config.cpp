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

#include "aawf/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace aawf::cli {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config: " + path + ": " + what);
}

void only_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(path, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : obj.items()) {
    if (!ok.count(item.key())) fail(path + "." + item.key(), "unknown key");
  }
}

double number(const Json& obj, const std::string& path, const char* key, std::optional<double> fallback) {
  if (!obj.contains(key)) {
    if (!fallback) fail(path + "." + key, "required key missing");
    return *fallback;
  }
  const Json& v = obj.at(key);
  if (!v.is_number()) fail(path + "." + key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path + "." + key, "must be finite");
  return x;
}

double non_negative(const Json& obj, const std::string& path, const char* key, std::optional<double> fallback) {
  const double x = number(obj, path, key, fallback);
  if (x < 0.0) fail(path + "." + key, "must be >= 0");
  return x;
}

std::uint64_t unsigned_integer(const Json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    fail(path, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::size_t positive(const Json& v, const std::string& path) {
  const std::uint64_t x = unsigned_integer(v, path);
  if (x == 0) fail(path, "must be positive");
  return static_cast<std::size_t>(x);
}

std::vector<double> number_list(const Json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) fail(path + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
    if (!(out.back() > 0.0) || !std::isfinite(out.back())) {
      fail(path + "[" + std::to_string(i) + "]", "must be positive");
    }
  }
  return out;
}

OdeTolerances tolerances(const Json& obj, const std::string& path, const char* rkey, const char* akey,
                         OdeTolerances base) {
  OdeTolerances t;
  t.rtol = number(obj, path, rkey, base.rtol);
  t.atol = number(obj, path, akey, base.atol);
  if (!(t.rtol > 0.0 && t.rtol < 1e-2)) fail(path + "." + rkey, "must lie in (0, 1e-2)");
  if (!(t.atol > 0.0)) fail(path + "." + akey, "must be positive");
  return t;
}

void parse_rydberg(const Json& r, RunConfig& cfg) {
  const std::string path = "rydberg";
  only_keys(r, path,
            {"delta_mhz_over_2pi", "omega_r_mhz_over_2pi", "omega_b_mhz_over_2pi",
             "blockade_mhz_over_2pi", "gamma_p_mhz_over_2pi", "gamma_r_mhz_over_2pi",
             "gamma_d_mhz_over_2pi", "branching", "delta_e0_mhz_over_2pi"});
  using rydberg::mhz_to_angular;
  auto& p = cfg.rydberg;
  p.delta = mhz_to_angular(number(r, path, "delta_mhz_over_2pi", 2000.0));
  p.omega_r = mhz_to_angular(number(r, path, "omega_r_mhz_over_2pi", 118.0));
  p.omega_b = mhz_to_angular(number(r, path, "omega_b_mhz_over_2pi", 39.0));
  p.blockade = mhz_to_angular(number(r, path, "blockade_mhz_over_2pi", 20.0));
  p.gamma_p = mhz_to_angular(non_negative(r, path, "gamma_p_mhz_over_2pi", 6.07));
  p.gamma_r = mhz_to_angular(non_negative(r, path, "gamma_r_mhz_over_2pi", 0.53e-3));
  p.gamma_d = mhz_to_angular(non_negative(r, path, "gamma_d_mhz_over_2pi", 1.0e-3));
  if (r.contains("branching")) {
    const Json& b = r.at("branching");
    only_keys(b, path + ".branching", {"c0", "c1", "cg"});
    p.branching.c0 = non_negative(b, path + ".branching", "c0", 0.12);
    p.branching.c1 = non_negative(b, path + ".branching", "c1", 0.32);
    p.branching.cg = non_negative(b, path + ".branching", "cg", 0.56);
  }
  if (r.contains("delta_e0_mhz_over_2pi")) {
    p.delta_e0 = mhz_to_angular(number(r, path, "delta_e0_mhz_over_2pi", std::nullopt));
  }
  p.validate();
  rydberg::pi_pulse_time(p);
}

}  // namespace

std::string model_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kAmplitudeDamping: return "amplitude_damping";
    case ModelKind::kDephasing: return "dephasing";
    case ModelKind::kCustomMatrixFile: return "custom_matrix_file";
    case ModelKind::kRydbergCphase: return "rydberg_cphase";
  }
  return "unknown";
}

RunConfig parse_config(const Json& doc, const std::string& base_dir) {
  only_keys(doc, "<root>",
            {"model", "channel", "rydberg", "custom_matrix_file", "n_trajectories", "master_seed",
             "workers", "integrator", "converge", "sweep", "oracle"});
  RunConfig cfg;
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());

  if (!doc.contains("model") || !doc.at("model").is_string()) fail("model", "required string missing");
  const std::string name = doc.at("model").get<std::string>();
  if (name == "amplitude_damping") {
    cfg.model = ModelKind::kAmplitudeDamping;
  } else if (name == "dephasing") {
    cfg.model = ModelKind::kDephasing;
  } else if (name == "custom_matrix_file") {
    cfg.model = ModelKind::kCustomMatrixFile;
  } else if (name == "rydberg_cphase") {
    cfg.model = ModelKind::kRydbergCphase;
  } else {
    fail("model", "unknown model '" + name + "'");
  }

  const bool channel_model = cfg.model == ModelKind::kAmplitudeDamping || cfg.model == ModelKind::kDephasing;
  if (doc.contains("channel") && !channel_model) fail("channel", "not used by model '" + name + "'");
  if (doc.contains("rydberg") && cfg.model != ModelKind::kRydbergCphase) {
    fail("rydberg", "not used by model '" + name + "'");
  }
  if (doc.contains("sweep") && cfg.model != ModelKind::kRydbergCphase) {
    fail("sweep", "only the rydberg_cphase model can be swept");
  }
  if (doc.contains("custom_matrix_file") != (cfg.model == ModelKind::kCustomMatrixFile)) {
    fail("custom_matrix_file", "required by, and only by, model 'custom_matrix_file'");
  }

  cfg.model_echo = Json::object();
  cfg.model_echo["model"] = name;
  if (channel_model) {
    if (!doc.contains("channel")) fail("channel", "required for model '" + name + "'");
    const Json& c = doc.at("channel");
    only_keys(c, "channel", {"gamma_per_s", "duration_s", "hx_rad_per_s"});
    cfg.channel.gamma = non_negative(c, "channel", "gamma_per_s", std::nullopt);
    cfg.channel.duration = number(c, "channel", "duration_s", std::nullopt);
    if (!(cfg.channel.duration > 0.0)) fail("channel.duration_s", "must be positive");
    cfg.channel.hx = number(c, "channel", "hx_rad_per_s", 0.0);
    cfg.model_echo["channel"] = c;
  } else if (cfg.model == ModelKind::kRydbergCphase) {
    parse_rydberg(doc.contains("rydberg") ? doc.at("rydberg") : Json::object(), cfg);
    cfg.model_echo["rydberg"] = doc.contains("rydberg") ? doc.at("rydberg") : Json::object();
  } else {
    const Json& f = doc.at("custom_matrix_file");
    if (!f.is_string()) fail("custom_matrix_file", "expected a path string");
    std::filesystem::path p = f.get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    if (!std::filesystem::exists(p)) fail("custom_matrix_file", "file not found: " + p.string());
    cfg.custom_matrix_file = p.string();
    cfg.model_echo["custom_matrix_file"] = f;
  }

  if (doc.contains("n_trajectories")) cfg.n_trajectories = positive(doc.at("n_trajectories"), "n_trajectories");
  if (doc.contains("master_seed")) cfg.master_seed = unsigned_integer(doc.at("master_seed"), "master_seed");
  if (doc.contains("workers")) cfg.workers = positive(doc.at("workers"), "workers");

  if (doc.contains("integrator")) {
    const Json& i = doc.at("integrator");
    only_keys(i, "integrator", {"mcwf_rtol", "mcwf_atol", "oracle_rtol", "oracle_atol"});
    cfg.mcwf_tol = tolerances(i, "integrator", "mcwf_rtol", "mcwf_atol", kTrajectoryTolerances);
    cfg.oracle_tol = tolerances(i, "integrator", "oracle_rtol", "oracle_atol", kOracleTolerances);
  }
  if (doc.contains("oracle")) {
    const Json& o = doc.at("oracle");
    only_keys(o, "oracle", {"aapc_check"});
    if (o.contains("aapc_check")) {
      if (!o.at("aapc_check").is_boolean()) fail("oracle.aapc_check", "expected true or false");
      cfg.aapc_check = o.at("aapc_check").get<bool>();
    }
  }
  if (doc.contains("converge")) {
    const Json& c = doc.at("converge");
    only_keys(c, "converge", {"n_list", "repeats"});
    if (c.contains("n_list")) {
      const Json& l = c.at("n_list");
      if (!l.is_array() || l.empty()) fail("converge.n_list", "expected a non-empty array");
      cfg.converge.n_list.clear();
      for (std::size_t k = 0; k < l.size(); ++k) {
        cfg.converge.n_list.push_back(positive(l[k], "converge.n_list[" + std::to_string(k) + "]"));
      }
    }
    if (c.contains("repeats")) {
      cfg.converge.repeats = positive(c.at("repeats"), "converge.repeats");
      if (cfg.converge.repeats < 2) fail("converge.repeats", "must be at least 2");
    }
  }
  if (doc.contains("sweep")) {
    const Json& s = doc.at("sweep");
    only_keys(s, "sweep", {"omega_b_list_mhz_over_2pi", "blockade_list_mhz_over_2pi", "flag_point"});
    if (s.contains("omega_b_list_mhz_over_2pi")) {
      cfg.sweep.omega_b_mhz = number_list(s.at("omega_b_list_mhz_over_2pi"), "sweep.omega_b_list_mhz_over_2pi");
    }
    if (s.contains("blockade_list_mhz_over_2pi")) {
      cfg.sweep.blockade_mhz = number_list(s.at("blockade_list_mhz_over_2pi"), "sweep.blockade_list_mhz_over_2pi");
    }
    if (s.contains("flag_point")) {
      const Json& f = s.at("flag_point");
      if (f.is_null()) {
        cfg.sweep.flag_point.reset();
      } else {
        only_keys(f, "sweep.flag_point", {"omega_b_mhz_over_2pi", "blockade_mhz_over_2pi"});
        cfg.sweep.flag_point = SweepPoint{number(f, "sweep.flag_point", "omega_b_mhz_over_2pi", std::nullopt),
                                          number(f, "sweep.flag_point", "blockade_mhz_over_2pi", std::nullopt)};
      }
    }
  }
  return cfg;
}

RunConfig parse_config_text(const std::string& text, const std::string& base_dir) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  return parse_config(doc, base_dir);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_config_text(buf.str(), dir.empty() ? "." : dir.string());
}

}  // namespace aawf::cli
