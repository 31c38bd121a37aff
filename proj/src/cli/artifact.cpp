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

#include "aawf/cli/artifact.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "aawf/common.hpp"

namespace aawf::cli {

namespace {

using Json = nlohmann::ordered_json;

void put_metric(Json& m, const char* key, const std::optional<double>& v) {
  if (v) m[key] = *v;
}

std::optional<double> get_metric(const Json& m, const char* key) {
  if (!m.contains(key)) return std::nullopt;
  if (!m.at(key).is_number()) throw ConfigError(std::string("artifact: metric ") + key + " is not a number");
  return m.at(key).get<double>();
}

const Json& member(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(std::string("artifact: missing '") + key + "'");
  return obj.at(key);
}

}  // namespace

Json to_json(const ChiArtifact& a) {
  Json doc;
  doc["schema_version"] = a.schema_version;
  doc["basis"] = a.chi.meta.labels;
  doc["d_q"] = a.d_q;
  Json chi = Json::array();
  for (Eigen::Index i = 0; i < a.chi.data.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.chi.data.cols(); ++j) {
      chi.push_back(Json{{"re", a.chi.data(i, j).real()}, {"im", a.chi.data(i, j).imag()}});
    }
  }
  doc["chi"] = std::move(chi);

  Json meta;
  if (a.chi.meta.n) {
    meta["n"] = *a.chi.meta.n;
  } else {
    meta["n"] = "exact";
  }
  meta["S"] = a.chi.meta.no_jump;
  meta["J"] = a.chi.meta.jumped;
  meta["disposed"] = a.chi.meta.disposed;
  meta["seed"] = a.chi.meta.seed;
  meta["model"] = a.model;
  Json metrics = Json::object();
  put_metric(metrics, "trace_distance_to_ideal", a.metrics.trace_distance_to_ideal);
  put_metric(metrics, "fidelity_to_ideal", a.metrics.fidelity_to_ideal);
  put_metric(metrics, "nojump_upper_bound", a.metrics.nojump_upper_bound);
  put_metric(metrics, "nojump_upper_bound_single", a.metrics.nojump_upper_bound_single);
  meta["metrics"] = std::move(metrics);
  if (!a.extra.empty()) meta["extra"] = a.extra;
  doc["meta"] = std::move(meta);
  return doc;
}

ChiArtifact from_json(const Json& doc) {
  ChiArtifact a;
  const Json& version = member(doc, "schema_version");
  if (!version.is_number_integer() || version.get<int>() != kSchemaVersion) {
    throw ConfigError("artifact: unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");
  }
  a.schema_version = kSchemaVersion;
  a.d_q = member(doc, "d_q").get<std::size_t>();
  a.chi.meta.labels = member(doc, "basis").get<std::vector<std::string>>();
  const Json& chi = member(doc, "chi");
  const std::size_t size = a.d_q * a.d_q;
  if (!chi.is_array() || chi.size() != size * size || a.chi.meta.labels.size() != size) {
    throw ConfigError("artifact: chi does not hold (d_q^2)^2 entries");
  }
  a.chi.data.resize(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  for (std::size_t k = 0; k < chi.size(); ++k) {
    a.chi.data(static_cast<Eigen::Index>(k / size), static_cast<Eigen::Index>(k % size)) =
        cd(member(chi[k], "re").get<double>(), member(chi[k], "im").get<double>());
  }
  const Json& meta = member(doc, "meta");
  const Json& n = member(meta, "n");
  if (n.is_string()) {
    if (n.get<std::string>() != "exact") throw ConfigError("artifact: meta.n must be a count or \"exact\"");
  } else {
    a.chi.meta.n = n.get<std::size_t>();
  }
  a.chi.meta.no_jump = member(meta, "S").get<std::size_t>();
  a.chi.meta.jumped = member(meta, "J").get<std::size_t>();
  a.chi.meta.disposed = member(meta, "disposed").get<std::size_t>();
  a.chi.meta.seed = member(meta, "seed").get<std::uint64_t>();
  a.model = member(meta, "model");
  const Json& m = member(meta, "metrics");
  a.metrics.trace_distance_to_ideal = get_metric(m, "trace_distance_to_ideal");
  a.metrics.fidelity_to_ideal = get_metric(m, "fidelity_to_ideal");
  a.metrics.nojump_upper_bound = get_metric(m, "nojump_upper_bound");
  a.metrics.nojump_upper_bound_single = get_metric(m, "nojump_upper_bound_single");
  if (meta.contains("extra")) a.extra = meta.at("extra");
  return a;
}

std::string dump_artifact(const ChiArtifact& a) { return to_json(a).dump(2) + "\n"; }

void write_artifact(const std::string& path, const ChiArtifact& a) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << dump_artifact(a);
}

ChiArtifact read_artifact(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return from_json(Json::parse(buf.str()));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("artifact: ") + e.what());
  }
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  auto line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i];
    out << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

}  // namespace aawf::cli
