/*
 * Copyright 2026 The bathflux Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BATHFLUX_CONFIG_HPP
#define BATHFLUX_CONFIG_HPP

#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bathflux/current.hpp"
#include "bathflux/error.hpp"

namespace bathflux {

using json = nlohmann::json;

struct GridSpec {
  double t_start = 0.0;
  double t_end = 10.0;
  std::size_t n_points = 101;
};

struct SweepSpec {
  std::string parameter;  // dotted path, e.g. "model.chain.n_sites"
  std::vector<json> values;
};

enum class OutputFormat { Csv, Json };

struct OutputSpec {
  OutputFormat format = OutputFormat::Csv;
  std::string path;
  bool emit_svg = false;
};

struct RunConfig {
  ModelSpec model;
  GridSpec grid;
  std::optional<SweepSpec> sweep;
  OutputSpec output;
};

namespace detail {

inline void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw InvalidInput(where + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw InvalidInput(where + ": unknown key '" + it.key() + "'");
  }
}

inline double get_number(const json& obj, const char* key, const std::string& where, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw InvalidInput(where + "." + key + ": expected a number");
  return v.get<double>();
}

inline std::optional<double> get_optional_number(const json& obj, const char* key, const std::string& where,
                                                 std::optional<double> fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_number()) throw InvalidInput(where + "." + key + ": expected a number or null");
  return v.get<double>();
}

inline std::size_t get_count(const json& obj, const char* key, const std::string& where, std::size_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw InvalidInput(where + "." + key + ": expected a non-negative integer");
  return v.get<std::size_t>();
}

template <class Enum>
Enum get_choice(const json& obj, const char* key, const std::string& where, Enum fallback,
                std::initializer_list<std::pair<const char*, Enum>> choices) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (v.is_string())
    for (const auto& [name, value] : choices)
      if (v.get<std::string>() == name) return value;
  std::string names;
  for (const auto& c : choices) names += std::string(names.empty() ? "" : "|") + c.first;
  throw InvalidInput(where + "." + key + ": expected one of " + names);
}

inline const char* family_name(ChainFamily f) {
  switch (f) {
    case ChainFamily::Pst: return "pst";
    case ChainFamily::Uniform: return "uniform";
    case ChainFamily::Custom: return "custom";
  }
  return "?";
}

inline const char* initial_name(InitialCase c) {
  switch (c) {
    case InitialCase::Site1: return "site1";
    case InitialCase::UniformAll: return "uniform_all";
    case InitialCase::TwoSite: return "two_site";
  }
  return "?";
}

inline json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace detail

inline ChainConfig chain_from_json(const json& j) {
  const std::string w = "model.chain";
  detail::reject_unknown(j, w, {"family", "n_sites", "tau", "couplings"});
  const auto family = detail::get_choice(j, "family", w, ChainFamily::Pst,
                                         {{"pst", ChainFamily::Pst},
                                          {"uniform", ChainFamily::Uniform},
                                          {"custom", ChainFamily::Custom}});
  if (family == ChainFamily::Custom) {
    if (!j.contains("couplings") || !j.at("couplings").is_array())
      throw InvalidInput(w + ".couplings: custom chains need a couplings array");
    std::vector<double> c;
    for (const auto& x : j.at("couplings")) {
      if (!x.is_number()) throw InvalidInput(w + ".couplings: expected numbers");
      c.push_back(x.get<double>());
    }
    auto cfg = make_custom_chain(std::move(c));
    if (j.contains("n_sites") && detail::get_count(j, "n_sites", w, 0) != cfg.n_sites)
      throw InvalidInput(w + ".n_sites: does not match couplings length + 1");
    cfg.tau = detail::get_number(j, "tau", w, cfg.tau);
    return cfg;
  }
  if (j.contains("couplings")) throw InvalidInput(w + ".couplings: only allowed for family 'custom'");
  return make_chain(family, detail::get_count(j, "n_sites", w, 6), detail::get_number(j, "tau", w, 1.0));
}

inline json chain_to_json(const ChainConfig& c) {
  json j = {{"family", detail::family_name(c.family)}, {"n_sites", c.n_sites}, {"tau", c.tau}};
  if (c.family == ChainFamily::Custom) j["couplings"] = c.couplings;
  return j;
}

inline BathSpectrum bath_from_json(const json& j) {
  const std::string w = "model.bath";
  detail::reject_unknown(j, w, {"spectrum", "frequency", "uv_cutoff", "ir_cutoff"});
  BathSpectrum b;
  b.kind = detail::get_choice(j, "spectrum", w, SpectrumKind::Ohmic,
                              {{"lorentz_drude", SpectrumKind::LorentzDrude},
                               {"ohmic", SpectrumKind::Ohmic},
                               {"white_noise", SpectrumKind::WhiteNoise}});
  b.frequency = detail::get_number(j, "frequency", w, 1.0);
  b.uv_cutoff = detail::get_optional_number(j, "uv_cutoff", w, std::nullopt);
  b.ir_cutoff = detail::get_optional_number(j, "ir_cutoff", w, std::nullopt);
  b.validate();
  return b;
}

inline json bath_to_json(const BathSpectrum& b) {
  return {{"spectrum", to_string(b.kind)},
          {"frequency", b.frequency},
          {"uv_cutoff", detail::optional_json(b.uv_cutoff)},
          {"ir_cutoff", detail::optional_json(b.ir_cutoff)}};
}

inline ModelSpec model_from_json(const json& j) {
  const std::string w = "model";
  detail::reject_unknown(j, w, {"chain", "initial", "bath", "thermal", "mode", "jti_variant"});
  ModelSpec m;
  if (j.contains("chain")) m.chain = chain_from_json(j.at("chain"));
  if (j.contains("bath")) m.bath = bath_from_json(j.at("bath"));
  m.initial = detail::get_choice(j, "initial", w, m.initial,
                                 {{"site1", InitialCase::Site1},
                                  {"uniform_all", InitialCase::UniformAll},
                                  {"two_site", InitialCase::TwoSite}});
  if (j.contains("thermal")) {
    const json& t = j.at("thermal");
    detail::reject_unknown(t, "model.thermal", {"temperature", "gamma_sq"});
    m.thermal.temperature = detail::get_number(t, "temperature", "model.thermal", m.thermal.temperature);
    m.thermal.gamma_sq = detail::get_number(t, "gamma_sq", "model.thermal", m.thermal.gamma_sq);
  }
  m.mode = detail::get_choice(j, "mode", w, m.mode, {{"full", EvalMode::Full}, {"high_t", EvalMode::HighT}});
  m.jti_variant = detail::get_choice(j, "jti_variant", w, m.jti_variant,
                                     {{"printed", JtiVariant::AsPrinted}, {"consistent", JtiVariant::DerivativeConsistent}});
  m.validate();
  return m;
}

inline json model_to_json(const ModelSpec& m) {
  return {{"chain", chain_to_json(m.chain)},
          {"initial", detail::initial_name(m.initial)},
          {"bath", bath_to_json(m.bath)},
          {"thermal", {{"temperature", m.thermal.temperature}, {"gamma_sq", m.thermal.gamma_sq}}},
          {"mode", to_string(m.mode)},
          {"jti_variant", to_string(m.jti_variant)}};
}

inline json run_config_to_json(const RunConfig& c) {
  json j = {{"model", model_to_json(c.model)},
            {"grid", {{"t_start", c.grid.t_start}, {"t_end", c.grid.t_end}, {"n_points", c.grid.n_points}}},
            {"output",
             {{"format", c.output.format == OutputFormat::Csv ? "csv" : "json"},
              {"path", c.output.path},
              {"emit_svg", c.output.emit_svg}}}};
  if (c.sweep) j["sweep"] = {{"parameter", c.sweep->parameter}, {"values", c.sweep->values}};
  return j;
}

/// Dotted path to a JSON pointer; only model fields may be swept.
inline json::json_pointer sweep_pointer(const std::string& path) {
  if (path.rfind("model.", 0) != 0) throw InvalidInput("sweep.parameter: must start with 'model.'");
  std::string p = "/" + path;
  for (auto& ch : p)
    if (ch == '.') ch = '/';
  return json::json_pointer(p);
}

/// The model with one field replaced, re-validated through the strict parser.
inline ModelSpec apply_sweep_value(const ModelSpec& base, const std::string& parameter, const json& value) {
  json root = {{"model", model_to_json(base)}};
  const auto ptr = sweep_pointer(parameter);
  if (!root.contains(ptr)) throw InvalidInput("sweep.parameter: no such field '" + parameter + "'");
  if (root.at(ptr).is_object()) throw InvalidInput("sweep.parameter: '" + parameter + "' is not a leaf field");
  root[ptr] = value;
  return model_from_json(root.at("model"));
}

inline RunConfig run_config_from_json(const json& j) {
  detail::reject_unknown(j, "config", {"model", "grid", "sweep", "output"});
  RunConfig c;
  if (j.contains("model")) c.model = model_from_json(j.at("model"));
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    detail::reject_unknown(g, "grid", {"t_start", "t_end", "n_points"});
    c.grid.t_start = detail::get_number(g, "t_start", "grid", c.grid.t_start);
    c.grid.t_end = detail::get_number(g, "t_end", "grid", c.grid.t_end);
    c.grid.n_points = detail::get_count(g, "n_points", "grid", c.grid.n_points);
  }
  if (!(c.grid.t_start < c.grid.t_end)) throw InvalidInput("grid: t_start must be < t_end");
  if (c.grid.n_points < 2) throw InvalidInput("grid: n_points must be >= 2");
  if (c.grid.t_start < 0.0) throw InvalidInput("grid: t_start must be >= 0");
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    detail::reject_unknown(s, "sweep", {"parameter", "values"});
    if (!s.contains("parameter") || !s.at("parameter").is_string())
      throw InvalidInput("sweep.parameter: expected a string");
    if (!s.contains("values") || !s.at("values").is_array() || s.at("values").empty())
      throw InvalidInput("sweep.values: expected a non-empty array");
    SweepSpec sw{s.at("parameter").get<std::string>(), {}};
    for (const auto& v : s.at("values")) sw.values.push_back(v);
    for (const auto& v : sw.values) apply_sweep_value(c.model, sw.parameter, v);
    c.sweep = std::move(sw);
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    detail::reject_unknown(o, "output", {"format", "path", "emit_svg"});
    c.output.format =
        detail::get_choice(o, "format", "output", c.output.format, {{"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}});
    if (o.contains("path")) {
      if (!o.at("path").is_string()) throw InvalidInput("output.path: expected a string");
      c.output.path = o.at("path").get<std::string>();
    }
    if (o.contains("emit_svg")) {
      if (!o.at("emit_svg").is_boolean()) throw InvalidInput("output.emit_svg: expected a boolean");
      c.output.emit_svg = o.at("emit_svg").get<bool>();
    }
  }
  return c;
}

inline RunConfig parse_run_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("config: ") + e.what());
  }
  return run_config_from_json(j);
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("config: cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

}  // namespace bathflux

#endif  // BATHFLUX_CONFIG_HPP
