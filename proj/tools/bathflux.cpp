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

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "bathflux/bathflux.hpp"

namespace fs = std::filesystem;
using namespace bathflux;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Overrides {
  std::string config_path;
  std::string out;
  bool reproducible = false;
  std::string mode;
  std::string jti_variant;
  std::optional<double> uv_cutoff;
  std::optional<double> ir_cutoff;
};

void add_model_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON run configuration")->required();
  cmd->add_option("--out", o.out, "output path");
  cmd->add_flag("--reproducible", o.reproducible, "omit the timestamp header line");
  cmd->add_option("--mode", o.mode, "evaluation mode")->check(CLI::IsMember({"full", "high_t"}));
  cmd->add_option("--jti-variant", o.jti_variant, "quantum-current variant")->check(CLI::IsMember({"printed", "consistent"}));
  cmd->add_option("--uv-cutoff", o.uv_cutoff, "upper frequency cutoff");
  cmd->add_option("--ir-cutoff", o.ir_cutoff, "lower frequency cutoff");
}

RunConfig resolve_config(const Overrides& o) {
  RunConfig c = load_run_config(o.config_path);
  if (!o.mode.empty()) c.model.mode = o.mode == "full" ? EvalMode::Full : EvalMode::HighT;
  if (!o.jti_variant.empty())
    c.model.jti_variant = o.jti_variant == "printed" ? JtiVariant::AsPrinted : JtiVariant::DerivativeConsistent;
  if (o.uv_cutoff) c.model.bath.uv_cutoff = *o.uv_cutoff;
  if (o.ir_cutoff) c.model.bath.ir_cutoff = *o.ir_cutoff;
  c.model.validate();
  if (!o.out.empty()) c.output.path = o.out;
  return c;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

ScanResult run_scan(const ModelSpec& model, const GridSpec& grid) {
  const auto t = uniform_grid(grid.t_start, grid.t_end, grid.n_points);
  ScanResult res = scan(model, t);
  for (const auto& s : res.samples)
    for (const Quantity* q : {&s.j_t, &s.j_ti, &s.e_t, &s.e_ti})
      if (q->is_finite() && !std::isfinite(q->value()))
        throw NumericalError("non-finite value at t = " + format_double(s.t));
  return res;
}

void write_result(const RunConfig& cfg, const ScanResult& res, const RunHeader& header, const std::string& path) {
  std::ofstream file;
  if (!path.empty()) {
    file.open(path, std::ios::binary);
    if (!file) throw InvalidInput("cannot write '" + path + "'");
  }
  std::ostream& out = path.empty() ? std::cout : file;
  if (cfg.output.format == OutputFormat::Csv)
    write_csv(out, header, res);
  else
    write_json(out, header, res);
  if (cfg.output.emit_svg && !path.empty()) {
    std::ofstream svg(path + ".svg", std::ios::binary);
    if (!svg) throw InvalidInput("cannot write '" + path + ".svg'");
    write_svg(svg, res);
  }
}

int cmd_current(const Overrides& o) {
  const RunConfig cfg = resolve_config(o);
  RunHeader header{run_config_to_json(cfg), o.reproducible ? "" : utc_timestamp(), {}};
  write_result(cfg, run_scan(cfg.model, cfg.grid), header, cfg.output.path);
  return kExitOk;
}

std::size_t sweep_threads(std::size_t jobs) {
  std::size_t cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BATHFLUX_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw InvalidInput("BATHFLUX_THREADS must be a positive integer");
    cap = static_cast<std::size_t>(v);
  }
  return std::min(cap, jobs);
}

int cmd_sweep(const Overrides& o) {
  const RunConfig cfg = resolve_config(o);
  if (!cfg.sweep) throw InvalidInput("sweep: config has no 'sweep' section");
  if (cfg.output.path.empty()) throw InvalidInput("sweep: an output directory is required (--out)");
  const fs::path dir(cfg.output.path);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InvalidInput("sweep: cannot create '" + dir.string() + "'");

  const auto& values = cfg.sweep->values;
  const std::string ext = cfg.output.format == OutputFormat::Csv ? ".csv" : ".json";
  std::vector<std::string> names(values.size());
  std::vector<std::exception_ptr> errors(values.size());
  const std::string timestamp = o.reproducible ? "" : utc_timestamp();
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      try {
        RunConfig entry = cfg;
        entry.model = apply_sweep_value(cfg.model, cfg.sweep->parameter, values[i]);
        entry.sweep.reset();
        std::ostringstream name;
        name << "entry_" << std::setw(3) << std::setfill('0') << i << ext;
        names[i] = name.str();
        entry.output.path = (dir / names[i]).string();
        RunHeader header{run_config_to_json(entry), timestamp,
                         {{"sweep_parameter", cfg.sweep->parameter}, {"sweep_value", values[i].dump()}}};
        write_result(entry, run_scan(entry.model, entry.grid), header, entry.output.path);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads = sweep_threads(values.size());
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < n_threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  json entries = json::array();
  for (std::size_t i = 0; i < values.size(); ++i) entries.push_back({{"value", values[i]}, {"file", names[i]}});
  json index = {{"parameter", cfg.sweep->parameter}, {"entries", entries}, {"config", run_config_to_json(cfg)}};
  if (!timestamp.empty()) index["generated"] = timestamp;
  std::ofstream idx(dir / "index.json", std::ios::binary);
  if (!idx) throw InvalidInput("sweep: cannot write index.json");
  idx << index.dump(1) << '\n';
  return kExitOk;
}

struct EnvelopeArgs {
  std::string csv;
  std::string column = "j_t";
  std::optional<double> t_min;
  std::optional<double> t_max;
  double min_separation = 0.0;
  std::string law = "power";
  std::string out;
};

int cmd_envelope(const EnvelopeArgs& a) {
  std::ifstream in(a.csv);
  if (!in) throw InvalidInput("envelope: cannot read '" + a.csv + "'");
  const auto series = read_csv_column(in, a.column);
  const auto env = numerics::peak_envelope(series.t, series.v, a.min_separation);
  const double lo = a.t_min.value_or(series.t.empty() ? 0.0 : series.t.front());
  const double hi = a.t_max.value_or(series.t.empty() ? 0.0 : series.t.back());
  const auto fit = a.law == "power" ? numerics::power_law_fit(env, {lo, hi}) : numerics::exponential_fit(env, {lo, hi});
  json j = fit_to_json(fit, a.law);
  j["column"] = a.column;
  j["peaks"] = env.t.size();
  const std::string text = j.dump(1) + "\n";
  std::cout << text;
  if (!a.out.empty()) {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw InvalidInput("envelope: cannot write '" + a.out + "'");
    f << text;
  }
  return kExitOk;
}

int cmd_validate(const std::string& level, const std::string& out) {
  const auto results = run_validation(level == "full" ? ValidationLevel::Full : ValidationLevel::Quick);
  std::ostringstream table;
  std::size_t passed = 0;
  double total = 0.0;
  for (const auto& r : results) {
    table << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(34) << r.name << std::right << std::fixed
          << std::setprecision(2) << std::setw(8) << r.seconds << "s  " << r.detail << '\n';
    passed += r.passed ? 1 : 0;
    total += r.seconds;
  }
  table << passed << "/" << results.size() << " checks passed in " << std::fixed << std::setprecision(2) << total
        << "s\n";
  std::cout << table.str();
  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw InvalidInput("validate: cannot write '" + out + "'");
    f << table.str();
  }
  return passed == results.size() ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy current between a thermal bath and a fermionic chain"};
  app.require_subcommand(1);

  Overrides current_opts, sweep_opts;
  auto* current = app.add_subcommand("current", "scan currents and energies over a time grid");
  add_model_flags(current, current_opts);
  auto* sweep = app.add_subcommand("sweep", "run one scan per value of a model parameter");
  add_model_flags(sweep, sweep_opts);

  EnvelopeArgs env;
  auto* envelope = app.add_subcommand("envelope", "fit the peak envelope of one CSV column");
  envelope->add_option("--csv", env.csv, "CSV written by 'current'")->required();
  envelope->add_option("--column", env.column, "column to fit")->check(CLI::IsMember({"j_t", "j_ti", "e_t", "e_ti"}));
  envelope->add_option("--t-min", env.t_min, "window start");
  envelope->add_option("--t-max", env.t_max, "window end");
  envelope->add_option("--min-separation", env.min_separation, "keep only peaks dominant within this distance");
  envelope->add_option("--law", env.law, "power or exponential")->check(CLI::IsMember({"power", "exponential"}));
  envelope->add_option("--out", env.out, "also write the fit JSON here");

  std::string level = "quick";
  std::string validate_out;
  auto* validate = app.add_subcommand("validate", "run the built-in oracle suite");
  validate->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  validate->add_option("--out", validate_out, "also write the table here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*current) return cmd_current(current_opts);
    if (*sweep) return cmd_sweep(sweep_opts);
    if (*envelope) return cmd_envelope(env);
    if (*validate) return cmd_validate(level, validate_out);
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const InvalidInput& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}
