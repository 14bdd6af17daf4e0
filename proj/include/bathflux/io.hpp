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

#ifndef BATHFLUX_IO_HPP
#define BATHFLUX_IO_HPP

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bathflux/config.hpp"
#include "bathflux/current.hpp"
#include "bathflux/format.hpp"
#include "bathflux/numerics/series.hpp"

namespace bathflux {

inline constexpr const char* kDivergentToken = "DIVERGENT";
inline constexpr const char* kVersion = "0.1.0";

struct RunHeader {
  json config;                 // fully resolved RunConfig
  std::string timestamp;       // empty when reproducible
  std::vector<std::pair<std::string, std::string>> extra;
};

inline std::string format_cell(const Quantity& q) { return q.is_divergent() ? kDivergentToken : format_double(q.value()); }

inline std::string sample_flags(const CurrentSample& s) {
  std::string flags;
  const std::array<std::pair<const char*, const Quantity*>, 4> cols{
      {{"j_t", &s.j_t}, {"j_ti", &s.j_ti}, {"e_t", &s.e_t}, {"e_ti", &s.e_ti}}};
  for (const auto& [name, q] : cols)
    if (q->is_divergent()) flags += std::string(flags.empty() ? "" : ";") + name + "=" + q->reason();
  return flags;
}

inline void write_csv(std::ostream& out, const RunHeader& header, const ScanResult& result) {
  out << "# bathflux " << kVersion << "\n";
  if (!header.timestamp.empty()) out << "# generated: " << header.timestamp << "\n";
  out << "# config: " << header.config.dump() << "\n";
  for (const auto& [k, v] : result.metadata) out << "# " << k << ": " << v << "\n";
  for (const auto& [k, v] : header.extra) out << "# " << k << ": " << v << "\n";
  out << "t,j_t,j_ti,e_t,e_ti,flags\n";
  for (const auto& s : result.samples) {
    out << format_double(s.t) << ',' << format_cell(s.j_t) << ',' << format_cell(s.j_ti) << ',' << format_cell(s.e_t)
        << ',' << format_cell(s.e_ti) << ',' << sample_flags(s) << '\n';
  }
}

inline json cell_json(const Quantity& q) { return q.is_divergent() ? json(kDivergentToken) : json(q.value()); }

inline void write_json(std::ostream& out, const RunHeader& header, const ScanResult& result) {
  json meta = json::object();
  meta["version"] = kVersion;
  if (!header.timestamp.empty()) meta["generated"] = header.timestamp;
  for (const auto& [k, v] : result.metadata) meta[k] = v;
  for (const auto& [k, v] : header.extra) meta[k] = v;
  json rows = json::array();
  for (const auto& s : result.samples)
    rows.push_back({s.t, cell_json(s.j_t), cell_json(s.j_ti), cell_json(s.e_t), cell_json(s.e_ti), sample_flags(s)});
  const json doc = {{"metadata", meta},
                    {"config", header.config},
                    {"columns", {"t", "j_t", "j_ti", "e_t", "e_ti", "flags"}},
                    {"rows", rows}};
  out << doc.dump(1) << '\n';
}

/// Line plot of the finite j_t and j_ti values.
inline void write_svg(std::ostream& out, const ScanResult& result) {
  constexpr double w = 640.0, h = 400.0, pad = 40.0;
  double t0 = 0, t1 = 1, lo = 0, hi = 0;
  if (!result.samples.empty()) {
    t0 = result.samples.front().t;
    t1 = result.samples.back().t;
  }
  for (const auto& s : result.samples)
    for (const Quantity* q : {&s.j_t, &s.j_ti})
      if (q->is_finite()) {
        lo = std::min(lo, q->value());
        hi = std::max(hi, q->value());
      }
  if (hi == lo) hi = lo + 1.0;
  if (t1 == t0) t1 = t0 + 1.0;
  auto x = [&](double t) { return pad + (w - 2 * pad) * (t - t0) / (t1 - t0); };
  auto y = [&](double v) { return h - pad - (h - 2 * pad) * (v - lo) / (hi - lo); };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<line x1=\"" << pad << "\" y1=\"" << y(0) << "\" x2=\"" << w - pad << "\" y2=\"" << y(0)
      << "\" stroke=\"#999\"/>\n";
  const std::array<std::pair<const char*, const char*>, 2> series{{{"j_t", "#c0392b"}, {"j_ti", "#2471a3"}}};
  for (std::size_t k = 0; k < series.size(); ++k) {
    out << "<polyline fill=\"none\" stroke=\"" << series[k].second << "\" points=\"";
    for (const auto& s : result.samples) {
      const Quantity& q = k == 0 ? s.j_t : s.j_ti;
      if (q.is_finite()) out << x(s.t) << ',' << y(q.value()) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << pad + 60.0 * k << "\" y=\"20\" fill=\"" << series[k].second << "\">" << series[k].first
        << "</text>\n";
  }
  out << "</svg>\n";
}

inline double parse_double(const std::string& cell, std::size_t row) {
  double v = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
    throw InvalidInput("csv: unparsable number '" + cell + "' in row " + std::to_string(row));
  return v;
}

/// Reads one column of a file written by write_csv.
inline numerics::Series read_csv_column(std::istream& in, const std::string& column) {
  std::string line;
  std::vector<std::string> header;
  numerics::Series out;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  std::size_t col = 0;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (header.empty()) {
      header = split(line);
      const auto it = std::find(header.begin(), header.end(), column);
      if (it == header.end()) throw InvalidInput("csv: no column '" + column + "'");
      col = static_cast<std::size_t>(it - header.begin());
      if (header.empty() || header[0] != "t") throw InvalidInput("csv: first column must be t");
      continue;
    }
    ++row;
    const auto cells = split(line);
    if (cells.size() <= col) throw InvalidInput("csv: short row " + std::to_string(row));
    if (cells[col] == kDivergentToken) throw NumericalError("csv: column '" + column + "' is DIVERGENT");
    out.t.push_back(parse_double(cells[0], row));
    out.v.push_back(parse_double(cells[col], row));
  }
  if (header.empty()) throw InvalidInput("csv: missing header line");
  return out;
}

inline json fit_to_json(const numerics::FitResult& f, const std::string& law) {
  return {{"law", law},
          {"exponent", f.exponent},
          {"log_prefactor", f.log_prefactor},
          {"residual_rms", f.residual_rms},
          {"window", {f.window.first, f.window.second}},
          {"points", f.points}};
}

}  // namespace bathflux

#endif  // BATHFLUX_IO_HPP
