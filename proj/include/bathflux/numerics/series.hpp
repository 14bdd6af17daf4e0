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

#ifndef BATHFLUX_NUMERICS_SERIES_HPP
#define BATHFLUX_NUMERICS_SERIES_HPP

#include <algorithm>
#include <string>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "bathflux/error.hpp"

namespace bathflux::numerics {

struct Series {
  std::vector<double> t;
  std::vector<double> v;
};

/// Least-squares line through log(v) against log(t) (power law) or t (exponential).
struct FitResult {
  double exponent = 0.0;
  double log_prefactor = 0.0;
  double residual_rms = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  std::size_t points = 0;
};

namespace detail {

inline void require_uniform(std::span<const double> times, const char* who) {
  const double h = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  if (!(h > 0.0)) throw InvalidInput(std::string(who) + ": grid must be increasing");
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double step = times[i] - times[i - 1];
    if (std::abs(step - h) > 1e-6 * h) throw InvalidInput(std::string(who) + ": grid must be uniform");
  }
}

}  // namespace detail

/// Strict interior local maxima of |values|. With min_separation > 0 a peak is
/// kept only if no other peak within that distance is higher.
inline Series peak_envelope(std::span<const double> times, std::span<const double> values,
                            double min_separation = 0.0) {
  if (times.size() != values.size()) throw InvalidInput("peak_envelope: size mismatch");
  if (times.size() < 3) throw InvalidInput("peak_envelope: need at least 3 points");
  Series raw;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    const double a = std::abs(values[i]);
    if (a > std::abs(values[i - 1]) && a > std::abs(values[i + 1])) {
      raw.t.push_back(times[i]);
      raw.v.push_back(a);
    }
  }
  if (!(min_separation > 0.0)) return raw;

  Series kept;
  std::size_t lo = 0;
  std::size_t hi = 0;
  for (std::size_t i = 0; i < raw.t.size(); ++i) {
    while (raw.t[i] - raw.t[lo] > min_separation) ++lo;
    while (hi + 1 < raw.t.size() && raw.t[hi + 1] - raw.t[i] <= min_separation) ++hi;
    const auto first = raw.v.begin() + static_cast<std::ptrdiff_t>(lo);
    const auto last = raw.v.begin() + static_cast<std::ptrdiff_t>(hi) + 1;
    if (raw.v[i] >= *std::max_element(first, last)) {
      kept.t.push_back(raw.t[i]);
      kept.v.push_back(raw.v[i]);
    }
  }
  return kept;
}

namespace detail {

inline FitResult log_linear_fit(const Series& data, std::pair<double, double> window, bool log_abscissa,
                                const char* who) {
  if (data.t.size() != data.v.size()) throw InvalidInput(std::string(who) + ": size mismatch");
  if (!(window.second > window.first)) throw InvalidInput(std::string(who) + ": empty window");
  std::vector<double> x;
  std::vector<double> y;
  std::size_t seen = 0;
  for (std::size_t i = 0; i < data.t.size(); ++i) {
    if (data.t[i] < window.first || data.t[i] > window.second) continue;
    // The first two points of a window carry transient contamination.
    if (seen++ < 2) continue;
    if (!(data.v[i] > 0.0)) throw InvalidInput(std::string(who) + ": values must be positive");
    x.push_back(log_abscissa ? std::log(data.t[i]) : data.t[i]);
    y.push_back(std::log(data.v[i]));
  }
  if (x.size() < 5) throw InvalidInput(std::string(who) + ": fewer than 5 usable points in window");

  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw InvalidInput(std::string(who) + ": degenerate abscissae");
  FitResult out;
  out.exponent = sxy / sxx;
  out.log_prefactor = my - out.exponent * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (out.log_prefactor + out.exponent * x[i]);
    ss += r * r;
  }
  out.residual_rms = std::sqrt(ss / n);
  out.window = window;
  out.points = x.size();
  return out;
}

}  // namespace detail

/// v ≈ exp(log_prefactor)·t^exponent over the window.
inline FitResult power_law_fit(const Series& envelope, std::pair<double, double> window) {
  return detail::log_linear_fit(envelope, window, true, "power_law_fit");
}

/// v ≈ exp(log_prefactor + exponent·t); a decay rate γ shows up as exponent = -γ.
inline FitResult exponential_fit(const Series& envelope, std::pair<double, double> window) {
  return detail::log_linear_fit(envelope, window, false, "exponential_fit");
}

/// dv/dt on a uniform grid: 5-point centred stencil inside, second order near the edges.
inline std::vector<double> finite_difference_derivative(std::span<const double> times,
                                                        std::span<const double> values) {
  if (times.size() != values.size()) throw InvalidInput("finite_difference_derivative: size mismatch");
  const std::size_t n = times.size();
  if (n < 5) throw InvalidInput("finite_difference_derivative: need at least 5 points");
  detail::require_uniform(times, "finite_difference_derivative");
  const double h = (times.back() - times.front()) / static_cast<double>(n - 1);
  std::vector<double> d(n);
  d[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h);
  d[1] = (values[2] - values[0]) / (2.0 * h);
  for (std::size_t i = 2; i + 2 < n; ++i)
    d[i] = (values[i - 2] - 8.0 * values[i - 1] + 8.0 * values[i + 1] - values[i + 2]) / (12.0 * h);
  d[n - 2] = (values[n - 1] - values[n - 3]) / (2.0 * h);
  d[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * h);
  return d;
}

}  // namespace bathflux::numerics

#endif  // BATHFLUX_NUMERICS_SERIES_HPP
