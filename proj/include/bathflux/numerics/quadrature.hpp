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

#ifndef BATHFLUX_NUMERICS_QUADRATURE_HPP
#define BATHFLUX_NUMERICS_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "bathflux/error.hpp"

namespace bathflux::numerics {

enum class Trig { Sin, Cos };

/// Value with an absolute error estimate.
struct IntegralEstimate {
  double value = 0.0;
  double error = 0.0;
};

using Weight = std::function<double(double)>;

namespace detail {

struct GaussLegendre16 {
  std::array<double, 16> nodes{};
  std::array<double, 16> weights{};

  GaussLegendre16() {
    constexpr int n = 16;
    for (int i = 0; i < n / 2; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      nodes[i] = -z;
      nodes[n - 1 - i] = z;
      weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

inline const GaussLegendre16& gauss_legendre16() {
  static const GaussLegendre16 rule;
  return rule;
}

template <typename F>
double gauss16(F&& f, double a, double b) {
  const auto& rule = gauss_legendre16();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < 16; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

// Subdivides [a, b] so that no piece is wider than max(scale, |a|)/4.
template <typename F>
double resolved_gauss(F&& f, double a, double b, double scale) {
  const double width = std::max(scale, std::abs(a)) * 0.25;
  const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / width)));
  const double h = (b - a) / pieces;
  double sum = 0.0;
  for (int i = 0; i < pieces; ++i) sum += gauss16(f, a + i * h, i + 1 == pieces ? b : a + (i + 1) * h);
  return sum;
}

// Wynn epsilon extrapolation of a sequence of partial sums.
inline IntegralEstimate wynn_epsilon(std::span<const double> partial) {
  const std::size_t n = partial.size();
  if (n == 0) return {};
  if (n < 3) return {partial.back(), n == 2 ? std::abs(partial[1] - partial[0]) : 0.0};
  std::vector<double> prev(n + 1, 0.0);  // epsilon_{-1}
  std::vector<double> cur(partial.begin(), partial.end());
  double best = partial.back();
  double best_err = std::abs(partial[n - 1] - partial[n - 2]);
  double last_even = best;
  for (std::size_t col = 1; col < n; ++col) {
    std::vector<double> next(n - col, 0.0);
    bool stalled = false;
    for (std::size_t i = 0; i + col < n; ++i) {
      const double diff = cur[i + 1] - cur[i];
      if (std::abs(diff) < 1e-300 || !std::isfinite(diff)) {
        stalled = true;
        break;
      }
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    if (stalled) break;
    if (col % 2 == 0) {
      const double estimate = next.back();
      const double err = next.size() >= 2 ? std::abs(next[next.size() - 1] - next[next.size() - 2])
                                          : std::abs(estimate - last_even);
      if (std::isfinite(estimate) && err <= best_err) {
        best = estimate;
        best_err = err;
      }
      last_even = estimate;
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (cur.size() < 2) break;
  }
  return {best, best_err};
}

// Polynomial extrapolation of (eps_i, v_i) to eps = 0 (Neville).
inline double extrapolate_to_zero(std::span<const double> eps, std::span<const double> vals) {
  std::vector<double> p(vals.begin(), vals.end());
  const std::size_t n = p.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i)
      p[i] = (eps[i + m] * p[i] - eps[i] * p[i + 1]) / (eps[i + m] - eps[i]);
  return p[0];
}

}  // namespace detail

/// Controls for oscillatory_integral.
struct OscillatoryOptions {
  double support_begin = 0.0;
  double support_end = std::numeric_limits<double>::infinity();
  /// Frequency over which the weight varies near the origin.
  double scale = 1.0;
  /// Panels summed directly before tail acceleration takes over.
  double direct_range = 40.0;
  int tail_panels = 40;
  /// Extrapolant disagreement above max(abs_tol, rel_tol·|value|) raises NonConvergent.
  double rel_tol = 1e-6;
  double abs_tol = 1e-12;
};

namespace detail {

inline IntegralEstimate panel_sum(const Weight& weight, Trig trig, double t, double eps,
                                  const OscillatoryOptions& opt) {
  auto integrand = [&](double w) {
    const double osc = trig == Trig::Sin ? std::sin(w * t) : std::cos(w * t);
    const double damp = eps > 0.0 ? std::exp(-eps * w) : 1.0;
    return weight(w) * osc * damp;
  };
  const double half_period = std::numbers::pi / t;
  const double phase = trig == Trig::Sin ? 0.0 : 0.5;
  // First trig zero strictly above the support start.
  const double k0 = std::floor(opt.support_begin / half_period - phase) + 1.0;
  double a = opt.support_begin;
  double b = (k0 + phase) * half_period;
  double sum = 0.0;
  const bool finite_support = std::isfinite(opt.support_end);
  const double direct_end = opt.direct_range * opt.scale;
  while (true) {
    if (finite_support && b >= opt.support_end) {
      sum += resolved_gauss(integrand, a, opt.support_end, opt.scale);
      return {sum, 0.0};
    }
    sum += resolved_gauss(integrand, a, b, opt.scale);
    a = b;
    b += half_period;
    if (!finite_support && a >= direct_end) break;
  }
  std::vector<double> partial;
  partial.reserve(static_cast<std::size_t>(opt.tail_panels) + 1);
  partial.push_back(sum);
  for (int k = 0; k < opt.tail_panels; ++k) {
    sum += resolved_gauss(integrand, a, b, opt.scale);
    partial.push_back(sum);
    a = b;
    b += half_period;
  }
  return wynn_epsilon(partial);
}

}  // namespace detail

/// Abel-regularised ∫ weight(ω) trig(ωt) e^{-εω} dω over the support, ε → 0.
///
/// Panels run between consecutive zeros of trig(ωt) and use 16-point
/// Gauss-Legendre; the tail beyond direct_range·scale is summed with Wynn's
/// epsilon algorithm. Each ε in the (strictly decreasing) schedule gives one
/// value and the set is extrapolated polynomially to ε = 0. An empty
/// schedule evaluates the unregulated integral directly, which is exact for
/// compact supports and exponentially decaying weights.
inline IntegralEstimate oscillatory_integral(const Weight& weight, Trig trig, double t,
                                             std::span<const double> regulator_schedule,
                                             const OscillatoryOptions& options = {}) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("oscillatory_integral: t must be positive");
  if (!(options.scale > 0.0)) throw InvalidInput("oscillatory_integral: scale must be positive");
  if (!(options.support_end > options.support_begin) || options.support_begin < 0.0)
    throw InvalidInput("oscillatory_integral: empty support");
  for (std::size_t i = 0; i < regulator_schedule.size(); ++i) {
    if (!(regulator_schedule[i] > 0.0)) throw InvalidInput("oscillatory_integral: regulators must be positive");
    if (i > 0 && !(regulator_schedule[i] < regulator_schedule[i - 1]))
      throw InvalidInput("oscillatory_integral: regulator schedule must be strictly decreasing");
  }

  if (regulator_schedule.empty() || std::isfinite(options.support_end)) {
    auto est = detail::panel_sum(weight, trig, t, 0.0, options);
    if (!std::isfinite(est.value)) throw NonConvergent("oscillatory_integral: non-finite panel sum");
    return est;
  }

  std::vector<double> values;
  double quad_err = 0.0;
  for (double eps : regulator_schedule) {
    auto est = detail::panel_sum(weight, trig, t, eps, options);
    values.push_back(est.value);
    quad_err = std::max(quad_err, est.error);
  }
  const double full = detail::extrapolate_to_zero(regulator_schedule, values);
  double spread = 0.0;
  if (values.size() >= 2) {
    const double reduced =
        detail::extrapolate_to_zero(regulator_schedule.subspan(1), std::span<const double>(values).subspan(1));
    spread = std::abs(full - reduced);
  }
  IntegralEstimate out{full, std::max(spread, quad_err)};
  if (!std::isfinite(out.value) || out.error > std::max(options.abs_tol, options.rel_tol * std::abs(out.value)))
    throw NonConvergent("oscillatory_integral: regulator extrapolants disagree");
  return out;
}

/// ∫_a^b f(ω) dω for smooth f; b may be +∞ provided f decays.
inline double integrate(const Weight& f, double a, double b, double scale) {
  if (!(b > a)) throw InvalidInput("integrate: empty interval");
  if (std::isfinite(b)) return detail::resolved_gauss(f, a, b, scale);
  double sum = 0.0;
  double lo = a;
  int quiet = 0;
  while (lo < 1e7 * scale) {
    const double hi = lo + std::max(scale, lo) * 0.25;
    const double piece = detail::gauss16(f, lo, hi);
    sum += piece;
    quiet = std::abs(piece) <= 1e-17 * std::abs(sum) ? quiet + 1 : 0;
    if (quiet >= 8 && lo > 10.0 * scale) return sum;
    lo = hi;
  }
  throw NonConvergent("integrate: integrand tail does not decay");
}

}  // namespace bathflux::numerics

#endif  // BATHFLUX_NUMERICS_QUADRATURE_HPP
