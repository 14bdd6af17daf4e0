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

#ifndef BATHFLUX_NUMERICS_BESSEL_HPP
#define BATHFLUX_NUMERICS_BESSEL_HPP

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bathflux/error.hpp"

namespace bathflux::numerics {

namespace detail {

// Ascending series; used for |x| < 1 where every term is below the previous by (x/2)^2/k(n+k).
inline double bessel_j_series(int n, double x) {
  const double half = 0.5 * x;
  double lead = 1.0;
  for (int k = 1; k <= n; ++k) {
    lead *= half / k;
    if (lead == 0.0) return 0.0;
  }
  const double q = -half * half;
  double term = lead;
  double sum = lead;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<double>(k) * (n + k));
    sum += term;
    if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Hankel expansion, valid for x >> max(1, n^2)^(1/2); caller guarantees x >= 50 max(1, n).
inline double bessel_j_asymptotic(int n, double x) {
  const double mu = 4.0 * n * static_cast<double>(n);
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(term) > std::abs(last) && k > 2) break;
    if (k % 4 == 1) q += term;
    else if (k % 4 == 2) p -= term;
    else if (k % 4 == 3) q -= term;
    else p += term;
    last = term;
    if (std::abs(term) < 1e-17) break;
  }
  // chi = x - n pi/2 - pi/4, assembled without large-argument subtraction.
  const double c = std::cos(x);
  const double s = std::sin(x);
  double cp = (c + s) * (0.5 * std::numbers::sqrt2);  // cos(x - pi/4)
  double sp = (s - c) * (0.5 * std::numbers::sqrt2);  // sin(x - pi/4)
  double cos_chi = 0.0;
  double sin_chi = 0.0;
  switch (n % 4) {
    case 0: cos_chi = cp; sin_chi = sp; break;
    case 1: cos_chi = sp; sin_chi = -cp; break;
    case 2: cos_chi = -cp; sin_chi = -sp; break;
    default: cos_chi = -sp; sin_chi = cp; break;
  }
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_chi - q * sin_chi);
}

// Miller backward recurrence normalised by J0 + 2 sum J_2k = 1.
inline double bessel_j_miller(int n, double x) {
  const double reach = std::max(static_cast<double>(n), x);
  int start = static_cast<int>(reach + 30.0 + 10.0 * std::cbrt(reach));
  start += start % 2;
  constexpr double big = 1e250;
  double j_above = 0.0;
  double j = 1e-300;
  double result = (start == n) ? j : 0.0;
  double sum = 0.0;
  for (int k = start; k >= 1; --k) {
    const double below = (2.0 * k / x) * j - j_above;
    j_above = j;
    j = below;
    const int index = k - 1;
    if (index == n) result = j;
    if (index > 0 && index % 2 == 0) sum += 2.0 * j;
    if (std::abs(j) > big) {
      j *= 1.0 / big;
      j_above *= 1.0 / big;
      sum *= 1.0 / big;
      result *= 1.0 / big;
    }
  }
  sum += j;
  return result / sum;
}

}  // namespace detail

/// Bessel function of the first kind J_n(x) for integer order n >= 0.
inline double bessel_j(int n, double x) {
  if (n < 0) throw InvalidInput("bessel_j: order must be nonnegative");
  if (std::isnan(x)) throw InvalidInput("bessel_j: NaN argument");
  if (x < 0.0) return (n % 2 == 0 ? 1.0 : -1.0) * bessel_j(n, -x);
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x < 1.0) return detail::bessel_j_series(n, x);
  if (x > 50.0 * std::max(1, n)) return detail::bessel_j_asymptotic(n, x);
  return detail::bessel_j_miller(n, x);
}

}  // namespace bathflux::numerics

#endif  // BATHFLUX_NUMERICS_BESSEL_HPP
