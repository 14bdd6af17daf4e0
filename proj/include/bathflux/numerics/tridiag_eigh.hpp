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

#ifndef BATHFLUX_NUMERICS_TRIDIAG_EIGH_HPP
#define BATHFLUX_NUMERICS_TRIDIAG_EIGH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "bathflux/error.hpp"

namespace bathflux::numerics {

/// Spectrum of a real symmetric matrix. Eigenvalues ascend; column k of the
/// column-major vector block is the unit eigenvector for eigenvalues[k].
struct EigenSystem {
  std::vector<double> eigenvalues;
  std::vector<double> vectors;

  std::size_t size() const { return eigenvalues.size(); }
  double vector(std::size_t row, std::size_t col) const { return vectors[col * size() + row]; }
};

/// Full eigendecomposition of the symmetric tridiagonal matrix with the given
/// diagonal and first off-diagonal, by implicit-shift QL iterations.
inline EigenSystem tridiag_eigh(std::span<const double> diagonal, std::span<const double> offdiagonal) {
  const std::size_t n = diagonal.size();
  if (n == 0) throw InvalidInput("tridiag_eigh: empty matrix");
  if (offdiagonal.size() + 1 != n) throw InvalidInput("tridiag_eigh: off-diagonal must have n-1 entries");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(diagonal.begin(), diagonal.end(), finite) ||
      !std::all_of(offdiagonal.begin(), offdiagonal.end(), finite))
    throw InvalidInput("tridiag_eigh: non-finite entry");

  std::vector<double> d(diagonal.begin(), diagonal.end());
  std::vector<double> e(n, 0.0);
  std::copy(offdiagonal.begin(), offdiagonal.end(), e.begin());
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  auto V = [&](std::size_t row, std::size_t col) -> double& { return v[col * n + row]; };

  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int max_sweeps = 60;
  double shift_sum = 0.0;
  double tst1 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n - 1 && std::abs(e[m]) > eps * tst1) ++m;

    int sweeps = 0;
    while (m > l) {
      if (++sweeps > max_sweeps) throw NumericalError("tridiag_eigh: QL iteration did not converge");
      double g = d[l];
      double p = (d[l + 1] - g) / (2.0 * e[l]);
      double r = std::hypot(p, 1.0);
      if (p < 0) r = -r;
      d[l] = e[l] / (p + r);
      d[l + 1] = e[l] * (p + r);
      const double dl1 = d[l + 1];
      double h = g - d[l];
      for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
      shift_sum += h;

      p = d[m];
      double c = 1.0, c2 = 1.0, c3 = 1.0;
      const double el1 = e[l + 1];
      double s = 0.0, s2 = 0.0;
      for (std::size_t ii = m; ii-- > l;) {
        c3 = c2;
        c2 = c;
        s2 = s;
        g = c * e[ii];
        h = c * p;
        r = std::hypot(p, e[ii]);
        e[ii + 1] = s * r;
        s = e[ii] / r;
        c = p / r;
        p = c * d[ii] - s * g;
        d[ii + 1] = h + s * (c * g + s * d[ii]);
        for (std::size_t k = 0; k < n; ++k) {
          h = V(k, ii + 1);
          V(k, ii + 1) = s * V(k, ii) + c * h;
          V(k, ii) = c * V(k, ii) - s * h;
        }
      }
      p = -s * s2 * c3 * el1 * e[l] / dl1;
      e[l] = s * p;
      d[l] = c * p;
      if (std::abs(e[l]) <= eps * tst1) break;
    }
    d[l] += shift_sum;
    e[l] = 0.0;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  EigenSystem out;
  out.eigenvalues.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = d[order[k]];
    std::copy_n(v.begin() + static_cast<std::ptrdiff_t>(order[k] * n), n,
                out.vectors.begin() + static_cast<std::ptrdiff_t>(k * n));
  }
  return out;
}

}  // namespace bathflux::numerics

#endif  // BATHFLUX_NUMERICS_TRIDIAG_EIGH_HPP
