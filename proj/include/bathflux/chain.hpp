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

#ifndef BATHFLUX_CHAIN_HPP
#define BATHFLUX_CHAIN_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "bathflux/error.hpp"
#include "bathflux/numerics/bessel.hpp"
#include "bathflux/numerics/tridiag_eigh.hpp"

namespace bathflux {

using complex = std::complex<double>;

enum class ChainFamily { Pst, Uniform, Custom };

/// Open chain with nearest-neighbour hopping -tau_i (c_i^dag c_{i+1} + h.c.).
struct ChainConfig {
  std::size_t n_sites = 2;
  std::vector<double> couplings;
  ChainFamily family = ChainFamily::Custom;
  /// Family energy scale; meaningless for Custom.
  double tau = 0.0;

  void validate() const {
    if (n_sites < 2) throw InvalidInput("chain: need at least 2 sites");
    if (couplings.size() + 1 != n_sites) throw InvalidInput("chain: need n_sites-1 couplings");
    for (double c : couplings)
      if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInput("chain: couplings must be positive and finite");
  }
};

/// PST: tau_k = tau sqrt(k (N-k)), which gives f11 = cos^{N-1}(tau t).
/// Uniform: every tau_k = tau/2, which gives the band E_m = -tau cos(q_m).
inline ChainConfig make_chain(ChainFamily family, std::size_t n_sites, double tau) {
  if (n_sites < 2) throw InvalidInput("make_chain: need at least 2 sites");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidInput("make_chain: tau must be positive");
  if (family == ChainFamily::Custom) throw InvalidInput("make_chain: custom chains take explicit couplings");
  ChainConfig c;
  c.n_sites = n_sites;
  c.family = family;
  c.tau = tau;
  c.couplings.resize(n_sites - 1);
  const double n = static_cast<double>(n_sites);
  for (std::size_t k = 1; k < n_sites; ++k) {
    c.couplings[k - 1] = family == ChainFamily::Pst ? tau * std::sqrt(static_cast<double>(k) * (n - k)) : 0.5 * tau;
  }
  return c;
}

inline ChainConfig make_custom_chain(std::vector<double> couplings) {
  ChainConfig c;
  c.n_sites = couplings.size() + 1;
  c.couplings = std::move(couplings);
  c.family = ChainFamily::Custom;
  c.validate();
  return c;
}

/// Initial single-excitation state: equal superposition over the first a sites.
enum class InitialCase { Site1, UniformAll, TwoSite };

inline std::size_t support_size(InitialCase c, std::size_t n_sites) {
  switch (c) {
    case InitialCase::Site1: return 1;
    case InitialCase::UniformAll: return n_sites;
    case InitialCase::TwoSite: return 2;
  }
  return 1;
}

/// f_{1,l}(t) = <l| exp(-i H t) |1> and its time derivative, l = 1..N (stored 0-based).
struct AmplitudeRow {
  double t = 0.0;
  std::vector<complex> f;
  std::vector<complex> df;
};

/// Chain-side time functions entering the bath energies and currents.
struct ChainFactors {
  complex F{};
  complex dF{};
  double G = 0.0;
  double dG = 0.0;
  double p11 = 0.0;
  double dp11 = 0.0;
};

/// Eigendecomposition of one chain, reused for every time point.
class ChainPropagator {
 public:
  explicit ChainPropagator(ChainConfig config) : config_(std::move(config)) {
    config_.validate();
    std::vector<double> diag(config_.n_sites, 0.0);
    std::vector<double> off(config_.couplings.size());
    for (std::size_t i = 0; i < off.size(); ++i) off[i] = -config_.couplings[i];
    eig_ = numerics::tridiag_eigh(diag, off);
    tail_sums_.assign(config_.n_sites, 0.0);
    for (std::size_t m = 0; m < config_.n_sites; ++m)
      for (std::size_t l = 1; l < config_.n_sites; ++l) tail_sums_[m] += eig_.vector(l, m);
  }

  const ChainConfig& config() const { return config_; }
  const numerics::EigenSystem& eigensystem() const { return eig_; }

  AmplitudeRow amplitudes(double t, std::size_t from_site = 1) const {
    if (!std::isfinite(t)) throw InvalidInput("amplitudes: t must be finite");
    const std::size_t n = config_.n_sites;
    if (from_site < 1 || from_site > n) throw InvalidInput("amplitudes: site out of range");
    AmplitudeRow row;
    row.t = t;
    row.f.assign(n, complex{});
    row.df.assign(n, complex{});
    for (std::size_t m = 0; m < n; ++m) {
      const double e = eig_.eigenvalues[m];
      const complex phase = std::polar(1.0, -e * t) * eig_.vector(from_site - 1, m);
      const complex dphase = complex(0.0, -e) * phase;
      for (std::size_t l = 0; l < n; ++l) {
        const double vl = eig_.vector(l, m);
        row.f[l] += phase * vl;
        row.df[l] += dphase * vl;
      }
    }
    return row;
  }

  /// Derivatives come from the spectral weights -iE_m, never from differencing.
  ChainFactors factors(InitialCase initial, double t) const {
    if (!std::isfinite(t)) throw InvalidInput("factors: t must be finite");
    const std::size_t n = config_.n_sites;
    complex f11{}, d11{}, s{}, ds{};
    for (std::size_t m = 0; m < n; ++m) {
      const double e = eig_.eigenvalues[m];
      const complex phase = std::polar(1.0, -e * t) * eig_.vector(0, m);
      const complex dphase = complex(0.0, -e) * phase;
      f11 += phase * eig_.vector(0, m);
      d11 += dphase * eig_.vector(0, m);
      double w = 0.0;
      if (initial == InitialCase::TwoSite) w = eig_.vector(1, m);
      if (initial == InitialCase::UniformAll) w = tail_sums_[m];
      s += phase * w;
      ds += dphase * w;
    }
    ChainFactors out;
    out.p11 = std::norm(f11);
    out.dp11 = 2.0 * std::real(std::conj(f11) * d11);
    if (initial == InitialCase::Site1) return out;
    out.F = std::conj(f11) * s;
    out.dF = std::conj(d11) * s + std::conj(f11) * ds;
    out.G = std::norm(s);
    out.dG = 2.0 * std::real(std::conj(s) * ds);
    return out;
  }

 private:
  ChainConfig config_;
  numerics::EigenSystem eig_;
  std::vector<double> tail_sums_;  // Σ_{l>=2} v_l for each eigenvector
};

inline AmplitudeRow amplitudes(const ChainConfig& config, double t) { return ChainPropagator(config).amplitudes(t); }

inline ChainFactors chain_factors(const ChainConfig& config, InitialCase initial, double t) {
  return ChainPropagator(config).factors(initial, t);
}

struct PstAmplitudes {
  complex f11;
  complex f12;
  complex f1n;
};

/// Closed forms for PST couplings: f11 = cos^{N-1}, f12 = i sqrt(N-1) sin cos^{N-2},
/// f1N = e^{i pi (N-1)/2} sin^{N-1}, all at angle tau t.
inline PstAmplitudes pst_amplitudes_closed(std::size_t n_sites, double tau, double t) {
  if (n_sites < 2) throw InvalidInput("pst_amplitudes_closed: need at least 2 sites");
  const double c = std::cos(tau * t);
  const double s = std::sin(tau * t);
  const int n = static_cast<int>(n_sites);
  PstAmplitudes a;
  a.f11 = std::pow(c, n - 1);
  a.f12 = complex(0.0, std::sqrt(n - 1.0) * s * std::pow(c, n - 2));
  static constexpr complex quarter_turns[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  a.f1n = quarter_turns[(n - 1) % 4] * std::pow(s, n - 1);
  return a;
}

/// Sine-mode sum for uniform couplings tau/2:
/// f_{j,l} = 2/(N+1) sum_m sin(q_m j) sin(q_m l) e^{-i E_m t}, q_m = pi m/(N+1), E_m = -tau cos q_m.
inline complex uniform_amplitudes_closed(std::size_t n_sites, double tau, double t, std::size_t j, std::size_t l) {
  if (n_sites < 1 || j < 1 || l < 1 || j > n_sites || l > n_sites)
    throw InvalidInput("uniform_amplitudes_closed: index out of range");
  const double np1 = static_cast<double>(n_sites) + 1.0;
  complex sum{};
  for (std::size_t m = 1; m <= n_sites; ++m) {
    const double q = std::numbers::pi * static_cast<double>(m) / np1;
    const double e = -tau * std::cos(q);
    sum += std::sin(q * static_cast<double>(j)) * std::sin(q * static_cast<double>(l)) * std::polar(1.0, -e * t);
  }
  return 2.0 / np1 * sum;
}

/// Semi-infinite uniform chain: f_{1,l} = i^{l-1} (2l/(tau t)) J_l(tau t); δ_{1,l} at t = 0.
inline complex infinite_amplitudes(double tau, double t, std::size_t l) {
  if (l < 1) throw InvalidInput("infinite_amplitudes: l must be >= 1");
  const double x = tau * t;
  if (x == 0.0) return l == 1 ? complex(1.0, 0.0) : complex{};
  const double mag = 2.0 * static_cast<double>(l) / x * numerics::bessel_j(static_cast<int>(l), x);
  static constexpr complex phases[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  return phases[(l - 1) % 4] * mag;
}

}  // namespace bathflux

#endif  // BATHFLUX_CHAIN_HPP
