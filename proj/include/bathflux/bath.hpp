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

#ifndef BATHFLUX_BATH_HPP
#define BATHFLUX_BATH_HPP

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "bathflux/error.hpp"
#include "bathflux/numerics/quadrature.hpp"
#include "bathflux/quantity.hpp"

namespace bathflux {

enum class SpectrumKind { LorentzDrude, Ohmic, WhiteNoise };

/// Bath spectral density ρ(ω):
///   Lorentz-Drude  ω/(ω_d² + ω²)
///   Ohmic          (π/2) ω e^{-ω/ω_c}
///   white noise    1 on (0, Ω]
/// Optional hard cutoffs zero ρ above uv_cutoff and below ir_cutoff.
struct BathSpectrum {
  SpectrumKind kind = SpectrumKind::Ohmic;
  double frequency = 1.0;
  std::optional<double> uv_cutoff;
  std::optional<double> ir_cutoff;

  static BathSpectrum lorentz_drude(double omega_d) { return make(SpectrumKind::LorentzDrude, omega_d); }
  static BathSpectrum ohmic(double omega_c) { return make(SpectrumKind::Ohmic, omega_c); }
  static BathSpectrum white_noise(double omega_max) { return make(SpectrumKind::WhiteNoise, omega_max); }

  bool has_cutoff() const { return uv_cutoff.has_value() || ir_cutoff.has_value(); }
  double support_begin() const { return ir_cutoff.value_or(0.0); }
  double support_end() const {
    double end = std::numeric_limits<double>::infinity();
    if (kind == SpectrumKind::WhiteNoise) end = frequency;
    if (uv_cutoff) end = std::min(end, *uv_cutoff);
    return end;
  }

  void validate() const {
    if (!(frequency > 0.0) || !std::isfinite(frequency)) throw InvalidInput("bath: frequency must be positive");
    if (uv_cutoff && !(*uv_cutoff > 0.0)) throw InvalidInput("bath: uv_cutoff must be positive");
    if (ir_cutoff && !(*ir_cutoff > 0.0)) throw InvalidInput("bath: ir_cutoff must be positive");
    if (!(support_end() > support_begin())) throw InvalidInput("bath: cutoffs leave an empty support");
  }

 private:
  static BathSpectrum make(SpectrumKind kind, double w) {
    BathSpectrum s;
    s.kind = kind;
    s.frequency = w;
    s.validate();
    return s;
  }
};

inline const char* to_string(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::LorentzDrude: return "lorentz_drude";
    case SpectrumKind::Ohmic: return "ohmic";
    case SpectrumKind::WhiteNoise: return "white_noise";
  }
  return "?";
}

/// Frequency integrals ∫ρ(ω)·h(ω,t) dω used by the energies and currents.
enum class KernelKind {
  Sin,           // ∫ρ sin ωt
  WCos,          // ∫ρ ω cos ωt
  W2Sin,         // ∫ρ ω² sin ωt
  WOneMinusCos,  // ∫ρ ω (1 - cos ωt)
  CothWSin,      // ∫ρ ω coth(βω/2) sin ωt
  CothW2Cos,     // ∫ρ ω² coth(βω/2) cos ωt
  Moment1,       // ∫ρ ω
};

inline constexpr std::array<KernelKind, 7> kAllKernels = {
    KernelKind::Sin,      KernelKind::WCos,      KernelKind::W2Sin,  KernelKind::WOneMinusCos,
    KernelKind::CothWSin, KernelKind::CothW2Cos, KernelKind::Moment1};

inline const char* to_string(KernelKind k) {
  switch (k) {
    case KernelKind::Sin: return "SIN";
    case KernelKind::WCos: return "WCOS";
    case KernelKind::W2Sin: return "W2SIN";
    case KernelKind::WOneMinusCos: return "W_ONEMCOS";
    case KernelKind::CothWSin: return "COTH_WSIN";
    case KernelKind::CothW2Cos: return "COTH_W2COS";
    case KernelKind::Moment1: return "MOMENT1";
  }
  return "?";
}

inline bool is_thermal(KernelKind k) { return k == KernelKind::CothWSin || k == KernelKind::CothW2Cos; }

enum class ConvergenceClass { Finite, Conditional, Divergent };

inline const char* to_string(ConvergenceClass c) {
  switch (c) {
    case ConvergenceClass::Finite: return "FINITE";
    case ConvergenceClass::Conditional: return "CONDITIONAL";
    case ConvergenceClass::Divergent: return "DIVERGENT";
  }
  return "?";
}

/// Temperature T (k_B = 1) and overall coupling magnitude |Γ|².
struct ThermalParams {
  double temperature = 1.0;
  double gamma_sq = 0.0;

  double beta() const { return 1.0 / temperature; }
  void validate() const {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) throw InvalidInput("thermal: T must be positive");
    if (!(gamma_sq >= 0.0) || !std::isfinite(gamma_sq)) throw InvalidInput("thermal: gamma_sq must be >= 0");
  }
};

inline double spectral_density(const BathSpectrum& spec, double w) {
  if (w < 0.0 || std::isnan(w)) throw InvalidInput("spectral_density: omega must be >= 0");
  if (spec.ir_cutoff && w < *spec.ir_cutoff) return 0.0;
  if (spec.uv_cutoff && w > *spec.uv_cutoff) return 0.0;
  const double p = spec.frequency;
  switch (spec.kind) {
    case SpectrumKind::LorentzDrude: return w / (p * p + w * w);
    case SpectrumKind::Ohmic: return 0.5 * std::numbers::pi * w * std::exp(-w / p);
    case SpectrumKind::WhiteNoise: return (w > 0.0 && w <= p) ? 1.0 : 0.0;
  }
  return 0.0;
}

/// coth(βω/2), switching to the Laurent form 2/(βω) + βω/6 when βω < 1e-3.
inline double coth_half(double beta, double w) {
  const double x = 0.5 * beta * w;
  if (x < 5e-4) return 1.0 / x + x / 3.0;
  if (x > 20.0) return 1.0 + 2.0 * std::exp(-2.0 * x);
  return 1.0 / std::tanh(x);
}

/// Fixed per (spectrum, kind) table. Cutoffs move every cell to FINITE.
inline ConvergenceClass convergence_class(const BathSpectrum& spec, KernelKind kind) {
  if (spec.kind != SpectrumKind::LorentzDrude || spec.uv_cutoff) return ConvergenceClass::Finite;
  // Lorentz-Drude: ρ ω → 1 at large ω.
  switch (kind) {
    case KernelKind::Sin: return ConvergenceClass::Finite;
    case KernelKind::WCos:
    case KernelKind::CothWSin: return ConvergenceClass::Conditional;
    case KernelKind::W2Sin:
    case KernelKind::WOneMinusCos:
    case KernelKind::CothW2Cos:
    case KernelKind::Moment1: return ConvergenceClass::Divergent;
  }
  return ConvergenceClass::Divergent;
}

/// ∫ρ coth(βω/2) dω: logarithmic at large ω for Lorentz-Drude, at small ω for white noise.
inline ConvergenceClass debye_waller_class(const BathSpectrum& spec) {
  switch (spec.kind) {
    case SpectrumKind::LorentzDrude:
      return spec.uv_cutoff ? ConvergenceClass::Finite : ConvergenceClass::Divergent;
    case SpectrumKind::WhiteNoise:
      return spec.ir_cutoff ? ConvergenceClass::Finite : ConvergenceClass::Divergent;
    case SpectrumKind::Ohmic: return ConvergenceClass::Finite;
  }
  return ConvergenceClass::Divergent;
}

namespace detail {

inline numerics::Weight kernel_weight(const BathSpectrum& spec, KernelKind kind, double beta) {
  switch (kind) {
    case KernelKind::Sin: return [spec](double w) { return spectral_density(spec, w); };
    case KernelKind::WCos:
    case KernelKind::WOneMinusCos:
    case KernelKind::Moment1: return [spec](double w) { return spectral_density(spec, w) * w; };
    case KernelKind::W2Sin: return [spec](double w) { return spectral_density(spec, w) * w * w; };
    case KernelKind::CothWSin:
      return [spec, beta](double w) { return spectral_density(spec, w) * w * coth_half(beta, w); };
    case KernelKind::CothW2Cos:
      return [spec, beta](double w) { return spectral_density(spec, w) * w * w * coth_half(beta, w); };
  }
  return {};
}

inline numerics::Trig kernel_trig(KernelKind kind) {
  switch (kind) {
    case KernelKind::Sin:
    case KernelKind::W2Sin:
    case KernelKind::CothWSin: return numerics::Trig::Sin;
    default: return numerics::Trig::Cos;
  }
}

inline double quadrature_scale(const BathSpectrum& spec, KernelKind kind, double temperature) {
  double scale = spec.frequency;
  if (spec.ir_cutoff) scale = std::min(scale, 4.0 * *spec.ir_cutoff);
  if (is_thermal(kind)) scale = std::min(scale, 2.0 * temperature);
  return scale;
}

// Δ-free closed forms over (0, Ω] for white noise: ∫ω^n sin ωt or ∫ω^n cos ωt.
// White-noise moments over (0, Ω]: ∫ωⁿ sin ωt or ∫ωⁿ cos ωt.
inline double wn_moment(int n, numerics::Trig trig, double omega, double t) {
  const double x = omega * t;
  if (x < 2.0) {
    double sum = 0.0;
    double fact = 1.0;  // (2k+1)! or (2k)!
    double tpow = trig == numerics::Trig::Sin ? t : 1.0;
    double wpow = std::pow(omega, n + (trig == numerics::Trig::Sin ? 2 : 1));
    const int off = trig == numerics::Trig::Sin ? 1 : 0;
    for (int k = 0; k < 40; ++k) {
      if (k > 0) fact *= (2.0 * k + off - 1.0) * (2.0 * k + off);
      const double power = n + 2.0 * k + off + 1.0;
      const double term = (k % 2 == 0 ? 1.0 : -1.0) * tpow * wpow / (fact * power);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
      tpow *= t * t;
      wpow *= omega * omega;
    }
    return sum;
  }
  const double c = std::cos(x);
  const double s = std::sin(x);
  if (trig == numerics::Trig::Sin) {
    if (n == 0) return (1.0 - c) / t;
    if (n == 2) return -omega * omega * c / t + 2.0 * omega * s / (t * t) + 2.0 * (c - 1.0) / (t * t * t);
  } else if (n == 1) {
    return omega * s / t + (c - 1.0) / (t * t);
  }
  throw InvalidInput("wn_moment: unsupported moment");
}

// ∫ω(1 - cos ωt) over (0, Ω]; series avoids the Ω²/2 - WCOS cancellation at small t.
inline double wn_one_minus_cos(double omega, double t) {
  const double x = omega * t;
  if (x >= 2.0) return 0.5 * omega * omega - wn_moment(1, numerics::Trig::Cos, omega, t);
  double sum = 0.0;
  double term_base = omega * omega;  // Ω^{2k+2} t^{2k}
  double fact = 1.0;
  for (int k = 1; k < 40; ++k) {
    fact *= (2.0 * k - 1.0) * (2.0 * k);
    term_base *= x * x;
    const double term = (k % 2 == 1 ? 1.0 : -1.0) * term_base / (fact * (2.0 * k + 2.0));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

// Ohmic moments Φ_n(t) = ∫(π/2) ωⁿ e^{-ω/ω_c} e^{iωt} dω = (π/2) n!/(1/ω_c - i t)^{n+1}.
inline std::complex<double> ohmic_phi(int n, double omega_c, double t) {
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= k;
  const std::complex<double> z(1.0 / omega_c, -t);
  return 0.5 * std::numbers::pi * fact / std::pow(z, n + 1);
}

inline std::optional<double> closed_kernel(const BathSpectrum& spec, KernelKind kind, double t) {
  if (spec.has_cutoff() || is_thermal(kind)) return std::nullopt;
  const double p = spec.frequency;
  switch (spec.kind) {
    case SpectrumKind::LorentzDrude:
      if (kind == KernelKind::Sin) return 0.5 * std::numbers::pi * std::exp(-p * t);
      if (kind == KernelKind::WCos && t > 0.0) return -0.5 * std::numbers::pi * p * std::exp(-p * t);
      return std::nullopt;
    case SpectrumKind::Ohmic:
      switch (kind) {
        case KernelKind::Sin: return ohmic_phi(1, p, t).imag();
        case KernelKind::WCos: return ohmic_phi(2, p, t).real();
        case KernelKind::W2Sin: return ohmic_phi(3, p, t).imag();
        case KernelKind::Moment1: return std::numbers::pi * p * p * p;
        case KernelKind::WOneMinusCos: {
          // Re[Φ2(0) - Φ2(t)] written to keep accuracy at small t.
          const double a = 1.0 / p;
          const std::complex<double> z(a, -t);
          const std::complex<double> num = std::complex<double>(0.0, -t) * (z * z + z * a + a * a);
          return (std::numbers::pi * num / (a * a * a * z * z * z)).real();
        }
        default: return std::nullopt;
      }
    case SpectrumKind::WhiteNoise:
      switch (kind) {
        case KernelKind::Sin: return wn_moment(0, numerics::Trig::Sin, p, t);
        case KernelKind::WCos: return t == 0.0 ? 0.5 * p * p : wn_moment(1, numerics::Trig::Cos, p, t);
        case KernelKind::W2Sin: return wn_moment(2, numerics::Trig::Sin, p, t);
        case KernelKind::WOneMinusCos: return wn_one_minus_cos(p, t);
        case KernelKind::Moment1: return 0.5 * p * p;
        default: return std::nullopt;
      }
  }
  return std::nullopt;
}

inline void check_kernel_args(KernelKind kind, double t, double temperature) {
  if (t < 0.0 || !std::isfinite(t)) throw InvalidInput("kernel: t must be finite and >= 0");
  if (is_thermal(kind) && !(temperature > 0.0)) throw InvalidInput("kernel: thermal kernel needs T > 0");
}

}  // namespace detail

/// Numerical route for any non-divergent cell, independent of the closed forms.
inline numerics::IntegralEstimate kernel_quadrature(const BathSpectrum& spec, KernelKind kind, double t,
                                                    double temperature = 0.0) {
  spec.validate();
  detail::check_kernel_args(kind, t, temperature);
  if (convergence_class(spec, kind) == ConvergenceClass::Divergent)
    throw InvalidInput(std::string("kernel_quadrature: ") + to_string(kind) + " diverges for this spectrum");
  const double beta = is_thermal(kind) ? 1.0 / temperature : 0.0;
  const auto weight = detail::kernel_weight(spec, kind, beta);
  const double scale = detail::quadrature_scale(spec, kind, temperature);
  const double lo = spec.support_begin();
  const double hi = spec.support_end();

  auto plain = [&] { return numerics::integrate(weight, lo, hi, scale); };
  if (kind == KernelKind::Moment1) return {plain(), 0.0};

  const auto trig = detail::kernel_trig(kind);
  if (t == 0.0) {
    if (trig == numerics::Trig::Sin || kind == KernelKind::WOneMinusCos) return {0.0, 0.0};
    if (!std::isfinite(hi) && convergence_class(spec, kind) != ConvergenceClass::Finite)
      throw InvalidInput("kernel_quadrature: conditionally convergent kernel is infinite at t = 0");
    return {plain(), 0.0};
  }

  numerics::OscillatoryOptions opt;
  opt.support_begin = lo;
  opt.support_end = hi;
  opt.scale = scale;
  std::vector<double> schedule;
  // Algebraic tails need the Abel regulator; exponential and compact ones do not.
  if (!std::isfinite(hi) && spec.kind == SpectrumKind::LorentzDrude)
    schedule = {1e-2 * spec.frequency, 1e-3 * spec.frequency, 1e-4 * spec.frequency};
  auto est = numerics::oscillatory_integral(weight, trig, t, schedule, opt);
  if (kind == KernelKind::WOneMinusCos) est.value = plain() - est.value;
  return est;
}

/// Kernel value: closed form when one exists, regulated quadrature otherwise,
/// Divergent when the cell has no finite value.
inline Quantity kernel(const BathSpectrum& spec, KernelKind kind, double t, double temperature = 0.0) {
  spec.validate();
  detail::check_kernel_args(kind, t, temperature);
  const auto trig = detail::kernel_trig(kind);
  if (t == 0.0 && kind != KernelKind::Moment1 &&
      (trig == numerics::Trig::Sin || kind == KernelKind::WOneMinusCos))
    return 0.0;
  const auto cls = convergence_class(spec, kind);
  if (cls == ConvergenceClass::Divergent) return Quantity::divergent(to_string(kind));
  if (cls == ConvergenceClass::Conditional && t == 0.0) return Quantity::divergent(to_string(kind));
  if (auto closed = detail::closed_kernel(spec, kind, t)) return *closed;
  try {
    return kernel_quadrature(spec, kind, t, temperature).value;
  } catch (const NonConvergent& e) {
    throw NumericalError(std::string("kernel ") + to_string(kind) + ": " + e.what());
  }
}

/// ⟨D(Γ)⟩_eq = exp(-½ |Γ|² ∫ρ coth(βω/2) dω).
inline Quantity debye_waller(const BathSpectrum& spec, const ThermalParams& thermal) {
  spec.validate();
  thermal.validate();
  if (thermal.gamma_sq == 0.0) return 1.0;
  if (debye_waller_class(spec) == ConvergenceClass::Divergent) return Quantity::divergent("DEBYE_WALLER");
  const double beta = thermal.beta();
  auto integrand = [&](double w) { return spectral_density(spec, w) * coth_half(beta, w); };
  const double scale = std::min({spec.frequency, 2.0 * thermal.temperature,
                                 spec.ir_cutoff ? 4.0 * *spec.ir_cutoff : spec.frequency});
  const double exponent = numerics::integrate(integrand, spec.support_begin(), spec.support_end(), scale);
  return std::exp(-0.5 * thermal.gamma_sq * exponent);
}

/// Classifies a cell from unregulated panel integrals: compares one half-period
/// panel near 100·scale with one near 1000·scale (decay, bounded, growth).
inline ConvergenceClass empirical_convergence_class(const BathSpectrum& spec, KernelKind kind, double t,
                                                    double temperature = 1.0) {
  spec.validate();
  if (std::isfinite(spec.support_end())) return ConvergenceClass::Finite;
  const double beta = 1.0 / temperature;
  const auto weight = detail::kernel_weight(spec, kind, beta);
  const double scale = spec.frequency;
  auto panel = [&](double near) -> double {
    if (kind == KernelKind::Moment1 || kind == KernelKind::WOneMinusCos)
      return numerics::integrate(weight, near, 2.0 * near, scale);
    const double hp = std::numbers::pi / t;
    const double phase = detail::kernel_trig(kind) == numerics::Trig::Sin ? 0.0 : 0.5;
    const double a = (std::floor(near / hp - phase) + 1.0 + phase) * hp;
    const auto trig = detail::kernel_trig(kind);
    auto f = [&](double w) { return weight(w) * (trig == numerics::Trig::Sin ? std::sin(w * t) : std::cos(w * t)); };
    return numerics::detail::resolved_gauss(f, a, a + hp, scale);
  };
  const double near = std::abs(panel(100.0 * scale));
  const double far = std::abs(panel(1000.0 * scale));
  if (near == 0.0) return ConvergenceClass::Finite;
  const double ratio = far / near;
  if (ratio < 0.5) return ConvergenceClass::Finite;
  if (ratio <= 2.0) return ConvergenceClass::Conditional;
  return ConvergenceClass::Divergent;
}

}  // namespace bathflux

#endif  // BATHFLUX_BATH_HPP
