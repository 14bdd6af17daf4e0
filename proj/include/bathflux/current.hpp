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

#ifndef BATHFLUX_CURRENT_HPP
#define BATHFLUX_CURRENT_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bathflux/bath.hpp"
#include "bathflux/chain.hpp"
#include "bathflux/error.hpp"
#include "bathflux/format.hpp"
#include "bathflux/numerics/series.hpp"
#include "bathflux/quantity.hpp"

namespace bathflux {

enum class EvalMode { Full, HighT };
enum class JtiVariant { AsPrinted, DerivativeConsistent };

inline const char* to_string(EvalMode m) { return m == EvalMode::Full ? "full" : "high_t"; }
inline const char* to_string(JtiVariant v) { return v == JtiVariant::AsPrinted ? "printed" : "consistent"; }

struct ModelSpec {
  ChainConfig chain = make_chain(ChainFamily::Pst, 6, 1.0);
  InitialCase initial = InitialCase::TwoSite;
  BathSpectrum bath = BathSpectrum::ohmic(1.0);
  ThermalParams thermal{1.0, 0.01};
  EvalMode mode = EvalMode::Full;
  JtiVariant jti_variant = JtiVariant::DerivativeConsistent;

  void validate() const {
    chain.validate();
    bath.validate();
    thermal.validate();
  }
  double support() const { return static_cast<double>(support_size(initial, chain.n_sites)); }
};

struct CurrentSample {
  double t = 0.0;
  Quantity j_t;
  Quantity j_ti;
  Quantity e_t;
  Quantity e_ti;
};

/// Bath energy and current for one model. Chain eigendata and the
/// Debye-Waller factor are computed once; every method is const.
///
/// Continuum convention: Σ_α |Γ_α|² h(ω_α) ↦ |Γ|² ∫ρ(ω) h(ω) dω.
class CurrentEngine {
 public:
  explicit CurrentEngine(ModelSpec model)
      : model_(std::move(model)), chain_((model_.validate(), model_.chain)),
        dw_(model_.mode == EvalMode::HighT ? Quantity(1.0) : debye_waller(model_.bath, model_.thermal)) {}

  const ModelSpec& model() const { return model_; }
  const ChainPropagator& chain() const { return chain_; }
  const Quantity& debye_waller_factor() const { return dw_; }

  ChainFactors factors(double t) const { return chain_.factors(model_.initial, t); }

  /// ⟨H_B⟩_T. FULL: (2/a)|Γ|²⟨D⟩[COTH_WSIN Im F + W_ONEMCOS Re F]; HIGH_T: (4T/a)|Γ|² SIN Im F.
  Quantity energy_T(double t) const { return energy_T(t, factors(t)); }
  Quantity energy_T(double t, const ChainFactors& cf) const {
    const double a = model_.support();
    const double g2 = model_.thermal.gamma_sq;
    if (model_.mode == EvalMode::HighT) {
      const double pref = 4.0 * model_.thermal.temperature / a * g2;
      return weighted_sum({term(pref * cf.F.imag(), KernelKind::Sin, t)});
    }
    const Quantity bracket =
        weighted_sum({term(cf.F.imag(), KernelKind::CothWSin, t), term(cf.F.real(), KernelKind::WOneMinusCos, t)});
    return thermal_prefactor(2.0 / a * g2, bracket);
  }

  /// ⟨H_B⟩_TI = (1/a)|Γ|²[∫ρω(1 - 2cos ωt) |f11|² + MOMENT1 G].
  Quantity energy_TI(double t) const { return energy_TI(t, factors(t)); }
  Quantity energy_TI(double t, const ChainFactors& cf) const {
    const double pref = model_.thermal.gamma_sq / model_.support();
    return weighted_sum({term(pref * cf.p11, KernelKind::WOneMinusCos, t), term(-pref * cf.p11, KernelKind::WCos, t),
                         term(pref * cf.G, KernelKind::Moment1, t)});
  }

  /// J_T. FULL: (2/a)|Γ|²⟨D⟩[COTH_W2COS Im F + COTH_WSIN dIm F + W2SIN Re F + W_ONEMCOS dRe F].
  /// HIGH_T (ω coth(βω/2) → 2T, Re F terms dropped): (4T/a)|Γ|²[SIN dIm F + WCOS Im F].
  Quantity current_T(double t) const { return current_T(t, factors(t)); }
  Quantity current_T(double t, const ChainFactors& cf) const {
    const double a = model_.support();
    const double g2 = model_.thermal.gamma_sq;
    if (model_.mode == EvalMode::HighT) {
      const double pref = 4.0 * model_.thermal.temperature / a * g2;
      return weighted_sum({term(pref * cf.dF.imag(), KernelKind::Sin, t), term(pref * cf.F.imag(), KernelKind::WCos, t)});
    }
    const Quantity bracket = weighted_sum(
        {term(cf.F.imag(), KernelKind::CothW2Cos, t), term(cf.dF.imag(), KernelKind::CothWSin, t),
         term(cf.F.real(), KernelKind::W2Sin, t), term(cf.dF.real(), KernelKind::WOneMinusCos, t)});
    return thermal_prefactor(2.0 / a * g2, bracket);
  }

  /// J_TI = (1/a)|Γ|²[2 W2SIN |f11|² + c(t) d|f11|²/dt + MOMENT1 dG/dt], with
  /// c = W_ONEMCOS (as printed) or W_ONEMCOS - WCOS (exact derivative of ⟨H_B⟩_TI).
  Quantity current_TI(double t) const { return current_TI(t, factors(t)); }
  Quantity current_TI(double t, const ChainFactors& cf) const {
    const double pref = model_.thermal.gamma_sq / model_.support();
    const double wcos_coef = model_.jti_variant == JtiVariant::DerivativeConsistent ? -pref * cf.dp11 : 0.0;
    return weighted_sum({term(2.0 * pref * cf.p11, KernelKind::W2Sin, t),
                         term(pref * cf.dp11, KernelKind::WOneMinusCos, t), term(wcos_coef, KernelKind::WCos, t),
                         term(pref * cf.dG, KernelKind::Moment1, t)});
  }

  CurrentSample sample(double t) const {
    const ChainFactors cf = factors(t);
    return {t, current_T(t, cf), current_TI(t, cf), energy_T(t, cf), energy_TI(t, cf)};
  }

 private:
  Term term(double coefficient, KernelKind kind, double t) const {
    if (coefficient == 0.0) return {0.0, Quantity(0.0)};
    return {coefficient, kernel(model_.bath, kind, t, model_.thermal.temperature)};
  }

  Quantity thermal_prefactor(double pref, const Quantity& bracket) const {
    if (bracket.is_finite() && bracket.value() == 0.0) return 0.0;
    return pref * (dw_ * bracket);
  }

  ModelSpec model_;
  ChainPropagator chain_;
  Quantity dw_;
};

inline Quantity energy_T(const ModelSpec& m, double t) { return CurrentEngine(m).energy_T(t); }
inline Quantity energy_TI(const ModelSpec& m, double t) { return CurrentEngine(m).energy_TI(t); }
inline Quantity current_T(const ModelSpec& m, double t) { return CurrentEngine(m).current_T(t); }
inline Quantity current_TI(const ModelSpec& m, double t) { return CurrentEngine(m).current_TI(t); }

namespace detail {

inline void require_bath(const ModelSpec& m, SpectrumKind kind, const char* who) {
  if (m.bath.kind != kind) throw InvalidInput(std::string(who) + ": bath must be " + to_string(kind));
}

struct F12Derivative {
  double p12;
  double dp12;
};

inline F12Derivative f12_norm(const CurrentEngine& engine, double t) {
  const ChainFactors two = engine.chain().factors(InitialCase::TwoSite, t);
  return {two.G, two.dG};
}

}  // namespace detail

// Long-time and special-case formulas below are written for the two-site
// initial state (a = 2) and evaluated literally from the chain factors.

/// πT|Γ|² e^{-ω_d t}[dIm F/dt - ω_d Im F].
inline double closed_jt_lorentz_drude(const CurrentEngine& engine, double t) {
  const ModelSpec& m = engine.model();
  detail::require_bath(m, SpectrumKind::LorentzDrude, "closed_jt_lorentz_drude");
  const ChainFactors cf = engine.factors(t);
  const double wd = m.bath.frequency;
  return std::numbers::pi * m.thermal.temperature * m.thermal.gamma_sq * std::exp(-wd * t) *
         (cf.dF.imag() - wd * cf.F.imag());
}

/// (2πT|Γ|²/(ω_c t⁴))[t dIm F/dt - 3 Im F], ω_c t >> 1.
inline double closed_jt_ohmic_longtime(const CurrentEngine& engine, double t) {
  const ModelSpec& m = engine.model();
  detail::require_bath(m, SpectrumKind::Ohmic, "closed_jt_ohmic_longtime");
  if (!(t > 0.0)) throw InvalidInput("closed_jt_ohmic_longtime: t must be positive");
  const ChainFactors cf = engine.factors(t);
  const double wc = m.bath.frequency;
  return 2.0 * std::numbers::pi * m.thermal.temperature * m.thermal.gamma_sq / (wc * std::pow(t, 4)) *
         (t * cf.dF.imag() - 3.0 * cf.F.imag());
}

/// (π|Γ|²/2)[3|f11|²/t⁴ + 6/(ω_c t⁴) d|f11|²/dt + ω_c³ d(|f11|² + |f12|²)/dt].
inline double closed_jti_ohmic_longtime(const CurrentEngine& engine, double t) {
  const ModelSpec& m = engine.model();
  detail::require_bath(m, SpectrumKind::Ohmic, "closed_jti_ohmic_longtime");
  if (!(t > 0.0)) throw InvalidInput("closed_jti_ohmic_longtime: t must be positive");
  const ChainFactors cf = engine.factors(t);
  const auto f12 = detail::f12_norm(engine, t);
  const double wc = m.bath.frequency;
  const double t4 = std::pow(t, 4);
  return 0.5 * std::numbers::pi * m.thermal.gamma_sq *
         (3.0 * cf.p11 / t4 + 6.0 / (wc * t4) * cf.dp11 + wc * wc * wc * (cf.dp11 + f12.dp12));
}

/// 2T|Γ|²{(Ω sin Ωt / t) Im F + ((1 - cos Ωt)/t) dIm F/dt}, t >> 1.
inline double closed_jt_whitenoise(const CurrentEngine& engine, double t) {
  const ModelSpec& m = engine.model();
  detail::require_bath(m, SpectrumKind::WhiteNoise, "closed_jt_whitenoise");
  if (!(t > 0.0)) throw InvalidInput("closed_jt_whitenoise: t must be positive");
  const ChainFactors cf = engine.factors(t);
  const double om = m.bath.frequency;
  return 2.0 * m.thermal.temperature * m.thermal.gamma_sq *
         (om * std::sin(om * t) / t * cf.F.imag() + (1.0 - std::cos(om * t)) / t * cf.dF.imag());
}

/// |Γ|²{(Ω² sin Ωt / t)|f11|² - (Ω sin Ωt / t) d|f11|²/dt + (Ω²/4) d(|f11|² + |f12|²)/dt}, t >> 1.
inline double closed_jti_whitenoise(const CurrentEngine& engine, double t) {
  const ModelSpec& m = engine.model();
  detail::require_bath(m, SpectrumKind::WhiteNoise, "closed_jti_whitenoise");
  if (!(t > 0.0)) throw InvalidInput("closed_jti_whitenoise: t must be positive");
  const ChainFactors cf = engine.factors(t);
  const auto f12 = detail::f12_norm(engine, t);
  const double om = m.bath.frequency;
  const double osc = std::sin(om * t) / t;
  return m.thermal.gamma_sq *
         (om * om * osc * cf.p11 - om * osc * cf.dp11 + 0.25 * om * om * (cf.dp11 + f12.dp12));
}

inline double closed_jt_lorentz_drude(const ModelSpec& m, double t) { return closed_jt_lorentz_drude(CurrentEngine(m), t); }
inline double closed_jt_ohmic_longtime(const ModelSpec& m, double t) { return closed_jt_ohmic_longtime(CurrentEngine(m), t); }
inline double closed_jti_ohmic_longtime(const ModelSpec& m, double t) { return closed_jti_ohmic_longtime(CurrentEngine(m), t); }
inline double closed_jt_whitenoise(const ModelSpec& m, double t) { return closed_jt_whitenoise(CurrentEngine(m), t); }
inline double closed_jti_whitenoise(const ModelSpec& m, double t) { return closed_jti_whitenoise(CurrentEngine(m), t); }

/// J_T of a PST chain under Lorentz-Drude at t = 2nπ/τ: √(N-1) τ π T |Γ|² e^{-2ω_d nπ/τ}.
inline double pst_ld_peak(std::size_t n_sites, int n, double tau, double temperature, double gamma_sq,
                          double omega_d) {
  if (n_sites < 2) throw InvalidInput("pst_ld_peak: need at least 2 sites");
  if (n < 1) throw InvalidInput("pst_ld_peak: n must be >= 1");
  return std::sqrt(static_cast<double>(n_sites) - 1.0) * tau * std::numbers::pi * temperature * gamma_sq *
         std::exp(-2.0 * omega_d * n * std::numbers::pi / tau);
}

/// Oscillating long-time J_TI of a PST chain coupled to an Ohmic bath, unit prefactor:
/// (τ/4)(N-1)[cos2τt c^{2N-6} - (2N-6) s sin2τt c^{2N-8}] - 2τ(N-1) s c^{2N-3}, c = cos τt, s = sin τt.
inline double pst_ohmic_jti_oscillation(std::size_t n_sites, double tau, double t) {
  if (n_sites < 4) throw InvalidInput("pst_ohmic_jti_oscillation: need N >= 4");
  const double n = static_cast<double>(n_sites);
  const int ni = static_cast<int>(n_sites);
  const double x = tau * t;
  const double c = std::cos(x);
  const double s = std::sin(x);
  return 0.25 * tau * (n - 1.0) *
             (std::cos(2.0 * x) * std::pow(c, 2 * ni - 6) - (2.0 * n - 6.0) * s * std::sin(2.0 * x) * std::pow(c, 2 * ni - 8)) -
         2.0 * tau * (n - 1.0) * s * std::pow(c, 2 * ni - 3);
}

/// J_T/J_TI ≈ T tan(τt - π/4) / (2τ ω_c⁴ t³) for a uniform chain in an Ohmic bath.
inline double jt_jti_ratio_asymptotic(const ModelSpec& m, double t) {
  if (m.chain.family != ChainFamily::Uniform) throw InvalidInput("jt_jti_ratio_asymptotic: needs a uniform chain");
  detail::require_bath(m, SpectrumKind::Ohmic, "jt_jti_ratio_asymptotic");
  if (!(t > 0.0)) throw InvalidInput("jt_jti_ratio_asymptotic: t must be positive");
  const double tau = m.chain.tau;
  const double arg = tau * t - 0.25 * std::numbers::pi;
  const double from_pole = std::abs(std::remainder(arg - 0.5 * std::numbers::pi, std::numbers::pi));
  if (from_pole < 0.05) throw PoleProximity("jt_jti_ratio_asymptotic: within 0.05 rad of a tan pole");
  const double wc = m.bath.frequency;
  return m.thermal.temperature * std::tan(arg) / (2.0 * tau * std::pow(wc, 4) * std::pow(t, 3));
}

struct ScanResult {
  std::vector<CurrentSample> samples;
  std::vector<std::pair<std::string, std::string>> metadata;
};

inline std::vector<std::pair<std::string, std::string>> scan_metadata(const ModelSpec& m) {
  auto cutoff = [](const std::optional<double>& c) { return c ? format_double(*c) : std::string("none"); };
  return {{"mode", to_string(m.mode)},
          {"jti_variant", to_string(m.jti_variant)},
          {"uv_cutoff", cutoff(m.bath.uv_cutoff)},
          {"ir_cutoff", cutoff(m.bath.ir_cutoff)}};
}

inline ScanResult scan(const CurrentEngine& engine, std::span<const double> grid) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw InvalidInput("scan: grid must be strictly increasing");
  ScanResult out;
  out.metadata = scan_metadata(engine.model());
  out.samples.reserve(grid.size());
  for (double t : grid) out.samples.push_back(engine.sample(t));
  return out;
}

inline ScanResult scan(const ModelSpec& m, std::span<const double> grid) { return scan(CurrentEngine(m), grid); }

inline std::vector<double> uniform_grid(double t_start, double t_end, std::size_t n_points) {
  if (n_points < 2 || !(t_end > t_start)) throw InvalidInput("uniform_grid: need t_start < t_end and >= 2 points");
  std::vector<double> g(n_points);
  const double h = (t_end - t_start) / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) g[i] = t_start + h * static_cast<double>(i);
  return g;
}

/// max |(J_T + J_TI) - d(E_T + E_TI)/dt| over the interior of a uniform grid.
struct ConsistencyReport {
  bool compared = false;
  double max_residual = 0.0;
  double max_current = 0.0;
  double relative = 0.0;
  std::string note;

  bool passes(double tolerance = 1e-6) const { return compared && relative <= tolerance; }
};

inline ConsistencyReport consistency_check(const CurrentEngine& engine, std::span<const double> grid) {
  ConsistencyReport rep;
  if (grid.size() < 5) throw InvalidInput("consistency_check: need at least 5 grid points");
  std::vector<double> energy(grid.size());
  std::vector<double> current(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const CurrentSample s = engine.sample(grid[i]);
    const Quantity e = s.e_t + s.e_ti;
    const Quantity j = s.j_t + s.j_ti;
    if (e.is_divergent() || j.is_divergent()) {
      rep.note = "divergent component: " + (e.is_divergent() ? e.reason() : j.reason());
      return rep;
    }
    energy[i] = e.value();
    current[i] = j.value();
  }
  const auto de = numerics::finite_difference_derivative(grid, energy);
  for (std::size_t i = 2; i + 2 < grid.size(); ++i) {
    rep.max_residual = std::max(rep.max_residual, std::abs(current[i] - de[i]));
    rep.max_current = std::max(rep.max_current, std::abs(current[i]));
  }
  rep.compared = true;
  rep.relative = rep.max_current > 0.0 ? rep.max_residual / rep.max_current : rep.max_residual;
  rep.note = engine.model().jti_variant == JtiVariant::AsPrinted ? "printed J_TI: mismatch expected" : "";
  return rep;
}

inline ConsistencyReport consistency_check(const ModelSpec& m, std::span<const double> grid) {
  return consistency_check(CurrentEngine(m), grid);
}

}  // namespace bathflux

#endif  // BATHFLUX_CURRENT_HPP
