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

#ifndef BATHFLUX_VALIDATE_HPP
#define BATHFLUX_VALIDATE_HPP

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bathflux/current.hpp"
#include "bathflux/format.hpp"
#include "bathflux/numerics/series.hpp"

namespace bathflux {

enum class ValidationLevel { Quick, Full };

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

struct Check {
  std::string name;
  std::function<bool(std::string&, bool full)> run;
};

inline std::string sci(double v) { return format_double(v); }

inline bool check_closed_amplitudes(std::string& detail, bool full) {
  const int points = full ? 200 : 60;
  double worst = 0.0;
  for (std::size_t n = 2; n <= 12; ++n) {
    const ChainPropagator pst(make_chain(ChainFamily::Pst, n, 1.0));
    const ChainPropagator uni(make_chain(ChainFamily::Uniform, n, 1.0));
    for (int i = 0; i < points; ++i) {
      const double t = 4.0 * std::numbers::pi * i / (points - 1);
      const auto rp = pst.amplitudes(t);
      const auto c = pst_amplitudes_closed(n, 1.0, t);
      worst = std::max({worst, std::abs(rp.f[0] - c.f11), std::abs(rp.f[1] - c.f12), std::abs(rp.f[n - 1] - c.f1n)});
      const auto ru = uni.amplitudes(t);
      for (std::size_t l = 1; l <= n; ++l)
        worst = std::max(worst, std::abs(ru.f[l - 1] - uniform_amplitudes_closed(n, 1.0, t, 1, l)));
    }
  }
  detail = "max abs error " + sci(worst);
  return worst <= 1e-10;
}

inline bool check_unitarity(std::string& detail, bool full) {
  const int points = full ? 200 : 60;
  double worst = 0.0;
  for (auto fam : {ChainFamily::Pst, ChainFamily::Uniform})
    for (std::size_t n = 2; n <= 12; ++n) {
      const ChainPropagator p(make_chain(fam, n, 1.0));
      for (int i = 0; i < points; ++i) {
        const auto row = p.amplitudes(4.0 * std::numbers::pi * i / (points - 1));
        double s = 0.0;
        for (const auto& f : row.f) s += std::norm(f);
        worst = std::max(worst, std::abs(s - 1.0));
      }
    }
  detail = "max |sum - 1| " + sci(worst);
  return worst <= 1e-12;
}

inline bool check_infinite_chain(std::string& detail, bool full) {
  const ChainPropagator p(make_chain(ChainFamily::Uniform, 400, 1.0));
  const int points = full ? 200 : 50;
  double worst = 0.0;
  for (int i = 0; i <= points; ++i) {
    const double t = 100.0 * i / points;
    const auto row = p.amplitudes(t);
    for (std::size_t l = 1; l <= 6; ++l) worst = std::max(worst, std::abs(row.f[l - 1] - infinite_amplitudes(1.0, t, l)));
  }
  detail = "max abs error " + sci(worst);
  return worst <= 1e-6;
}

// Combined tolerance max(1e-6 |value|, 1e-14): the oscillatory sum has an
// absolute roundoff floor, which exponentially small kernels reach.
inline bool check_kernel_route(const BathSpectrum& spec, std::string& detail, bool full) {
  const int points = full ? 20 : 8;
  double worst = 0.0;
  for (auto k : kAllKernels) {
    if (is_thermal(k) || convergence_class(spec, k) != ConvergenceClass::Finite) continue;
    for (int i = 0; i < points; ++i) {
      const double t = 0.1 * std::pow(500.0, static_cast<double>(i) / (points - 1)) / spec.frequency;
      const double closed = kernel(spec, k, t).value();
      const double quad = kernel_quadrature(spec, k, t).value;
      worst = std::max(worst, std::abs(quad - closed) / std::max(1e-6 * std::abs(closed), 1e-14));
    }
  }
  detail = "max error / tolerance " + sci(worst);
  return worst <= 1.0;
}

inline bool check_divergence_table(std::string& detail, bool) {
  const auto ld = BathSpectrum::lorentz_drude(1.0);
  bool ok = kernel(ld, KernelKind::Moment1, 1.0).is_divergent() && kernel(ld, KernelKind::W2Sin, 1.0).is_divergent() &&
            debye_waller(BathSpectrum::white_noise(1.0), {1.0, 0.1}).is_divergent();
  int mismatches = 0;
  for (auto k : kAllKernels)
    if (empirical_convergence_class(ld, k, 1.0) != convergence_class(ld, k)) ++mismatches;
  detail = std::to_string(mismatches) + " empirical/table mismatches";
  return ok && mismatches == 0;
}

inline bool check_consistency(const ModelSpec& m, std::string& detail, bool full) {
  const auto rep = consistency_check(m, uniform_grid(0.5, full ? 12.5 : 4.5, full ? 12001 : 4001));
  detail = "relative residual " + sci(rep.relative);
  return rep.passes();
}

inline ModelSpec validation_model(ChainFamily fam, std::size_t n, InitialCase ic, BathSpectrum bath, EvalMode mode) {
  ModelSpec m;
  m.chain = make_chain(fam, n, 1.0);
  m.initial = ic;
  m.bath = bath;
  m.mode = mode;
  return m;
}

inline bool check_site1_nullity(std::string& detail, bool) {
  double worst = 0.0;
  for (const auto& bath : {BathSpectrum::lorentz_drude(1.0), BathSpectrum::ohmic(1.0), BathSpectrum::white_noise(1.0)}) {
    const CurrentEngine e(validation_model(ChainFamily::Pst, 6, InitialCase::Site1, bath, EvalMode::HighT));
    for (double t = 0.0; t < 20.0; t += 0.25) worst = std::max(worst, std::abs(e.current_T(t).value()));
  }
  detail = "max |J_T| " + sci(worst);
  return worst == 0.0;
}

inline bool check_pst_peaks(std::string& detail, bool) {
  double worst = 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const std::vector<std::size_t> sizes{5, 10, 20, 40, 80};
  for (std::size_t n : sizes) {
    ModelSpec m = validation_model(ChainFamily::Pst, n, InitialCase::TwoSite, BathSpectrum::lorentz_drude(0.5),
                                   EvalMode::HighT);
    const double generic = current_T(m, 2.0 * std::numbers::pi).value();
    const double closed = pst_ld_peak(n, 1, 1.0, m.thermal.temperature, m.thermal.gamma_sq, 0.5);
    worst = std::max(worst, std::abs(generic / closed - 1.0));
    const double x = std::log(n - 1.0), y = std::log(generic);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(sizes.size());
  const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  detail = "slope " + sci(slope) + ", max rel " + sci(worst);
  return worst <= 1e-8 && std::abs(slope - 0.5) <= 0.01;
}

inline numerics::FitResult envelope_fit(const CurrentEngine& e, bool thermal, double t0, double t1, std::size_t n,
                                        std::pair<double, double> window, bool exponential, double min_sep) {
  const auto grid = uniform_grid(t0, t1, n);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    v[i] = (thermal ? e.current_T(grid[i]) : e.current_TI(grid[i])).value();
  const auto env = numerics::peak_envelope(grid, v, min_sep);
  return exponential ? numerics::exponential_fit(env, window) : numerics::power_law_fit(env, window);
}

inline bool check_ld_rate(std::string& detail, bool full) {
  const double wd = 0.1;
  const CurrentEngine e(validation_model(ChainFamily::Pst, 6, InitialCase::TwoSite, BathSpectrum::lorentz_drude(wd),
                                         EvalMode::HighT));
  const auto fit = envelope_fit(e, true, 15.0, 210.0, full ? 200001 : 50001, {20.0, 200.0}, true, 0.5 * std::numbers::pi);
  const double rate = -fit.exponent / wd;
  detail = "rate/omega_d " + sci(rate);
  return std::abs(rate - 1.0) <= 0.02;
}

inline bool check_ohmic_exponents(std::string& detail, bool full) {
  const CurrentEngine e(validation_model(ChainFamily::Uniform, 400, InitialCase::TwoSite, BathSpectrum::ohmic(1.0),
                                         EvalMode::HighT));
  const std::size_t n = full ? 40001 : 12001;
  const auto jt = envelope_fit(e, true, 40.0, 520.0, n, {50.0, 500.0}, false, 0.0);
  const auto jti = envelope_fit(e, false, 40.0, 520.0, n, {50.0, 500.0}, false, 0.0);
  detail = "J_T " + sci(jt.exponent) + ", J_TI " + sci(jti.exponent);
  return std::abs(jt.exponent + 6.0) <= 0.3 && std::abs(jti.exponent + 3.0) <= 0.2;
}

inline bool check_whitenoise_exponents(std::string& detail, bool full) {
  const CurrentEngine e(validation_model(ChainFamily::Pst, 2, InitialCase::TwoSite, BathSpectrum::white_noise(1.0),
                                         EvalMode::HighT));
  const std::size_t n = full ? 300001 : 60001;
  const auto jt = envelope_fit(e, true, 25.0, 310.0, n, {30.0, 300.0}, false, 0.0);
  const auto jti = envelope_fit(e, false, 25.0, 310.0, n, {30.0, 300.0}, false, 0.0);
  detail = "J_T " + sci(jt.exponent) + ", J_TI " + sci(jti.exponent);
  return std::abs(jt.exponent + 1.0) <= 0.1 && std::abs(jti.exponent + 1.0) <= 0.1;
}

inline std::vector<Check> validation_checks() {
  auto model = validation_model;
  return {
      {"amplitudes_closed_form", check_closed_amplitudes},
      {"amplitudes_unitarity", check_unitarity},
      {"infinite_chain_limit", check_infinite_chain},
      {"kernel_lorentz_drude", [](std::string& d, bool f) { return check_kernel_route(BathSpectrum::lorentz_drude(1.0), d, f); }},
      {"kernel_ohmic", [](std::string& d, bool f) { return check_kernel_route(BathSpectrum::ohmic(1.0), d, f); }},
      {"kernel_white_noise", [](std::string& d, bool f) { return check_kernel_route(BathSpectrum::white_noise(1.0), d, f); }},
      {"divergence_table", check_divergence_table},
      {"consistency_ohmic_full",
       [model](std::string& d, bool f) {
         return check_consistency(model(ChainFamily::Pst, 6, InitialCase::TwoSite, BathSpectrum::ohmic(1.0), EvalMode::Full), d, f);
       }},
      {"consistency_ohmic_high_t",
       [model](std::string& d, bool f) {
         return check_consistency(model(ChainFamily::Pst, 6, InitialCase::TwoSite, BathSpectrum::ohmic(1.0), EvalMode::HighT), d, f);
       }},
      {"consistency_white_noise_high_t",
       [model](std::string& d, bool f) {
         return check_consistency(
             model(ChainFamily::Pst, 6, InitialCase::TwoSite, BathSpectrum::white_noise(1.0), EvalMode::HighT), d, f);
       }},
      {"site1_thermal_nullity", check_site1_nullity},
      {"pst_ld_peak_scaling", check_pst_peaks},
      {"lorentz_drude_decay_rate", check_ld_rate},
      {"ohmic_envelope_exponents", check_ohmic_exponents},
      {"white_noise_envelope_exponents", check_whitenoise_exponents},
  };
}

}  // namespace detail

inline std::vector<CheckResult> run_validation(ValidationLevel level) {
  std::vector<CheckResult> out;
  for (const auto& check : detail::validation_checks()) {
    CheckResult r;
    r.name = check.name;
    const auto start = std::chrono::steady_clock::now();
    try {
      r.passed = check.run(r.detail, level == ValidationLevel::Full);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace bathflux

#endif  // BATHFLUX_VALIDATE_HPP
