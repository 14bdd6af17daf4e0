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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "bathflux/numerics/bessel.hpp"
#include "bathflux/numerics/quadrature.hpp"
#include "bathflux/numerics/series.hpp"
#include "bathflux/numerics/tridiag_eigh.hpp"

using namespace bathflux;
using namespace bathflux::numerics;

namespace {

// Ascending series in long double; accurate to ~1e-15 for x <= 10.
double bessel_series_oracle(int n, long double x) {
  long double half = x / 2.0L;
  long double term = 1.0L;
  for (int k = 1; k <= n; ++k) term *= half / k;
  long double sum = term;
  for (int k = 1; k <= 200; ++k) {
    term *= -(half * half) / (static_cast<long double>(k) * (n + k));
    sum += term;
  }
  return static_cast<double>(sum);
}

double max_reconstruction_error(const std::vector<double>& d, const std::vector<double>& e, const EigenSystem& es) {
  const std::size_t n = d.size();
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double h = 0.0;
      if (i == j) h = d[i];
      if (j == i + 1) h = e[i];
      if (i == j + 1) h = e[j];
      double r = 0.0;
      for (std::size_t k = 0; k < n; ++k) r += es.vector(i, k) * es.eigenvalues[k] * es.vector(j, k);
      err = std::max(err, std::abs(r - h));
    }
  return err;
}

}  // namespace

TEST(TridiagEigh, TwoByTwo) {
  const auto es = tridiag_eigh(std::vector<double>{0.0, 0.0}, std::vector<double>{-1.0});
  EXPECT_NEAR(es.eigenvalues[0], -1.0, 1e-15);
  EXPECT_NEAR(es.eigenvalues[1], 1.0, 1e-15);
  EXPECT_NEAR(std::abs(es.vector(0, 0)), (0.5 * std::numbers::sqrt2), 1e-15);
  EXPECT_NEAR(es.vector(0, 0), es.vector(1, 0), 1e-15);   // (1,1)/√2 for -1
  EXPECT_NEAR(es.vector(0, 1), -es.vector(1, 1), 1e-15);  // (1,-1)/√2 for +1
}

TEST(TridiagEigh, UniformThreeSiteBand) {
  const double tau = 1.0;
  const auto es = tridiag_eigh(std::vector<double>(3, 0.0), std::vector<double>{-tau / 2, -tau / 2});
  for (int m = 1; m <= 3; ++m) EXPECT_NEAR(es.eigenvalues[m - 1], -tau * std::cos(std::numbers::pi * m / 4), 1e-14);
}

TEST(TridiagEigh, RandomReconstructionAndOrthogonality) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> size(1, 64);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = size(rng);
    std::vector<double> d(n), e(n - 1);
    for (auto& x : d) x = u(rng);
    for (auto& x : e) x = u(rng);
    const auto es = tridiag_eigh(d, e);
    double hmax = 0.0;
    for (double x : d) hmax = std::max(hmax, std::abs(x));
    for (double x : e) hmax = std::max(hmax, std::abs(x));
    EXPECT_LE(max_reconstruction_error(d, e, es), 1e-12 * hmax) << "n=" << n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double dot = 0.0;
        for (int k = 0; k < n; ++k) dot += es.vector(k, i) * es.vector(k, j);
        EXPECT_NEAR(dot, i == j ? 1.0 : 0.0, 1e-12);
      }
    for (int k = 1; k < n; ++k) EXPECT_LE(es.eigenvalues[k - 1], es.eigenvalues[k]);
  }
}

TEST(TridiagEigh, RejectsBadInput) {
  EXPECT_THROW(tridiag_eigh(std::vector<double>{0.0, NAN}, std::vector<double>{1.0}), InvalidInput);
  EXPECT_THROW(tridiag_eigh(std::vector<double>{0.0, 0.0}, std::vector<double>{}), InvalidInput);
}

TEST(Bessel, Trivial) {
  EXPECT_EQ(bessel_j(0, 0.0), 1.0);
  EXPECT_EQ(bessel_j(1, 0.0), 0.0);
  EXPECT_THROW(bessel_j(-1, 1.0), InvalidInput);
}

TEST(Bessel, AgainstSeriesOracle) {
  EXPECT_NEAR(bessel_j(2, 5.0), bessel_series_oracle(2, 5.0L), 1e-12);
  for (int n = 0; n <= 12; ++n)
    for (double x : {0.3, 1.0, 2.5, 5.0, 7.7, 10.0}) EXPECT_NEAR(bessel_j(n, x), bessel_series_oracle(n, x), 1e-12);
}

TEST(Bessel, AgainstStdLibraryOverWideRange) {
  for (int n : {0, 1, 2, 3, 5, 8, 13, 20, 40})
    for (double x : {0.01, 0.9, 3.0, 17.0, 49.9, 50.1, 120.0, 999.0, 2500.0, 1e4}) {
      const double ref = std::cyl_bessel_j(static_cast<double>(n), x);
      EXPECT_NEAR(bessel_j(n, x), ref, 1e-12) << "n=" << n << " x=" << x;
    }
  EXPECT_NEAR(bessel_j(3, -2.0), -std::cyl_bessel_j(3.0, 2.0), 1e-14);
}

TEST(Bessel, RecurrenceIdentity) {
  for (int n = 1; n <= 20; ++n)
    for (double x = 0.1; x <= 100.0; x *= 1.37) {
      const double lhs = bessel_j(n - 1, x) + bessel_j(n + 1, x);
      EXPECT_NEAR(lhs, 2.0 * n / x * bessel_j(n, x), 1e-10) << n << " " << x;
    }
}

TEST(Bessel, SumRule) {
  for (double x : {0.5, 4.0, 33.0, 150.0, 800.0}) {
    const int k_max = static_cast<int>(x + 40 + 10 * std::cbrt(x));
    double s = std::pow(bessel_j(0, x), 2);
    for (int n = 1; n <= k_max; ++n) s += 2.0 * std::pow(bessel_j(n, x), 2);
    EXPECT_NEAR(s, 1.0, 1e-10) << x;
  }
}

TEST(Oscillatory, LorentzDrudeSineClosedForm) {
  const std::vector<double> regs{1e-2, 1e-3, 1e-4};
  const auto est = oscillatory_integral([](double w) { return w / (1.0 + w * w); }, Trig::Sin, 1.0, regs);
  EXPECT_NEAR(est.value, 0.5 * std::numbers::pi * std::exp(-1.0), 1e-6);
}

TEST(Oscillatory, OhmicAgainstAntiderivative) {
  // ∫(π/2) ω e^{-ω} sin ωt dω = π t/(1+t²)² from the antiderivative of ω e^{-ω} sin ωt.
  for (double t : {0.2, 1.0, 3.0, 25.0}) {
    const auto est =
        oscillatory_integral([](double w) { return 0.5 * std::numbers::pi * w * std::exp(-w); }, Trig::Sin, t, {});
    EXPECT_NEAR(est.value, std::numbers::pi * t / std::pow(1.0 + t * t, 2), 1e-12) << t;
  }
}

TEST(Oscillatory, CompactSupport) {
  OscillatoryOptions opt;
  opt.support_end = 1.0;
  const auto est = oscillatory_integral([](double) { return 1.0; }, Trig::Sin, std::numbers::pi, {}, opt);
  EXPECT_NEAR(est.value, 2.0 / std::numbers::pi, 1e-14);
}

TEST(Oscillatory, ConditionallyConvergentCosine) {
  // Abel sum of ∫ω²/(1+ω²) cos ωt = -(π/2) e^{-t} for t > 0.
  const std::vector<double> regs{1e-2, 1e-3, 1e-4};
  const auto est = oscillatory_integral([](double w) { return w * w / (1.0 + w * w); }, Trig::Cos, 2.0, regs);
  EXPECT_NEAR(est.value, -0.5 * std::numbers::pi * std::exp(-2.0), 1e-7);
}

TEST(Oscillatory, ScheduleValidation) {
  const std::vector<double> bad{1e-4, 1e-3};
  EXPECT_THROW(oscillatory_integral([](double) { return 1.0; }, Trig::Sin, 1.0, bad), InvalidInput);
  EXPECT_THROW(oscillatory_integral([](double) { return 1.0; }, Trig::Sin, 0.0, {}), InvalidInput);
}

TEST(Oscillatory, DivergentWeightIsNonConvergent) {
  // ω³ e^{+0.5 ω}·… grows faster than any regulator in the schedule can tame.
  const std::vector<double> regs{1e-2, 1e-3, 1e-4};
  EXPECT_THROW(oscillatory_integral([](double w) { return std::exp(0.2 * w); }, Trig::Sin, 1.0, regs),
               NonConvergent);
}

TEST(PeakEnvelope, SinePeaks) {
  std::vector<double> t, v;
  for (int i = 0; i <= 20000; ++i) {
    t.push_back(i * 1e-3);
    v.push_back(std::sin(t.back()));
  }
  const auto env = peak_envelope(t, v);
  ASSERT_FALSE(env.t.empty());
  for (std::size_t k = 0; k < env.t.size(); ++k) {
    EXPECT_NEAR(env.v[k], 1.0, 1e-6);
    EXPECT_NEAR(env.t[k], std::numbers::pi / 2 + k * std::numbers::pi, 2e-3);
  }
}

TEST(PeakEnvelope, MonotoneIsEmptyAndShortIsError) {
  std::vector<double> t{0, 1, 2, 3, 4}, v{1, 2, 3, 4, 5};
  EXPECT_TRUE(peak_envelope(t, v).t.empty());
  EXPECT_THROW(peak_envelope(std::vector<double>{0, 1}, std::vector<double>{1, 0}), InvalidInput);
}

TEST(PeakEnvelope, CubicDecayPattern) {
  std::vector<double> t, v;
  for (int i = 1; i <= 400000; ++i) {
    t.push_back(i * 1e-4);
    v.push_back(std::pow(t.back(), -3) * std::cos(t.back()));
  }
  const auto env = peak_envelope(t, v);
  ASSERT_GE(env.t.size(), 10u);
  for (std::size_t k = 0; k < env.t.size(); ++k) {
    if (env.t[k] < 30.0) continue;
    const double expected = std::pow(std::numbers::pi * std::round(env.t[k] / std::numbers::pi), -3);
    EXPECT_NEAR(env.v[k] / expected, 1.0, 5e-3);
  }
}

TEST(PeakEnvelope, MinSeparationKeepsDominantPeaks) {
  std::vector<double> t, v;
  for (int i = 0; i <= 100000; ++i) {
    t.push_back(i * 1e-3);
    v.push_back(std::sin(t.back()) + 0.1 * std::sin(7.0 * t.back()));
  }
  const auto all = peak_envelope(t, v);
  const auto dominant = peak_envelope(t, v, 0.5 * std::numbers::pi);
  EXPECT_GT(all.t.size(), dominant.t.size());
  for (double p : dominant.v) EXPECT_GT(p, 1.0);
}

TEST(PowerLawFit, PlantedExponent) {
  Series s;
  for (int i = 1; i <= 200; ++i) {
    s.t.push_back(i * 0.5);
    s.v.push_back(7.0 * std::pow(s.t.back(), -3));
  }
  const auto fit = power_law_fit(s, {1.0, 100.0});
  EXPECT_NEAR(fit.exponent, -3.0, 1e-10);
  EXPECT_NEAR(fit.log_prefactor, std::log(7.0), 1e-9);
  EXPECT_LT(fit.residual_rms, 1e-12);
}

TEST(PowerLawFit, RippledInverse) {
  Series s;
  for (int k = 1; k <= 300; ++k) {
    const double t = std::numbers::pi * (k + 0.5);
    s.t.push_back(t);
    s.v.push_back((1.0 + 0.01 * std::abs(std::sin(3.1 * t))) / t);
  }
  EXPECT_NEAR(power_law_fit(s, {5.0, 1000.0}).exponent, -1.0, 0.05);
}

TEST(PowerLawFit, ExponentialIsFlaggedByResidual) {
  Series s;
  for (int i = 1; i <= 100; ++i) {
    s.t.push_back(0.5 * i);
    s.v.push_back(std::exp(-s.t.back()));
  }
  const auto power = power_law_fit(s, {0.5, 50.0});
  const auto expo = exponential_fit(s, {0.5, 50.0});
  EXPECT_GT(power.residual_rms, 1.0);
  EXPECT_LT(expo.residual_rms, 1e-10);
  EXPECT_NEAR(expo.exponent, -1.0, 1e-12);
}

TEST(PowerLawFit, InsufficientPoints) {
  Series s{{1, 2, 3, 4, 5, 6}, {1, 1, 1, 1, 1, 1}};
  EXPECT_THROW(power_law_fit(s, {0.0, 10.0}), InvalidInput);
  Series neg{{1, 2, 3, 4, 5, 6, 7, 8}, {1, 1, 1, -1, 1, 1, 1, 1}};
  EXPECT_THROW(power_law_fit(neg, {0.0, 10.0}), InvalidInput);
}

TEST(FiniteDifference, PolynomialExactness) {
  std::vector<double> t, v;
  for (int i = 0; i < 21; ++i) {
    t.push_back(-1.0 + 0.1 * i);
    v.push_back(t.back() * t.back());
  }
  const auto d = finite_difference_derivative(t, v);
  for (std::size_t i = 0; i < t.size(); ++i) EXPECT_NEAR(d[i], 2.0 * t[i], 1e-12);
}

TEST(FiniteDifference, FourthOrderInterior) {
  auto err = [](double h) {
    std::vector<double> t, v;
    for (int i = 0; i <= static_cast<int>(2.0 / h); ++i) {
      t.push_back(i * h);
      v.push_back(std::sin(t.back()));
    }
    const auto d = finite_difference_derivative(t, v);
    double e = 0.0;
    for (std::size_t i = 2; i + 2 < t.size(); ++i) e = std::max(e, std::abs(d[i] - std::cos(t[i])));
    return e;
  };
  const double ratio = err(0.02) / err(0.01);
  EXPECT_GT(ratio, 14.0);
  EXPECT_LT(ratio, 18.0);
}

TEST(FiniteDifference, ConstantAndErrors) {
  std::vector<double> t{0, 1, 2, 3, 4, 5}, c(6, 3.0);
  for (double d : finite_difference_derivative(t, c)) EXPECT_EQ(d, 0.0);
  std::vector<double> bad{0, 1, 2, 3.5, 4, 5};
  EXPECT_THROW(finite_difference_derivative(bad, c), InvalidInput);
  EXPECT_THROW(finite_difference_derivative(std::vector<double>{0, 1, 2, 3}, std::vector<double>{0, 0, 0, 0}),
               InvalidInput);
}
