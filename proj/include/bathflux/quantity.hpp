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

#ifndef BATHFLUX_QUANTITY_HPP
#define BATHFLUX_QUANTITY_HPP

#include <cmath>
#include <initializer_list>
#include <string>
#include <utility>

#include "bathflux/error.hpp"

namespace bathflux {

/// A real number, or a marker that the quantity has no finite value; the
/// marker names the integral responsible.
class Quantity {
 public:
  Quantity() = default;
  Quantity(double v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static Quantity divergent(std::string what) {
    Quantity q;
    q.divergent_ = true;
    q.reason_ = std::move(what);
    return q;
  }

  bool is_divergent() const { return divergent_; }
  bool is_finite() const { return !divergent_; }
  const std::string& reason() const { return reason_; }

  double value() const {
    if (divergent_) throw NumericalError("value requested from divergent quantity (" + reason_ + ")");
    return value_;
  }
  double value_or(double fallback) const { return divergent_ ? fallback : value_; }

 private:
  double value_ = 0.0;
  bool divergent_ = false;
  std::string reason_;
};

/// Coefficients at or below this magnitude annihilate a divergent partner.
inline constexpr double kZeroCoefficient = 1e-13;

struct Term {
  double coefficient;
  Quantity factor;
};

/// Σ c_i q_i. Any divergent q_i with |c_i| above kZeroCoefficient makes the sum divergent.
inline Quantity weighted_sum(std::initializer_list<Term> terms) {
  double sum = 0.0;
  std::string reasons;
  for (const auto& term : terms) {
    if (term.factor.is_divergent()) {
      if (std::abs(term.coefficient) > kZeroCoefficient) {
        if (reasons.find(term.factor.reason()) == std::string::npos) {
          if (!reasons.empty()) reasons += "+";
          reasons += term.factor.reason();
        }
      }
      continue;
    }
    sum += term.coefficient * term.factor.value();
  }
  if (!reasons.empty()) return Quantity::divergent(reasons);
  return sum;
}

inline Quantity operator*(double c, const Quantity& q) {
  if (q.is_divergent()) return c == 0.0 ? Quantity(0.0) : q;
  return c * q.value();
}

inline Quantity operator*(const Quantity& a, const Quantity& b) {
  if (a.is_divergent()) return a;
  if (b.is_divergent()) return b;
  return a.value() * b.value();
}

inline Quantity operator+(const Quantity& a, const Quantity& b) {
  if (a.is_divergent() && b.is_divergent()) return Quantity::divergent(a.reason() + "+" + b.reason());
  if (a.is_divergent()) return a;
  if (b.is_divergent()) return b;
  return a.value() + b.value();
}

}  // namespace bathflux

#endif  // BATHFLUX_QUANTITY_HPP
