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

#ifndef BATHFLUX_ERROR_HPP
#define BATHFLUX_ERROR_HPP

#include <stdexcept>
#include <string>

namespace bathflux {

/// Precondition violated by the caller (bad sizes, non-finite input, wrong spectrum).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed on a problem that should have been well posed.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Regulated quadrature whose extrapolants disagree.
class NonConvergent : public NumericalError {
 public:
  explicit NonConvergent(const std::string& what) : NumericalError(what) {}
};

/// Evaluation too close to a pole of tan in the asymptotic ratio.
class PoleProximity : public NumericalError {
 public:
  explicit PoleProximity(const std::string& what) : NumericalError(what) {}
};

}  // namespace bathflux

#endif  // BATHFLUX_ERROR_HPP
