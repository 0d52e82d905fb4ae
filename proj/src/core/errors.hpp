/**
 * Copyright 2026 The gbsbench authors
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

#ifndef GBSBENCH_CORE_ERRORS_HPP
#define GBSBENCH_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gbs {

/// Invalid argument supplied by the caller (bad dimension, out-of-range
/// parameter, malformed configuration). Maps to process exit code 2.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// A request that is syntactically valid but outside the supported feature
/// set (e.g. Fock statistics of displaced states).
class UnsupportedError : public ParameterError {
 public:
  explicit UnsupportedError(const std::string& what) : ParameterError(what) {}
};

/// Numerical-domain failure (non-positive determinant, nonphysical
/// covariance, degenerate statistics). Maps to process exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gbs

#endif
