//
// Copyright 2026 The shared-rep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SHAREDREP_ERROR_HPP_
#define SHAREDREP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace sharedrep {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Inconsistent shapes or sizes (wrong-length vectors, k > d, ...).
// Maps to CLI exit code 2.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration values (bad profiles, weights that do not sum to
// one, unknown estimator names, malformed config files).  Exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A client does not have enough samples for the requested estimator.
// Exit code 2.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// Singular or non-SPD covariance where an SPD one is required.  Exit code 3.
class CovarianceError : public Error {
 public:
  using Error::Error;
};

// Non-finite values or failed numeric routines.  Exit code 3.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace sharedrep

#endif  // SHAREDREP_ERROR_HPP_
