// Copyright 2026 The cvcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace cvcs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad dimension, index, range).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A linear-fractional update or matrix inversion hit an ill-conditioned
/// system. Usually means unphysically extreme squeezing for double precision.
class NumericalDegeneracy : public Error {
 public:
  using Error::Error;
};

/// A scenario config or graph export could not be parsed or validated.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cvcs
