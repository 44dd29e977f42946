// Copyright 2026 The Thomson Lab Authors
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

/**
 * @file
 * Exception types raised by the library. Every error derives from
 * thomson::Error so callers can catch the family at once.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace thomson {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class OutOfDomain : public Error {
  public:
    using Error::Error;
};

/// Inner power series failed to decay at an Abel sample point.
class NonConvergentAtSample : public Error {
  public:
    NonConvergentAtSample(double x, const std::string &why)
        : Error("power series does not converge at x = " +
                std::to_string(x) + ": " + why),
          x_(x) {}
    [[nodiscard]] double x() const noexcept { return x_; }

  private:
    double x_;
};

/// A floating-point term left the representable range.
class Overflow : public Error {
  public:
    using Error::Error;
};

class QuadratureFailure : public Error {
  public:
    using Error::Error;
};

/// Detector window reaching outside [0, 2].
class WindowOutsideTrace : public Error {
  public:
    using Error::Error;
};

/// Input that is not a normalized state or not a unitary matrix.
class NotNormalized : public Error {
  public:
    using Error::Error;
};

class NotUnitary : public Error {
  public:
    using Error::Error;
};

/// Angle outside the declared parameter range.
class RangeError : public Error {
  public:
    using Error::Error;
};

class DegenerateNormalization : public Error {
  public:
    using Error::Error;
};

/// Angle reduction altered the realized matrix.
class RangeReduction : public Error {
  public:
    using Error::Error;
};

class NoSolution : public Error {
  public:
    using Error::Error;
};

/// Malformed or semantically invalid input document.
class ParseError : public Error {
  public:
    using Error::Error;
};

} // namespace thomson
