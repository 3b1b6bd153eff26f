// SPDX-License-Identifier: Apache-2.0
//
// thzris: simulation and optimization toolkit for RIS-assisted THz MIMO links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace thzris {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed argument: wrong shape, non-finite entries, out-of-range scalar.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class DimensionError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// Configuration file or CLI value that cannot be turned into a valid experiment.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Failures that depend on the numerical content of a realization rather than
// on the shape of the inputs. The harness maps these to exit code 3.
class NumericalError : public Error {
public:
    using Error::Error;
};

class IllConditionedCombiner : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateChannel : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InfeasibleSplit : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class CountOverflow : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace thzris
