// Copyright 2026 The design-certify Authors
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

namespace dcert {

/// Base class of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An operation was called outside its stated domain (dimension mismatch,
/// invalid state or measurement, parameter out of range).
struct PreconditionError : Error {
    using Error::Error;
};

/// A document on disk does not conform to the expected file format.
struct FormatError : Error {
    using Error::Error;
};

/// The observed data admits no certification: an error rate at or above
/// 1/2, or a score below the quantum bound.
struct InfeasibleError : Error {
    using Error::Error;
};

} // namespace dcert
