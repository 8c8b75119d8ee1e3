// Copyright 2026 The tdoped Authors
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

#ifndef TDOPED_ERRORS_H
#define TDOPED_ERRORS_H

#include <stdexcept>
#include <string>

namespace tdoped {

/// Operands of different qubit counts or dimensions.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition was violated by the caller.
struct ContractError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// More T-gate placements requested than (layer, qubit) cells exist.
struct CapacityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Problem size exceeds a memory or time cap.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Floating point result failed a sanity check (eigenvalue modulus, norm drift, ...).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Internal invariant broken; indicates a bug or corrupted data.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace tdoped

#endif
