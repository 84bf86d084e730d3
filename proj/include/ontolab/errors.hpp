// Copyright 2026 The Ontolab Authors
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

#ifndef ONTOLAB_ERRORS_HPP
#define ONTOLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ontolab {

/// A vector or matrix that does not describe a physical qubit state.
struct InvalidState : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Non-finite angles, negative rates, empty sample sets, mismatched binnings.
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Post-measurement state requested for an outcome of (numerically) zero probability.
struct UndefinedConditionalState : std::domain_error {
    using std::domain_error::domain_error;
};

/// A numerical routine disagreed with its closed form. Signals a bug, not bad input.
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An analysis was asked of a model that does not expose the required contract.
struct ContractMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace ontolab

#endif
