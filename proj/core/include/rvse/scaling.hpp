// Copyright 2026 The rvse Authors
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


#pragma once

#include "rvse/pauli.hpp"

namespace rvse {

/// How an application obtains H_sc from the physical Hamiltonian.
struct ScalingRequest {
  enum class Mode {
    automatic,  ///< spectral map over exact extreme eigenvalues
    spectral,   ///< spectral map over caller-supplied bounds
    l1,         ///< divide by the l1 norm
  };

  Mode mode = Mode::automatic;
  double e_min = 0.0;
  double e_max = 0.0;
  double margin = kDefaultMargin;
};

/// Applies `request`; automatic mode diagonalizes `h` exactly.
ScaledOperator resolve_scaling(const OperatorLCU& h, const ScalingRequest& request);

}  // namespace rvse
