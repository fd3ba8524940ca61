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


#include "rvse/scaling.hpp"

#include "rvse/statevec.hpp"

namespace rvse {

ScaledOperator resolve_scaling(const OperatorLCU& h, const ScalingRequest& request) {
  switch (request.mode) {
    case ScalingRequest::Mode::l1:
      return scale_l1(h);
    case ScalingRequest::Mode::spectral:
      return scale_spectral(h, request.e_min, request.e_max, request.margin);
    case ScalingRequest::Mode::automatic:
      break;
  }
  const auto eig = exact_diagonalize(h);
  return scale_spectral(h, eig.eigenvalues.front(), eig.eigenvalues.back(), request.margin);
}

}  // namespace rvse
