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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rvse {

/// Malformed text input (Hamiltonian files, state specs, grids, configs).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric guard tripped: dimension limits, missing particle sectors,
/// degenerate ground states, vanishing Chebyshev norms.
class NumericGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ||chi_k|| fell below the annihilation threshold during the recursion.
class AnnihilationError : public NumericGuardError {
 public:
  AnnihilationError(std::size_t order, double norm)
      : NumericGuardError("Chebyshev state annihilated at k=" +
                          std::to_string(order) +
                          " (norm=" + std::to_string(norm) + ")"),
        order_(order),
        norm_(norm) {}

  std::size_t order() const noexcept { return order_; }
  double norm() const noexcept { return norm_; }

 private:
  std::size_t order_;
  double norm_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rvse
