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
#include <functional>
#include <span>
#include <vector>

#include "rvse/chebyshev.hpp"
#include "rvse/pauli.hpp"
#include "rvse/statevec.hpp"

namespace rvse {

/// Norms below this mean the Chebyshev state was annihilated exactly.
inline constexpr double kAnnihilationThreshold = 1e-13;

/// Per-order output of the recursion: ||chi_k|| and <chi0_bar|chi_k_bar>.
struct MomentRecord {
  std::size_t k = 0;
  double norm = 0.0;
  cplx overlap{};

  /// norm * overlap = <chi0_bar|T_k(H)|chi0_bar>.
  cplx moment() const noexcept { return norm * overlap; }
};

/// |chi_k> / ||chi_k|| together with ||chi_k||.
struct NormalizedChebState {
  StateVector state;
  double norm = 0.0;
};

/// Full storage of chi0_bar .. chiK_bar. Only tests and small diagnostics
/// should need this; run_rvse keeps three vectors.
struct ChebStateSequence {
  std::vector<StateVector> normalized_states;
  std::vector<double> norms;
  double chi0_norm = 0.0;
};

/// chi_1 = H chi_0, returned normalized.
NormalizedChebState first_step(const OperatorLCU& h_sc, const NormalizedChebState& chi0);

/**
 * chi_k = 2 ||chi_{k-1}|| H chi_{k-1}_bar - ||chi_{k-2}|| chi_{k-2}_bar,
 * returned normalized. `order` is only used in the AnnihilationError.
 */
NormalizedChebState recursion_step(const OperatorLCU& h_sc, const NormalizedChebState& prev,
                                   const NormalizedChebState& prev2, std::size_t order = 0);

using StepObserver = std::function<void(const MomentRecord&)>;

/**
 * Records k = 0 .. K for chi0 normalized on entry, so record 0 is (0, 1, 1).
 * Three statevectors are alive at any point regardless of K. The observer,
 * if set, runs after each record is produced.
 */
std::vector<MomentRecord> run_rvse(const OperatorLCU& h_sc, const StateVector& chi0,
                                   std::size_t K, const StepObserver& observer = {});

/// Like run_rvse but keeps every normalized state. Norms refer to chi0 / ||chi0||,
/// so norms[0] = 1 and the scale lives in chi0_norm.
ChebStateSequence chebyshev_states(const OperatorLCU& h_sc, const StateVector& chi0,
                                   std::size_t K);

/**
 * sum_k coeff(k) chi0_norm norm_k overlap_k.
 *
 * With records from run_rvse this is <chi0|F(H)|chi0> / ||chi0||; the caller
 * applies the second factor of ||chi0||.
 */
cplx assemble_expectation(std::span<const MomentRecord> records, double chi0_norm,
                          const std::function<cplx(std::size_t)>& coeff);

/// Moments of chi0 as given (not normalized) by the plain three-term recursion.
MomentSeries moments_direct(const OperatorLCU& h_sc, const StateVector& chi0, std::size_t K);

}  // namespace rvse
