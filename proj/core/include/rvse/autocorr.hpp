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
#include <span>
#include <string>
#include <vector>

#include "rvse/noise.hpp"
#include "rvse/pauli.hpp"
#include "rvse/recursion.hpp"
#include "rvse/statevec.hpp"

namespace rvse {

/// J_k(t) for k >= 0, t >= 0 (Miller's downward recurrence).
double bessel_j(std::size_t k, double t);

/// J_0(t) .. J_K(t) from one downward sweep, normalized by
/// J_0 + 2 sum_m J_2m = 1.
std::vector<double> bessel_j_all(std::size_t K, double t);

/// min(2, 4 t^{K+1} / (2^{K+1} (K+1)!)), evaluated in log space.
double truncation_bound(std::size_t K, double t);

/// Smallest K with truncation_bound(K, t_max) <= epsilon.
std::size_t choose_k(double t_max, double epsilon);

/// (2 - delta_k0) (-i)^k J_k(t), the k-th coefficient of exp(-i H_sc t).
std::vector<cplx> time_evolution_coeffs(std::size_t K, double t);

struct AutocorrConfig {
  std::vector<double> t_grid;  ///< scaled-Hamiltonian time, nonnegative, increasing
  std::size_t K = 120;
  double epsilon_target = 1e-8;
  bool auto_k = false;  ///< replace K by choose_k(max t, epsilon_target)
  int threads = 0;

  void validate() const;
};

struct AutocorrResult {
  std::vector<double> t_grid;
  std::vector<cplx> c_approx;  ///< noiseless Chebyshev expansion
  std::vector<cplx> c_noisy;   ///< one realization under the noise model
  std::vector<cplx> c_exact;
  std::vector<double> delta;
  std::vector<double> bound;
  std::size_t K = 0;
  std::vector<MomentRecord> records;
  std::vector<NoisyMomentRecord> noisy;
  std::vector<std::string> warnings;
};

/// sum_n |<E_n|psi>|^2 exp(-i E_n t).
cplx autocorr_exact(const EigenDecomposition& decomp, const StateVector& psi, double t);

/**
 * C(t) = <psi|exp(-i H_sc t)|psi> from one moment recursion reused for every
 * t. psi is normalized on entry. Warns when K < ceil(max t).
 */
AutocorrResult autocorrelation(const OperatorLCU& h_sc, const StateVector& psi,
                               const AutocorrConfig& config, const NoiseModel& model = {});

}  // namespace rvse
