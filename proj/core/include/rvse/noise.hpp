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
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "rvse/pauli.hpp"
#include "rvse/recursion.hpp"
#include "rvse/statevec.hpp"

namespace rvse {

using Rng = std::mt19937_64;

enum class NoiseMode { exact, bernoulli, surrogate };

/// Scale of the additive overlap noise phi_k: N(0,1)/S as written, or N(0,1)/sqrt(S).
enum class PhiConvention { paper_1_over_S, one_over_sqrt_S };

/// Whether the real and imaginary Gaussian parts reuse one draw (phi + i phi)
/// or use two independent draws.
enum class PhiCoupling { same_draw, independent };

struct NoiseModel {
  std::size_t shots = 1000;
  std::uint64_t seed = 0;
  NoiseMode mode = NoiseMode::exact;
  PhiConvention phi_convention = PhiConvention::paper_1_over_S;
  PhiCoupling coupling = PhiCoupling::same_draw;

  /// Throws std::invalid_argument when shots == 0 in a noisy mode.
  void validate() const;
};

/**
 * Simulated Hadamard test. The real part is the mean of `shots` outcomes in
 * {-1, +1} with Pr(+1) = (1 + Re)/2; the imaginary part comes from an
 * independent batch with Pr(+1) = (1 + Im)/2. Components may exceed [-1, 1]
 * by 1e-12 before clamping; beyond that std::domain_error is thrown.
 */
cplx hadamard_estimate(cplx true_overlap, std::size_t shots, Rng& rng);

/// sum_j h_j muhat_j with muhat_j = hadamard_estimate(<bra|P_j|ket>).
cplx lcu_estimate(const OperatorLCU& op, const StateVector& bra, const StateVector& ket,
                  std::size_t shots, Rng& rng);

/// sum_k |c_k|^2 / S.
double lcu_variance_bound(std::span<const double> coeffs, std::size_t shots);

struct EpsilonSequence {
  std::vector<double> sigma_mu;
  std::vector<double> sigma_nu;
  std::vector<double> eps;
};

/// E|phi_mu (1 + i) + phi_nu (1 + i)| for zero-mean Gaussians of the given
/// widths; with PhiCoupling::independent each component is drawn separately.
double expected_abs_phi(double sigma_mu, double sigma_nu,
                        PhiCoupling coupling = PhiCoupling::same_draw);

/**
 * Closed-form noise recursion over k = 0 .. K:
 *
 *   sigma_mu_1 = n_0 sqrt(C / S),
 *   sigma_mu_k = 2 (n_{k-1} + eps_{k-1}) sqrt(C / S),   k >= 2,
 *   sigma_nu_k = (n_{k-2} + eps_{k-2}) / sqrt(S),         k >= 2,
 *   eps_k      = expected_abs_phi(sigma_mu_k, sigma_nu_k),
 *
 * with C = sum |h_j|^2 and eps_0 = sigma_*_0 = sigma_nu_1 = 0.
 */
EpsilonSequence epsilon_sequence(std::span<const double> norms_exact, double sum_c_sq,
                                 std::size_t shots, std::size_t K,
                                 PhiCoupling coupling = PhiCoupling::same_draw);

struct NoisyMomentRecord {
  std::size_t k = 0;
  double norm_noisy = 0.0;
  double eps = 0.0;
  cplx overlap_noisy{};
};

/// Norms of `records` as a plain sequence.
std::vector<double> record_norms(std::span<const MomentRecord> records);

/**
 * Large-sample surrogate: norm_noisy = norm + eps_k, overlap_noisy =
 * overlap + phi_k (1 + i) with phi_k drawn per model.phi_convention.
 * Throws std::invalid_argument unless model.mode is surrogate.
 */
std::vector<NoisyMomentRecord> noisy_records(std::span<const MomentRecord> records,
                                             const NoiseModel& model, double sum_c_sq);

/**
 * Sampling-level simulation of the recursion. The normalized states are
 * exact (ideal optimizer) but every normalizing constant is rebuilt from
 * Hadamard-test estimates of mu_j^{(k,k-1)} and nu^{(k,k-2)} using the
 * previous noisy constants, and every reference overlap is estimated too.
 * eps is the realized deviation norm_noisy - norm. Throws unless
 * model.mode is bernoulli.
 */
std::vector<NoisyMomentRecord> bernoulli_records(const OperatorLCU& h_sc,
                                                 const StateVector& chi0, std::size_t K,
                                                 const NoiseModel& model);

/// Delta = |sum_k c_k chi0_norm eps_k overlap_k|.
double absolute_error_delta(const std::function<cplx(std::size_t)>& coeff,
                            std::span<const double> eps, std::span<const cplx> overlaps,
                            double chi0_norm);

/// sum_k c_k chi0_norm (norm_k + eps_k) overlap_k, the mean of the surrogate
/// expectation over the phi_k draws.
cplx noisy_expectation_mean(const std::function<cplx(std::size_t)>& coeff,
                            std::span<const MomentRecord> records,
                            std::span<const double> eps, double chi0_norm);

/// sum_k c_k chi0_norm norm_noisy_k overlap_noisy_k for one realization.
cplx noisy_expectation(const std::function<cplx(std::size_t)>& coeff,
                       std::span<const NoisyMomentRecord> records, double chi0_norm);

}  // namespace rvse
