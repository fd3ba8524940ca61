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
#include "rvse/scaling.hpp"
#include "rvse/statevec.hpp"

namespace rvse {

struct SpectralConfig {
  std::size_t orbital = 1;
  double eta = 0.02;  ///< broadening, physical units
  std::size_t K = 2000;
  std::vector<double> grid;  ///< physical energies, strictly increasing
  std::size_t n_particles = 2;
  ScalingRequest scaling;
  int threads = 0;  ///< 0 lets OpenMP decide

  /// Throws std::invalid_argument on eta <= 0 or a non-increasing grid.
  void validate() const;
};

/// Electron attachment or removal state with its norm. A zero norm means
/// the branch vanishes (orbital full or empty in the ground state).
struct BranchState {
  StateVector state;  ///< unnormalized
  double norm = 0.0;

  bool vanishes() const noexcept { return norm < kAnnihilationThreshold; }
};

/// a_orbital^dag |ground>.
BranchState attachment_state(const StateVector& ground, std::size_t orbital);
/// a_orbital |ground>.
BranchState removal_state(const StateVector& ground, std::size_t orbital);

/**
 * <chi0_bar|(z - H_sc)^-1|chi0_bar> from run_rvse records. The caller
 * multiplies ||chi0||^2. Throws std::domain_error unless Im z_sc > 0.
 */
cplx resolvent_expectation(std::span<const MomentRecord> records, cplx z_sc);
/// Same, running the recursion for K terms first.
cplx resolvent_expectation(const OperatorLCU& h_sc, const StateVector& chi0, cplx z_sc,
                           std::size_t K);

struct LorentzianPole {
  enum class Branch { attach, remove };

  Branch branch;
  double position;  ///< E at which A peaks
  double weight;
};

/// Poles of A_ii from a full eigendecomposition: attachment at E_n - E0 with
/// weight |<E_n|a^dag|E0>|^2, removal at E0 - E_n with |<E_n|a|E0>|^2.
/// Weights below 1e-14 are skipped.
std::vector<LorentzianPole> lorentzian_poles(const EigenDecomposition& decomp,
                                             const StateVector& ground, double e0,
                                             std::size_t orbital);

/// sum_p w_p (eta / pi) / ((E - E_p)^2 + eta^2).
double lorentzian_spectral(std::span<const LorentzianPole> poles, double energy, double eta);

struct EaIpEntry {
  enum class Label { EA, IP };

  Label label;
  std::size_t index;
  double energy;
};

std::string to_string(EaIpEntry::Label label);

/// EA_a = E0(N) - E_a(N+1) and IP_i = E_i(N-1) - E0(N) from sector spectra.
/// Throws NumericGuardError when N-1 or N+1 is not a valid sector.
std::vector<EaIpEntry> ea_ip_table(const OperatorLCU& h, std::size_t n_particles);

struct SpectralBranch {
  BranchState chi0;
  std::vector<MomentRecord> records;
  std::vector<NoisyMomentRecord> noisy;  ///< empty in exact mode
  std::vector<double> eps;               ///< all zero in exact mode
};

struct SpectralResult {
  std::vector<double> grid;
  std::vector<double> grid_scaled;  ///< attachment-branch Re z_sc
  std::vector<double> a_values;     ///< under the requested noise model
  std::vector<double> a_attach;
  std::vector<double> a_remove;
  std::vector<double> a_noiseless;  ///< same expansion without noise
  std::vector<double> delta_values;
  std::vector<double> exact_reference;

  double e0 = 0.0;
  ScalingParams params;
  SpectralBranch attach;
  SpectralBranch remove;
  std::vector<LorentzianPole> poles;
  std::vector<EaIpEntry> table;
};

/**
 * A_ii(E) = -(1/pi) Im[G_att(z+) - G_rem(z-)], z+- = +-(E + i eta) + E0,
 * with each resolvent evaluated on H_sc at the mapped argument and divided
 * by the map width. Delta combines both branches as (D_att + D_rem) / pi.
 */
SpectralResult spectral_function(const OperatorLCU& h, const SpectralConfig& config,
                                 const NoiseModel& model = {});

}  // namespace rvse
