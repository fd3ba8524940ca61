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

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rvse/pauli.hpp"

namespace rvse {

/// Largest register a StateVector may hold.
inline constexpr std::size_t kMaxStateQubits = 14;
/// Largest operator handed to the dense eigensolver.
inline constexpr std::size_t kMaxDiagQubits = 12;
inline constexpr double kNormalizedTolerance = 1e-10;

/**
 * Dense amplitude vector of length 2^n.
 *
 * Basis index of bitstring b_0 b_1 ... b_{n-1} is sum_j b_j 2^{n-1-j}, so
 * qubit 0 is the most significant bit, matching PauliWord.
 */
class StateVector {
 public:
  StateVector() { ++live_; }
  /// Zero vector on n qubits.
  explicit StateVector(std::size_t n_qubits);
  StateVector(std::size_t n_qubits, std::vector<cplx> amplitudes);
  StateVector(const StateVector& other);
  StateVector(StateVector&& other) noexcept;
  StateVector& operator=(const StateVector& other) = default;
  StateVector& operator=(StateVector&& other) noexcept = default;
  ~StateVector() { --live_; }

  static StateVector basis(std::size_t n_qubits, std::uint64_t index);
  /// Basis state from a bitstring such as "0110".
  static StateVector basis(std::string_view bits);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }
  cplx& operator[](std::size_t i) { return amps_[i]; }

  double norm() const;
  bool is_normalized(double tol = kNormalizedTolerance) const;
  /// Copy scaled to unit norm. Throws NumericGuardError on the zero vector.
  StateVector normalized() const;

  StateVector& operator*=(cplx s);
  StateVector& operator+=(const StateVector& rhs);
  StateVector& operator-=(const StateVector& rhs);
  friend StateVector operator*(cplx s, StateVector v) { return v *= s; }
  friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }

  /// Number of StateVector objects currently alive in the process.
  static long live_instances() noexcept { return live_.load(); }

 private:
  std::size_t n_qubits_ = 0;
  std::vector<cplx> amps_;
  static inline std::atomic<long> live_{0};
};

/// Exact action of a tensor-product Pauli.
StateVector apply_pauli(const PauliWord& word, const StateVector& psi);

/// sum_j h_j P_j |psi>; generally unnormalized.
StateVector apply_lcu(const OperatorLCU& op, const StateVector& psi);

/// out += scale * op |src>. `out` and `src` must be distinct.
void accumulate_lcu(const OperatorLCU& op, cplx scale, const StateVector& src,
                    StateVector& out);

/// <bra|ket>, conjugate-linear in bra.
cplx inner(const StateVector& bra, const StateVector& ket);

/// <bra| P |ket> for a single Pauli word.
cplx pauli_matrix_element(const StateVector& bra, const PauliWord& word,
                          const StateVector& ket);

/// Expectation of N = sum_j (I - Z_j)/2, computed from basis populations.
double number_expectation(const StateVector& psi);

struct EigenDecomposition {
  std::vector<double> eigenvalues;         ///< ascending
  std::vector<StateVector> eigenvectors;   ///< orthonormal, same order
};

/// Full spectrum of a Hermitian LCU via a dense Hermitian eigensolver.
/// Throws std::invalid_argument on non-Hermitian input and NumericGuardError
/// beyond kMaxDiagQubits.
EigenDecomposition exact_diagonalize(const OperatorLCU& op);

/// Eigenvalues of a number-conserving operator restricted to the
/// n_particles sector, ascending. Throws NumericGuardError for an empty sector
/// and std::invalid_argument when the operator leaks out of the sector.
std::vector<double> sector_eigenvalues(const OperatorLCU& op, std::size_t n_particles);

struct SectorGroundState {
  double energy = 0.0;
  StateVector state;
  /// Number of orthonormal sector states sharing the ground level.
  std::size_t degeneracy = 1;
};

inline constexpr double kDegeneracyThreshold = 1e-9;
inline constexpr double kSectorTolerance = 1e-8;

/**
 * Lowest eigenvector with <N> = n_particles. Degenerate levels (within
 * kDegeneracyThreshold) are resolved by diagonalizing N inside the level.
 * Throws NumericGuardError when no eigenvector lies in the sector.
 */
SectorGroundState ground_state_in_sector(const EigenDecomposition& decomp,
                                         std::size_t n_particles,
                                         std::size_t n_qubits);

struct ParsedState {
  StateVector state;     ///< normalized
  double raw_norm = 0.0; ///< norm before normalization
};

/**
 * Parses `<amp>|<bits>>` terms joined by + or -. An amplitude is a decimal or
 * `(re,im)` and may be omitted (meaning 1). Whitespace is ignored; both `>`
 * and U+27E9 close a ket. Repeated bitstrings accumulate.
 */
ParsedState parse_state(std::string_view text, std::size_t n_qubits);

}  // namespace rvse
