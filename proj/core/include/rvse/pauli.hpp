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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rvse {

using cplx = std::complex<double>;

/// Terms whose merged coefficient falls below this magnitude are dropped.
inline constexpr double kMergeThreshold = 1e-14;
/// Largest imaginary part tolerated on a Hamiltonian coefficient.
inline constexpr double kRealTolerance = 1e-12;
/// Default outward widening of user-supplied spectral bounds.
inline constexpr double kDefaultMargin = 0.01;
/// Pauli words are stored as 64-bit masks.
inline constexpr std::size_t kMaxWordQubits = 63;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/**
 * Tensor product of single-qubit Paulis, stored in symplectic form.
 *
 * Qubit 0 is the leftmost character of the text form and the most
 * significant bit of a computational-basis index, so qubit q owns mask bit
 * (n - 1 - q). The operator is i^{|x & z|} X^x Z^z; Y occupies both masks.
 */
class PauliWord {
 public:
  PauliWord() = default;
  /// Identity on n qubits.
  explicit PauliWord(std::size_t n_qubits);

  /// Parses e.g. "XIZY". Throws ParseError on characters outside {I,X,Y,Z}.
  static PauliWord parse(std::string_view text);

  std::size_t size() const noexcept { return n_; }
  Pauli operator[](std::size_t qubit) const;
  void set(std::size_t qubit, Pauli p);

  bool is_identity() const noexcept { return x_ == 0 && z_ == 0; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }
  /// Number of Y factors.
  int y_count() const noexcept;

  std::string to_string() const;

  friend bool operator==(const PauliWord&, const PauliWord&) = default;
  friend auto operator<=>(const PauliWord&, const PauliWord&) = default;

 private:
  std::uint64_t bit(std::size_t qubit) const noexcept {
    return std::uint64_t{1} << (n_ - 1 - qubit);
  }

  std::size_t n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// P1 * P2 = phase * P3. Returns (phase, P3) with phase in {±1, ±i}.
std::pair<cplx, PauliWord> multiply(const PauliWord& lhs, const PauliWord& rhs);

struct PauliWordHash {
  std::size_t operator()(const PauliWord& w) const noexcept;
};

struct PauliTerm {
  cplx coeff;
  PauliWord word;
};

/**
 * Weighted sum of Pauli words, sum_j h_j P_j.
 *
 * Construction merges duplicate words (first-appearance order is kept) and
 * drops merged coefficients below kMergeThreshold. All words must have length
 * n_qubits. Values are immutable after construction.
 */
class OperatorLCU {
 public:
  OperatorLCU() = default;
  OperatorLCU(std::size_t n_qubits, std::vector<PauliTerm> terms);

  static OperatorLCU identity(std::size_t n_qubits, cplx coeff = 1.0);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::span<const PauliTerm> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Coefficient of `word`, zero if absent.
  cplx coefficient(const PauliWord& word) const;

  /// True when every coefficient is real within `tol`. Pauli words are
  /// Hermitian, so this is Hermiticity of the merged operator.
  bool is_hermitian(double tol = kRealTolerance) const;

  OperatorLCU adjoint() const;

  OperatorLCU operator+(const OperatorLCU& rhs) const;
  OperatorLCU operator-(const OperatorLCU& rhs) const;
  OperatorLCU operator*(const OperatorLCU& rhs) const;
  OperatorLCU operator*(cplx scalar) const;
  friend OperatorLCU operator*(cplx scalar, const OperatorLCU& op) {
    return op * scalar;
  }

  /// Hamiltonian file text, one `<coeff> <word>` per line. Non-real
  /// coefficients are written as `(re,im)`.
  std::string serialize() const;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

/// Parses the Hamiltonian text format, allowing `(re,im)` coefficients.
OperatorLCU parse_operator(std::istream& in);
OperatorLCU parse_operator(std::string_view text);

/// parse_operator plus the Hamiltonian check: every coefficient real.
OperatorLCU parse_hamiltonian(std::istream& in);
OperatorLCU parse_hamiltonian(std::string_view text);

/// lambda = sum_j |h_j|, an upper bound on the spectral norm.
double l1_norm(const OperatorLCU& op);

/// sum_j |h_j|^2, the variance scale of an LCU estimator.
double sum_sq_coefficients(const OperatorLCU& op);

/// Parameters of the affine map from physical to scaled energies.
struct ScalingParams {
  enum class Kind { spectral, l1 };

  Kind kind = Kind::spectral;
  double h_plus = 0.0;   ///< spectral kind: centre of the widened window
  double h_minus = 1.0;  ///< spectral kind: half-width of the widened window
  double lambda = 1.0;   ///< l1 kind: sum of |h_j|

  /// Energy subtracted before division (h_plus, or 0 for l1).
  double offset() const noexcept { return kind == Kind::spectral ? h_plus : 0.0; }
  /// Divisor of the map (h_minus, or lambda for l1).
  double width() const noexcept { return kind == Kind::spectral ? h_minus : lambda; }
};

struct ScaledOperator {
  OperatorLCU op;
  ScalingParams params;
};

/**
 * H_sc = (H - h_plus) / h_minus over bounds widened outward by
 * margin * (e_max - e_min) / 2 on each side. The shift lands on the
 * all-identity term. With margin > 0 and exact bounds every eigenvalue of
 * H_sc lies strictly inside (-1, 1).
 */
ScaledOperator scale_spectral(const OperatorLCU& op, double e_min, double e_max,
                              double margin = kDefaultMargin);

/// H_sc = H / lambda with lambda = l1_norm(op). Throws on the zero operator.
ScaledOperator scale_l1(const OperatorLCU& op);

double map_energy(const ScalingParams& params, double e);
cplx map_energy(const ScalingParams& params, cplx e);
double unmap_energy(const ScalingParams& params, double e_scaled);
cplx unmap_energy(const ScalingParams& params, cplx e_scaled);

/// Jordan-Wigner a_j = Z_0 ... Z_{j-1} (X_j + i Y_j) / 2. Orbital index is
/// qubit index; occupied is |1>.
OperatorLCU jw_annihilation(std::size_t orbital, std::size_t n_qubits);
OperatorLCU jw_creation(std::size_t orbital, std::size_t n_qubits);

/// n_j = a_j^dag a_j = (I - Z_j) / 2.
OperatorLCU jw_number(std::size_t orbital, std::size_t n_qubits);
/// N = sum_j (I - Z_j) / 2.
OperatorLCU number_operator(std::size_t n_qubits);

}  // namespace rvse
