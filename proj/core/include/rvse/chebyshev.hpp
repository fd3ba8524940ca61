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

#include "rvse/pauli.hpp"

namespace rvse {

/// T_k(omega) by the three-term recurrence. Arguments within 1e-12 outside
/// [-1, 1] are clamped onto the interval.
double chebyshev_t(double omega, std::size_t k);

/// T_0(omega) .. T_K(omega).
std::vector<double> chebyshev_t_all(double omega, std::size_t K);

/// Coefficients c_0 .. c_K of sum_k c_k T_k(omega).
struct ChebSeries {
  std::vector<cplx> coefficients;

  std::size_t order() const noexcept {
    return coefficients.empty() ? 0 : coefficients.size() - 1;
  }
};

/**
 * Chebyshev projection of f on [-1, 1] by Gauss-Chebyshev quadrature:
 *
 *   c_k = (2 - delta_k0) / n_quad * sum_j f(x_j) T_k(x_j),
 *   x_j = cos(pi (j + 1/2) / n_quad).
 *
 * n_quad = 0 selects 4 (K + 1). Throws std::invalid_argument when
 * n_quad < 2 (K + 1).
 */
ChebSeries cheb_coeffs(const std::function<double(double)>& f, std::size_t K,
                       std::size_t n_quad = 0);

/// sum_k c_k T_k(omega) by Clenshaw's recurrence.
cplx reconstruct(const ChebSeries& series, double omega);

/// Chebyshev moments mu_k = <chi_0|T_k(H)|chi_0>.
struct MomentSeries {
  std::vector<double> values;
  /// Largest |Im| seen while forming the moments (zero if never complex).
  double max_imag_residue = 0.0;
};

/// g_k = 1 for k = 0 .. K.
std::vector<double> dirichlet_kernel(std::size_t K);

/**
 * Kernel-damped density (1 / (pi sqrt(1 - w^2))) [g_0 mu_0 + 2 sum g_k mu_k T_k(w)].
 * Throws std::domain_error for |omega| >= 1 and std::invalid_argument when
 * the kernel length does not match the moments.
 */
double kpm_reconstruct(const MomentSeries& moments, std::span<const double> kernel,
                       double omega);

/**
 * Resolvent expansion 1/(z - x) = sum_k c_k(z) T_k(x) for x in [-1, 1]:
 *
 *   c_k(z) = (-i / sin(theta)) (2 - delta_k0) exp(-i k theta),  cos(theta) = z,
 *
 * where theta is the arccos branch with Im(theta) < 0, so |exp(-i theta)| < 1
 * and the series decays. For Im z > 0 this is the principal branch; for
 * Im z < 0 it is its negative. Throws std::domain_error when Im z == 0.
 */
class ResolventExpansion {
 public:
  explicit ResolventExpansion(cplx z_scaled);

  cplx z() const noexcept { return z_; }
  /// exp(-i theta); |ratio| < 1.
  cplx ratio() const noexcept { return ratio_; }
  /// -i / sin(theta).
  cplx prefactor() const noexcept { return prefactor_; }

  cplx coefficient(std::size_t k) const;

  /// sum_{k <= K} c_k(z) m_k for complex moments m_0 .. m_K.
  cplx sum(std::span<const cplx> moments) const;
  cplx sum(std::span<const double> moments) const;

 private:
  cplx z_;
  cplx theta_;
  cplx ratio_;
  cplx prefactor_;
};

/// Single resolvent coefficient c_k(z); see ResolventExpansion.
cplx resolvent_coeff(cplx z_scaled, std::size_t k);

}  // namespace rvse
