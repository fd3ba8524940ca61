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

#include "rvse/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rvse {

namespace {

double clamp_unit(double omega) {
  if (omega > 1.0 && omega <= 1.0 + 1e-12) return 1.0;
  if (omega < -1.0 && omega >= -1.0 - 1e-12) return -1.0;
  return omega;
}

}  // namespace

double chebyshev_t(double omega, std::size_t k) {
  omega = clamp_unit(omega);
  if (k == 0) return 1.0;
  double prev = 1.0, cur = omega;
  for (std::size_t j = 2; j <= k; ++j) {
    const double next = 2.0 * omega * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> chebyshev_t_all(double omega, std::size_t K) {
  omega = clamp_unit(omega);
  std::vector<double> t(K + 1);
  t[0] = 1.0;
  if (K >= 1) t[1] = omega;
  for (std::size_t k = 2; k <= K; ++k) t[k] = 2.0 * omega * t[k - 1] - t[k - 2];
  return t;
}

ChebSeries cheb_coeffs(const std::function<double(double)>& f, std::size_t K,
                       std::size_t n_quad) {
  if (n_quad == 0) n_quad = 4 * (K + 1);
  if (n_quad < 2 * (K + 1)) {
    throw std::invalid_argument("cheb_coeffs: n_quad=" + std::to_string(n_quad) +
                                " is below 2(K+1)=" + std::to_string(2 * (K + 1)));
  }
  std::vector<double> samples(n_quad);
  const double step = std::numbers::pi / static_cast<double>(n_quad);
  for (std::size_t j = 0; j < n_quad; ++j) {
    samples[j] = f(std::cos(step * (static_cast<double>(j) + 0.5)));
  }
  ChebSeries out;
  out.coefficients.resize(K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_quad; ++j) {
      // T_k(cos a) = cos(k a), evaluated directly at the node angle.
      s += samples[j] * std::cos(static_cast<double>(k) * step * (static_cast<double>(j) + 0.5));
    }
    const double weight = (k == 0 ? 1.0 : 2.0) / static_cast<double>(n_quad);
    out.coefficients[k] = weight * s;
  }
  return out;
}

cplx reconstruct(const ChebSeries& series, double omega) {
  const auto& c = series.coefficients;
  if (c.empty()) return 0.0;
  omega = clamp_unit(omega);
  cplx b1{}, b2{};
  for (std::size_t k = c.size() - 1; k >= 1; --k) {
    const cplx b0 = c[k] + 2.0 * omega * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return c[0] + omega * b1 - b2;
}

std::vector<double> dirichlet_kernel(std::size_t K) { return std::vector<double>(K + 1, 1.0); }

double kpm_reconstruct(const MomentSeries& moments, std::span<const double> kernel,
                       double omega) {
  if (kernel.size() != moments.values.size()) {
    throw std::invalid_argument("kpm_reconstruct: kernel length does not match moments");
  }
  if (!(std::abs(omega) < 1.0)) {
    throw std::domain_error("kpm_reconstruct: |omega| must be < 1");
  }
  const auto& mu = moments.values;
  if (mu.empty()) return 0.0;
  double s = kernel[0] * mu[0];
  double prev = 1.0, cur = omega;
  for (std::size_t k = 1; k < mu.size(); ++k) {
    s += 2.0 * kernel[k] * mu[k] * cur;
    const double next = 2.0 * omega * cur - prev;
    prev = cur;
    cur = next;
  }
  return s / (std::numbers::pi * std::sqrt(1.0 - omega * omega));
}

ResolventExpansion::ResolventExpansion(cplx z_scaled) : z_(z_scaled) {
  if (z_.imag() == 0.0) {
    throw std::domain_error("resolvent expansion needs Im z != 0 (pole guard)");
  }
  // Principal acos has Im < 0 in the upper half plane.
  theta_ = std::acos(z_);
  if (z_.imag() < 0.0) theta_ = -theta_;
  ratio_ = std::exp(cplx{0.0, -1.0} * theta_);
  prefactor_ = cplx{0.0, -1.0} / std::sin(theta_);
}

cplx ResolventExpansion::coefficient(std::size_t k) const {
  const double weight = k == 0 ? 1.0 : 2.0;
  return prefactor_ * weight * std::exp(cplx{0.0, -static_cast<double>(k)} * theta_);
}

cplx ResolventExpansion::sum(std::span<const cplx> moments) const {
  if (moments.empty()) return 0.0;
  cplx s = moments[0];
  cplx power = 1.0;
  for (std::size_t k = 1; k < moments.size(); ++k) {
    power *= ratio_;
    s += 2.0 * power * moments[k];
  }
  return prefactor_ * s;
}

cplx ResolventExpansion::sum(std::span<const double> moments) const {
  if (moments.empty()) return 0.0;
  cplx s = moments[0];
  cplx power = 1.0;
  for (std::size_t k = 1; k < moments.size(); ++k) {
    power *= ratio_;
    s += 2.0 * power * moments[k];
  }
  return prefactor_ * s;
}

cplx resolvent_coeff(cplx z_scaled, std::size_t k) {
  return ResolventExpansion(z_scaled).coefficient(k);
}

}  // namespace rvse
