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


#include "rvse/autocorr.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rvse {

namespace {

constexpr double kRescaleAbove = 1e250;
constexpr double kSmallArgument = 1e-6;

// Leading two terms of the power series; exact to double precision for
// t < kSmallArgument.
double bessel_series_small(std::size_t k, double t) {
  const double half = 0.5 * t;
  const double kk = static_cast<double>(k);
  const double lead = std::exp(kk * std::log(half) - std::lgamma(kk + 1.0));
  return lead * (1.0 - half * half / (kk + 1.0));
}

}  // namespace

std::vector<double> bessel_j_all(std::size_t K, double t) {
  if (t < 0.0) throw std::domain_error("bessel_j_all: t must be >= 0");
  std::vector<double> j(K + 1, 0.0);
  if (t == 0.0) {
    j[0] = 1.0;
    return j;
  }
  if (t < kSmallArgument) {
    for (std::size_t k = 0; k <= K; ++k) j[k] = bessel_series_small(k, t);
    return j;
  }
  const double top = std::max(static_cast<double>(K), t);
  std::size_t start = static_cast<std::size_t>(top + 20.0 + std::sqrt(60.0 * top));
  start += start % 2;

  double above = 0.0, cur = 1e-300, norm = 0.0;
  for (std::size_t k = start; k > 0; --k) {
    // cur holds J_k; step down to J_{k-1}.
    const double below = 2.0 * static_cast<double>(k) / t * cur - above;
    above = cur;
    cur = below;
    const std::size_t km1 = k - 1;
    if (km1 <= K) j[km1] = cur;
    if (km1 % 2 == 0 && km1 > 0) norm += 2.0 * cur;
    if (std::abs(cur) > kRescaleAbove) {
      const double s = 1.0 / kRescaleAbove;
      cur *= s;
      above *= s;
      norm *= s;
      for (std::size_t q = km1; q <= K; ++q) j[q] *= s;
    }
  }
  norm += cur;  // J_0
  for (auto& v : j) v /= norm;
  return j;
}

double bessel_j(std::size_t k, double t) { return bessel_j_all(k, t)[k]; }

double truncation_bound(std::size_t K, double t) {
  if (t < 0.0) throw std::domain_error("truncation_bound: t must be >= 0");
  if (t == 0.0) return 0.0;
  const double n = static_cast<double>(K) + 1.0;
  const double log_bound = std::log(4.0) + n * std::log(0.5 * t) - std::lgamma(n + 1.0);
  return log_bound >= std::log(2.0) ? 2.0 : std::exp(log_bound);
}

std::size_t choose_k(double t_max, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("choose_k: epsilon must lie in (0, 1)");
  }
  std::size_t K = 0;
  while (truncation_bound(K, t_max) > epsilon) ++K;
  return K;
}

std::vector<cplx> time_evolution_coeffs(std::size_t K, double t) {
  const auto j = bessel_j_all(K, t);
  static constexpr cplx kPhase[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  std::vector<cplx> c(K + 1);
  for (std::size_t k = 0; k <= K; ++k) {
    c[k] = (k == 0 ? 1.0 : 2.0) * kPhase[k % 4] * j[k];
  }
  return c;
}

void AutocorrConfig::validate() const {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (t_grid[i] < 0.0) throw std::invalid_argument("AutocorrConfig: negative time");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) {
      throw std::invalid_argument("AutocorrConfig: times must increase");
    }
  }
}

cplx autocorr_exact(const EigenDecomposition& decomp, const StateVector& psi, double t) {
  cplx c{};
  for (std::size_t n = 0; n < decomp.eigenvalues.size(); ++n) {
    const double w = std::norm(inner(decomp.eigenvectors[n], psi));
    c += w * std::exp(cplx{0.0, -decomp.eigenvalues[n] * t});
  }
  return c;
}

AutocorrResult autocorrelation(const OperatorLCU& h_sc, const StateVector& psi,
                               const AutocorrConfig& config, const NoiseModel& model) {
  config.validate();
  model.validate();
  AutocorrResult res;
  res.t_grid = config.t_grid;
  const double t_max = config.t_grid.empty() ? 0.0 : config.t_grid.back();
  res.K = config.auto_k ? choose_k(std::max(t_max, 1e-300), config.epsilon_target) : config.K;
  if (static_cast<double>(res.K) < std::ceil(t_max)) {
    res.warnings.push_back("K=" + std::to_string(res.K) + " is below ceil(t_max)=" +
                           std::to_string(static_cast<long long>(std::ceil(t_max))) +
                           "; the expansion has not converged");
  }

  const StateVector chi0 = psi.normalized();
  res.records = run_rvse(h_sc, chi0, res.K);
  std::vector<double> eps(res.records.size(), 0.0);
  switch (model.mode) {
    case NoiseMode::exact:
      break;
    case NoiseMode::surrogate:
      res.noisy = noisy_records(res.records, model, sum_sq_coefficients(h_sc));
      break;
    case NoiseMode::bernoulli:
      res.noisy = bernoulli_records(h_sc, chi0, res.K, model);
      break;
  }
  for (std::size_t k = 0; k < res.noisy.size(); ++k) eps[k] = res.noisy[k].eps;

  std::vector<cplx> exact_m, noisy_m, eps_m;
  for (std::size_t k = 0; k < res.records.size(); ++k) {
    const auto& r = res.records[k];
    exact_m.push_back(r.moment());
    noisy_m.push_back(res.noisy.empty() ? r.moment()
                                        : res.noisy[k].norm_noisy * res.noisy[k].overlap_noisy);
    eps_m.push_back(eps[k] * r.overlap);
  }

  const auto decomp = exact_diagonalize(h_sc);
  const std::size_t m = res.t_grid.size();
  res.c_approx.resize(m);
  res.c_noisy.resize(m);
  res.c_exact.resize(m);
  res.delta.resize(m);
  res.bound.resize(m);
  const long long count = static_cast<long long>(m);
  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
  for (long long i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const double t = res.t_grid[idx];
    const auto c = time_evolution_coeffs(res.K, t);
    cplx a{}, b{}, d{};
    for (std::size_t k = 0; k <= res.K; ++k) {
      a += c[k] * exact_m[k];
      b += c[k] * noisy_m[k];
      d += c[k] * eps_m[k];
    }
    res.c_approx[idx] = a;
    res.c_noisy[idx] = b;
    res.delta[idx] = std::abs(d);
    // <psi|psi> = 1 for the normalized input; avoid eigenvector round-off at t = 0.
    res.c_exact[idx] = t == 0.0 ? cplx{1.0} : autocorr_exact(decomp, chi0, t);
    res.bound[idx] = truncation_bound(res.K, t);
  }
  return res;
}

}  // namespace rvse
