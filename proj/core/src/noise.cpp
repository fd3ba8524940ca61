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


#include "rvse/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "rvse/errors.hpp"

namespace rvse {

namespace {

constexpr double kProbabilityTolerance = 1e-12;

double sample_component(double expectation, std::size_t shots, Rng& rng) {
  double p = 0.5 * (1.0 + expectation);
  if (p < -kProbabilityTolerance || p > 1.0 + kProbabilityTolerance) {
    throw std::domain_error("hadamard_estimate: component " + std::to_string(expectation) +
                            " outside [-1, 1]");
  }
  p = std::clamp(p, 0.0, 1.0);
  std::binomial_distribution<std::size_t> draw(shots, p);
  const auto plus = draw(rng);
  return (2.0 * static_cast<double>(plus) - static_cast<double>(shots)) /
         static_cast<double>(shots);
}

double phi_scale(const NoiseModel& model) {
  const double s = static_cast<double>(model.shots);
  return model.phi_convention == PhiConvention::paper_1_over_S ? 1.0 / s : 1.0 / std::sqrt(s);
}

void require_aligned(std::size_t a, std::size_t b, const char* where) {
  if (a != b) throw std::invalid_argument(std::string(where) + ": sequences differ in length");
}

}  // namespace

void NoiseModel::validate() const {
  if (mode != NoiseMode::exact && shots == 0) {
    throw std::invalid_argument("NoiseModel: shots must be >= 1");
  }
}

cplx hadamard_estimate(cplx true_overlap, std::size_t shots, Rng& rng) {
  if (shots == 0) throw std::invalid_argument("hadamard_estimate: shots must be >= 1");
  const double re = sample_component(true_overlap.real(), shots, rng);
  const double im = sample_component(true_overlap.imag(), shots, rng);
  return {re, im};
}

cplx lcu_estimate(const OperatorLCU& op, const StateVector& bra, const StateVector& ket,
                  std::size_t shots, Rng& rng) {
  cplx s{};
  for (const auto& t : op.terms()) {
    s += t.coeff * hadamard_estimate(pauli_matrix_element(bra, t.word, ket), shots, rng);
  }
  return s;
}

double lcu_variance_bound(std::span<const double> coeffs, std::size_t shots) {
  if (shots == 0) throw std::invalid_argument("lcu_variance_bound: shots must be >= 1");
  double s = 0.0;
  for (double c : coeffs) s += c * c;
  return s / static_cast<double>(shots);
}

double expected_abs_phi(double sigma_mu, double sigma_nu, PhiCoupling coupling) {
  const double var = sigma_mu * sigma_mu + sigma_nu * sigma_nu;
  if (coupling == PhiCoupling::same_draw) {
    // |g (1 + i)| = sqrt(2) |g| with g ~ N(0, var), and E|g| = sqrt(2 var / pi).
    return 2.0 * std::sqrt(var / std::numbers::pi);
  }
  // Rayleigh mean for two independent components of variance var.
  return std::sqrt(var * std::numbers::pi / 2.0);
}

EpsilonSequence epsilon_sequence(std::span<const double> norms_exact, double sum_c_sq,
                                 std::size_t shots, std::size_t K, PhiCoupling coupling) {
  if (norms_exact.size() != K + 1) {
    throw std::invalid_argument("epsilon_sequence: expected K+1 norms");
  }
  if (shots == 0) throw std::invalid_argument("epsilon_sequence: shots must be >= 1");
  const double s = static_cast<double>(shots);
  const double mu_scale = std::sqrt(sum_c_sq / s);
  const double nu_scale = 1.0 / std::sqrt(s);

  EpsilonSequence out;
  out.sigma_mu.assign(K + 1, 0.0);
  out.sigma_nu.assign(K + 1, 0.0);
  out.eps.assign(K + 1, 0.0);
  for (std::size_t k = 1; k <= K; ++k) {
    if (k == 1) {
      out.sigma_mu[1] = norms_exact[0] * mu_scale;
    } else {
      out.sigma_mu[k] = 2.0 * (norms_exact[k - 1] + out.eps[k - 1]) * mu_scale;
      out.sigma_nu[k] = (norms_exact[k - 2] + out.eps[k - 2]) * nu_scale;
    }
    out.eps[k] = expected_abs_phi(out.sigma_mu[k], out.sigma_nu[k], coupling);
  }
  return out;
}

std::vector<double> record_norms(std::span<const MomentRecord> records) {
  std::vector<double> n;
  n.reserve(records.size());
  for (const auto& r : records) n.push_back(r.norm);
  return n;
}

std::vector<NoisyMomentRecord> noisy_records(std::span<const MomentRecord> records,
                                             const NoiseModel& model, double sum_c_sq) {
  if (model.mode != NoiseMode::surrogate) {
    throw std::invalid_argument("noisy_records: model is not in surrogate mode");
  }
  model.validate();
  std::vector<NoisyMomentRecord> out;
  if (records.empty()) return out;
  const auto norms = record_norms(records);
  const auto eps = epsilon_sequence(norms, sum_c_sq, model.shots, records.size() - 1,
                                    model.coupling);
  Rng rng(model.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double scale = phi_scale(model);
  out.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const double re = scale * gauss(rng);
    const double im = model.coupling == PhiCoupling::same_draw ? re : scale * gauss(rng);
    out.push_back({records[i].k, records[i].norm + eps.eps[i], eps.eps[i],
                   records[i].overlap + cplx{re, im}});
  }
  return out;
}

std::vector<NoisyMomentRecord> bernoulli_records(const OperatorLCU& h_sc,
                                                 const StateVector& chi0, std::size_t K,
                                                 const NoiseModel& model) {
  if (model.mode != NoiseMode::bernoulli) {
    throw std::invalid_argument("bernoulli_records: model is not in bernoulli mode");
  }
  model.validate();
  const std::size_t S = model.shots;
  Rng rng(model.seed);
  std::vector<NoisyMomentRecord> out;
  out.reserve(K + 1);

  const StateVector ref = chi0.normalized();
  NormalizedChebState s0{ref, 1.0};
  out.push_back({0, 1.0, 0.0, hadamard_estimate(1.0, S, rng)});
  if (K == 0) return out;

  NormalizedChebState s1 = first_step(h_sc, s0);
  double nhat_prev2 = 1.0;
  double nhat_prev = std::abs(nhat_prev2 * lcu_estimate(h_sc, s1.state, s0.state, S, rng));
  out.push_back({1, nhat_prev, nhat_prev - s1.norm, hadamard_estimate(inner(ref, s1.state), S, rng)});

  for (std::size_t k = 2; k <= K; ++k) {
    NormalizedChebState s2 = recursion_step(h_sc, s1, s0, k);
    const cplx mu = lcu_estimate(h_sc, s2.state, s1.state, S, rng);
    const cplx nu = hadamard_estimate(inner(s2.state, s0.state), S, rng);
    const double nhat = std::abs(2.0 * nhat_prev * mu - nhat_prev2 * nu);
    out.push_back({k, nhat, nhat - s2.norm, hadamard_estimate(inner(ref, s2.state), S, rng)});
    nhat_prev2 = nhat_prev;
    nhat_prev = nhat;
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  return out;
}

double absolute_error_delta(const std::function<cplx(std::size_t)>& coeff,
                            std::span<const double> eps, std::span<const cplx> overlaps,
                            double chi0_norm) {
  require_aligned(eps.size(), overlaps.size(), "absolute_error_delta");
  cplx s{};
  for (std::size_t k = 0; k < eps.size(); ++k) s += coeff(k) * eps[k] * overlaps[k];
  return std::abs(chi0_norm * s);
}

cplx noisy_expectation_mean(const std::function<cplx(std::size_t)>& coeff,
                            std::span<const MomentRecord> records,
                            std::span<const double> eps, double chi0_norm) {
  require_aligned(records.size(), eps.size(), "noisy_expectation_mean");
  cplx s{};
  for (std::size_t i = 0; i < records.size(); ++i) {
    s += coeff(records[i].k) * (records[i].norm + eps[i]) * records[i].overlap;
  }
  return chi0_norm * s;
}

cplx noisy_expectation(const std::function<cplx(std::size_t)>& coeff,
                       std::span<const NoisyMomentRecord> records, double chi0_norm) {
  cplx s{};
  for (const auto& r : records) s += coeff(r.k) * r.norm_noisy * r.overlap_noisy;
  return chi0_norm * s;
}

}  // namespace rvse
