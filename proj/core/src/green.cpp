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


#include "rvse/green.hpp"

#include <omp.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rvse/chebyshev.hpp"
#include "rvse/errors.hpp"

namespace rvse {

namespace {

constexpr double kPoleWeightFloor = 1e-14;
// Decorrelates the removal-branch stream from the attachment one.
constexpr std::uint64_t kRemoveSeedOffset = 0x9E3779B97F4A7C15ULL;

BranchState branch_state(const OperatorLCU& op, const StateVector& ground) {
  BranchState b{apply_lcu(op, ground), 0.0};
  b.norm = b.state.norm();
  return b;
}

struct BranchMoments {
  std::vector<cplx> exact;
  std::vector<cplx> noisy;
  std::vector<cplx> eps_overlap;
  double weight = 0.0;  ///< ||chi0||^2 / width
};

SpectralBranch run_branch(const OperatorLCU& h_sc, BranchState chi0, std::size_t K,
                          NoiseModel model) {
  SpectralBranch b{std::move(chi0), {}, {}, {}};
  if (b.chi0.vanishes()) return b;
  b.records = run_rvse(h_sc, b.chi0.state, K);
  switch (model.mode) {
    case NoiseMode::exact:
      b.eps.assign(b.records.size(), 0.0);
      break;
    case NoiseMode::surrogate: {
      b.noisy = noisy_records(b.records, model, sum_sq_coefficients(h_sc));
      for (const auto& r : b.noisy) b.eps.push_back(r.eps);
      break;
    }
    case NoiseMode::bernoulli: {
      b.noisy = bernoulli_records(h_sc, b.chi0.state, K, model);
      for (const auto& r : b.noisy) b.eps.push_back(r.eps);
      break;
    }
  }
  return b;
}

BranchMoments branch_moments(const SpectralBranch& b, double width) {
  BranchMoments m;
  if (b.records.empty()) return m;
  m.weight = b.chi0.norm * b.chi0.norm / width;
  for (std::size_t k = 0; k < b.records.size(); ++k) {
    const auto& r = b.records[k];
    m.exact.push_back(r.moment());
    m.eps_overlap.push_back(b.eps[k] * r.overlap);
    m.noisy.push_back(b.noisy.empty() ? r.moment()
                                      : b.noisy[k].norm_noisy * b.noisy[k].overlap_noisy);
  }
  return m;
}

}  // namespace

void SpectralConfig::validate() const {
  if (!(eta > 0.0)) throw std::invalid_argument("SpectralConfig: eta must be > 0");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("SpectralConfig: grid must be strictly increasing");
    }
  }
}

BranchState attachment_state(const StateVector& ground, std::size_t orbital) {
  return branch_state(jw_creation(orbital, ground.n_qubits()), ground);
}

BranchState removal_state(const StateVector& ground, std::size_t orbital) {
  return branch_state(jw_annihilation(orbital, ground.n_qubits()), ground);
}

cplx resolvent_expectation(std::span<const MomentRecord> records, cplx z_sc) {
  if (!(z_sc.imag() > 0.0)) {
    throw std::domain_error("resolvent_expectation: Im z must be > 0");
  }
  std::vector<cplx> moments;
  moments.reserve(records.size());
  for (const auto& r : records) moments.push_back(r.moment());
  return ResolventExpansion(z_sc).sum(moments);
}

cplx resolvent_expectation(const OperatorLCU& h_sc, const StateVector& chi0, cplx z_sc,
                           std::size_t K) {
  return resolvent_expectation(run_rvse(h_sc, chi0, K), z_sc);
}

std::vector<LorentzianPole> lorentzian_poles(const EigenDecomposition& decomp,
                                             const StateVector& ground, double e0,
                                             std::size_t orbital) {
  const auto att = attachment_state(ground, orbital);
  const auto rem = removal_state(ground, orbital);
  std::vector<LorentzianPole> poles;
  for (std::size_t n = 0; n < decomp.eigenvalues.size(); ++n) {
    const double en = decomp.eigenvalues[n];
    const double wa = std::norm(inner(decomp.eigenvectors[n], att.state));
    const double wr = std::norm(inner(decomp.eigenvectors[n], rem.state));
    if (wa > kPoleWeightFloor) {
      poles.push_back({LorentzianPole::Branch::attach, en - e0, wa});
    }
    if (wr > kPoleWeightFloor) {
      poles.push_back({LorentzianPole::Branch::remove, e0 - en, wr});
    }
  }
  return poles;
}

double lorentzian_spectral(std::span<const LorentzianPole> poles, double energy, double eta) {
  double s = 0.0;
  for (const auto& p : poles) {
    const double d = energy - p.position;
    s += p.weight * eta / (d * d + eta * eta);
  }
  return s / std::numbers::pi;
}

std::string to_string(EaIpEntry::Label label) {
  return label == EaIpEntry::Label::EA ? "EA" : "IP";
}

std::vector<EaIpEntry> ea_ip_table(const OperatorLCU& h, std::size_t n_particles) {
  if (n_particles == 0 || n_particles >= h.n_qubits()) {
    throw NumericGuardError("ea_ip_table: sectors N-1 and N+1 must both exist");
  }
  const auto neutral = sector_eigenvalues(h, n_particles);
  const auto plus = sector_eigenvalues(h, n_particles + 1);
  const auto minus = sector_eigenvalues(h, n_particles - 1);
  const double e0 = neutral.front();
  std::vector<EaIpEntry> table;
  for (std::size_t a = 0; a < plus.size(); ++a) {
    table.push_back({EaIpEntry::Label::EA, a, e0 - plus[a]});
  }
  for (std::size_t i = 0; i < minus.size(); ++i) {
    table.push_back({EaIpEntry::Label::IP, i, minus[i] - e0});
  }
  return table;
}

SpectralResult spectral_function(const OperatorLCU& h, const SpectralConfig& config,
                                 const NoiseModel& model) {
  config.validate();
  model.validate();
  const std::size_t n = h.n_qubits();
  if (config.orbital >= n) throw std::out_of_range("spectral_function: orbital out of range");
  if (!h.is_hermitian()) throw std::invalid_argument("spectral_function: H is not Hermitian");

  const auto decomp = exact_diagonalize(h);
  const auto ground = ground_state_in_sector(decomp, config.n_particles, n);
  if (ground.degeneracy > 1) {
    throw NumericGuardError("spectral_function: " + std::to_string(ground.degeneracy) +
                            "-fold degenerate ground state in the N sector");
  }
  const auto scaled = resolve_scaling(h, config.scaling);
  const double width = scaled.params.width();

  SpectralResult res;
  res.e0 = ground.energy;
  res.params = scaled.params;
  res.grid = config.grid;
  res.poles = lorentzian_poles(decomp, ground.state, ground.energy, config.orbital);
  res.table = ea_ip_table(h, config.n_particles);

  NoiseModel remove_model = model;
  remove_model.seed = model.seed + kRemoveSeedOffset;
  res.attach = run_branch(scaled.op, attachment_state(ground.state, config.orbital), config.K,
                          model);
  res.remove = run_branch(scaled.op, removal_state(ground.state, config.orbital), config.K,
                          remove_model);
  const auto att = branch_moments(res.attach, width);
  const auto rem = branch_moments(res.remove, width);

  const std::size_t m = config.grid.size();
  res.grid_scaled.resize(m);
  res.a_values.resize(m);
  res.a_attach.resize(m);
  res.a_remove.resize(m);
  res.a_noiseless.resize(m);
  res.delta_values.resize(m);
  res.exact_reference.resize(m);

  const double inv_pi = 1.0 / std::numbers::pi;
  const double e0 = ground.energy;
  const double eta = config.eta;
  const long long count = static_cast<long long>(m);
  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
  for (long long i = 0; i < count; ++i) {
    const double e = config.grid[static_cast<std::size_t>(i)];
    const cplx z_plus = map_energy(scaled.params, cplx{e, eta} + e0);
    const cplx z_minus = map_energy(scaled.params, -cplx{e, eta} + e0);
    cplx g_att{}, g_att_exact{}, d_att{};
    cplx g_rem{}, g_rem_exact{}, d_rem{};
    if (!att.exact.empty()) {
      const ResolventExpansion r(z_plus);
      g_att = att.weight * r.sum(att.noisy);
      g_att_exact = att.weight * r.sum(att.exact);
      d_att = att.weight * r.sum(att.eps_overlap);
    }
    if (!rem.exact.empty()) {
      const ResolventExpansion r(z_minus);
      g_rem = rem.weight * r.sum(rem.noisy);
      g_rem_exact = rem.weight * r.sum(rem.exact);
      d_rem = rem.weight * r.sum(rem.eps_overlap);
    }
    const auto idx = static_cast<std::size_t>(i);
    res.grid_scaled[idx] = z_plus.real();
    res.a_attach[idx] = -inv_pi * g_att.imag();
    res.a_remove[idx] = inv_pi * g_rem.imag();
    res.a_values[idx] = res.a_attach[idx] + res.a_remove[idx];
    res.a_noiseless[idx] = -inv_pi * (g_att_exact - g_rem_exact).imag();
    res.delta_values[idx] = inv_pi * (std::abs(d_att) + std::abs(d_rem));
    res.exact_reference[idx] = lorentzian_spectral(res.poles, e, eta);
  }
  return res;
}

}  // namespace rvse
