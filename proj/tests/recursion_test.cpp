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


#include "rvse/recursion.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rvse/chebyshev.hpp"
#include "rvse/errors.hpp"
#include "test_support.hpp"

using namespace rvse;
namespace rt = rvse::testing;

namespace {

// Plain T_k(H)|chi> by the unnormalized three-term recursion.
std::vector<StateVector> unnormalized_chain(const OperatorLCU& h, const StateVector& chi,
                                            std::size_t K) {
  std::vector<StateVector> out{chi};
  if (K >= 1) out.push_back(apply_lcu(h, chi));
  for (std::size_t k = 2; k <= K; ++k) {
    out.push_back(2.0 * apply_lcu(h, out[k - 1]) - out[k - 2]);
  }
  return out;
}

OperatorLCU load(const std::string& name) { return parse_hamiltonian(rt::data_file(name)); }

}  // namespace

TEST(RecursionStep, FirstStepIsHamiltonianAction) {
  std::mt19937_64 rng(20);
  const auto h = rt::oracle_scaled(rt::random_hermitian(3, 8, rng));
  const auto chi = rt::random_state(3, rng);
  const auto s1 = first_step(h, {chi, 1.0});
  const auto hchi = apply_lcu(h, chi);
  EXPECT_NEAR(s1.norm, hchi.norm(), 1e-14);
  EXPECT_LT((s1.state - (1.0 / hchi.norm()) * hchi).norm(), 1e-13);
}

TEST(RecursionStep, NormMatchesUnnormalizedOracle) {
  std::mt19937_64 rng(21);
  const auto h = rt::oracle_scaled(rt::random_hermitian(3, 10, rng));
  const auto chi = rt::random_state(3, rng);
  const auto chain = unnormalized_chain(h, chi, 40);
  NormalizedChebState prev2{chi, 1.0};
  NormalizedChebState prev = first_step(h, prev2);
  for (std::size_t k = 2; k <= 40; ++k) {
    auto cur = recursion_step(h, prev, prev2, k);
    EXPECT_NEAR(cur.norm, chain[k].norm(), 1e-10 * std::max(1.0, chain[k].norm()));
    EXPECT_NEAR(cur.state.norm(), 1.0, 1e-12);
    prev2 = std::move(prev);
    prev = std::move(cur);
  }
}

TEST(RecursionStep, EigenstateClosure) {
  const auto h = parse_hamiltonian("0.6 Z");
  const auto chi = StateVector::basis("0");
  NormalizedChebState prev2{chi, 1.0};
  NormalizedChebState prev = first_step(h, prev2);
  for (std::size_t k = 2; k <= 60; ++k) {
    auto cur = recursion_step(h, prev, prev2, k);
    const double tk = chebyshev_t(0.6, k);
    EXPECT_NEAR(cur.norm, std::abs(tk), 1e-12);
    EXPECT_NEAR(std::abs(inner(chi, cur.state)), 1.0, 1e-12);
    EXPECT_NEAR(inner(chi, cur.state).real() * cur.norm, tk, 1e-12);
    prev2 = std::move(prev);
    prev = std::move(cur);
  }
}

TEST(RecursionStep, AnnihilationIsAnError) {
  // |01> has energy 0.5 - 0.5 = 0, so T_1 annihilates it.
  const auto h = parse_hamiltonian("0.5 ZI\n0.5 ZZ");
  try {
    run_rvse(h, StateVector::basis("01"), 3);
    FAIL() << "expected AnnihilationError";
  } catch (const AnnihilationError& e) {
    EXPECT_EQ(e.order(), 1u);
    EXPECT_LT(e.norm(), kAnnihilationThreshold);
  }
}

TEST(RunRvse, ZeroOrder) {
  std::mt19937_64 rng(22);
  const auto h = rt::oracle_scaled(rt::random_hermitian(2, 4, rng));
  const auto recs = run_rvse(h, rt::random_state(2, rng), 0);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].k, 0u);
  EXPECT_EQ(recs[0].norm, 1.0);
  EXPECT_EQ(recs[0].overlap, cplx(1.0));
}

TEST(RunRvse, EigenstateIdentity) {
  const auto h = parse_hamiltonian("0.3 ZI\n0.4 IZ");
  // |10>: -0.3 + 0.4 = 0.1
  const auto recs = run_rvse(h, StateVector::basis("10"), 80);
  for (const auto& r : recs) EXPECT_NEAR(r.moment().real(), chebyshev_t(0.1, r.k), 1e-12);
}

TEST(RunRvse, OracleEquivalenceAndInvariants) {
  std::mt19937_64 rng(23);
  for (std::size_t n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto h = rt::oracle_scaled(rt::random_hermitian(n, 3 * n, rng));
      const auto chi = rt::random_state(n, rng);
      const auto recs = run_rvse(h, chi, 200);
      const auto direct = moments_direct(h, chi, 200);
      ASSERT_EQ(recs.size(), 201u);
      EXPECT_LT(direct.max_imag_residue, 1e-10);
      for (const auto& r : recs) {
        EXPECT_NEAR(r.moment().real(), direct.values[r.k], 1e-9);
        EXPECT_LT(std::abs(r.moment().imag()), 1e-9);
        EXPECT_LE(std::abs(r.moment()), 1.0 + 1e-9);
        EXPECT_LE(std::abs(r.overlap), 1.0 + 1e-10);
      }
    }
  }
}

TEST(RunRvse, UnnormalizedInputIsNormalized) {
  std::mt19937_64 rng(24);
  const auto h = rt::oracle_scaled(rt::random_hermitian(3, 6, rng));
  const auto chi = rt::random_state(3, rng);
  const auto a = run_rvse(h, chi, 30);
  const auto b = run_rvse(h, 3.0 * chi, 30);
  for (std::size_t k = 0; k <= 30; ++k) {
    EXPECT_NEAR(std::abs(a[k].moment() - b[k].moment()), 0.0, 1e-12);
  }
}

TEST(RunRvse, KeepsThreeLiveStateVectors) {
  std::mt19937_64 rng(25);
  const auto h = rt::oracle_scaled(rt::random_hermitian(4, 12, rng));
  const auto chi = rt::random_state(4, rng);
  for (std::size_t K : {10, 100, 400}) {
    const long base = StateVector::live_instances();
    long peak = 0;
    run_rvse(h, chi, K, [&](const MomentRecord&) {
      peak = std::max(peak, StateVector::live_instances() - base);
    });
    EXPECT_LE(peak, 3) << "K=" << K;
    EXPECT_EQ(StateVector::live_instances(), base);
  }
}

TEST(RunRvse, ObserverSeesEveryRecord) {
  std::mt19937_64 rng(26);
  const auto h = rt::oracle_scaled(rt::random_hermitian(2, 4, rng));
  std::vector<MomentRecord> seen;
  const auto recs = run_rvse(h, rt::random_state(2, rng), 12,
                             [&](const MomentRecord& r) { seen.push_back(r); });
  ASSERT_EQ(seen.size(), recs.size());
  for (std::size_t k = 0; k < recs.size(); ++k) EXPECT_EQ(seen[k].moment(), recs[k].moment());
}

TEST(RunRvse, H2NormsMatchUnnormalizedOracle) {
  const auto h = rt::oracle_scaled(load("h2_minimal_4q.txt"));
  const auto chi = parse_state("|1000> + |0010> + 0.5|0100>", 4).state;
  const auto recs = run_rvse(h, chi, 50);
  const auto chain = unnormalized_chain(h, chi, 50);
  for (std::size_t k = 0; k <= 50; ++k) EXPECT_NEAR(recs[k].norm, chain[k].norm(), 1e-10);
}

TEST(ChebyshevStates, Invariants) {
  std::mt19937_64 rng(27);
  const auto h = rt::oracle_scaled(rt::random_hermitian(3, 9, rng));
  const auto chi = 2.0 * rt::random_state(3, rng);
  const auto seq = chebyshev_states(h, chi, 25);
  EXPECT_NEAR(seq.chi0_norm, 2.0, 1e-14);
  const auto chain = unnormalized_chain(h, (1.0 / 2.0) * chi, 25);
  const auto& chi_bar = seq.normalized_states[0];
  for (std::size_t k = 0; k <= 25; ++k) {
    EXPECT_NEAR(seq.normalized_states[k].norm(), 1.0, 1e-10);
    EXPECT_NEAR(seq.norms[k], chain[k].norm(), 1e-10);
    const cplx lhs = seq.norms[k] * inner(chi_bar, seq.normalized_states[k]);
    const cplx rhs = inner(chi_bar, chain[k]);
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-9);
  }
  const auto unit = chebyshev_states(h, chi_bar, 3);
  EXPECT_NEAR(unit.norms[0], 1.0, 1e-14);
}

TEST(AssembleExpectation, DeltaCoefficient) {
  std::mt19937_64 rng(28);
  const auto h = rt::oracle_scaled(rt::random_hermitian(2, 5, rng));
  const auto recs = run_rvse(h, rt::random_state(2, rng), 10);
  const auto v = assemble_expectation(recs, 1.7, [](std::size_t k) { return k == 0 ? 1.0 : 0.0; });
  EXPECT_NEAR(std::abs(v - 1.7), 0.0, 1e-15);
}

TEST(AssembleExpectation, SquareOnEigenstate) {
  const double e = -0.45;
  const auto h = parse_hamiltonian("-0.45 Z");
  const auto recs = run_rvse(h, StateVector::basis("0"), 10);
  const auto series = cheb_coeffs([](double w) { return w * w; }, 10);
  const auto v = assemble_expectation(recs, 2.0, [&](std::size_t k) { return series.coefficients[k]; });
  EXPECT_NEAR(v.real(), e * e * 2.0, 1e-12);
}

TEST(AssembleExpectation, ResolventMatchesEigendecomposition) {
  std::mt19937_64 rng(29);
  const auto h = rt::oracle_scaled(rt::random_hermitian(2, 6, rng));
  const auto chi = rt::random_state(2, rng);
  const cplx z(0.3, 0.1);
  const auto recs = run_rvse(h, chi, 3000);
  const auto v = assemble_expectation(recs, 1.0, [&](std::size_t k) { return resolvent_coeff(z, k); });
  const auto eig = rt::jacobi_eigen(rt::operator_dense(h));
  const cplx want = rt::spectral_sum(eig, chi, [&](double x) { return 1.0 / (z - x); });
  EXPECT_NEAR(std::abs(v - want), 0.0, 1e-4);
}

TEST(MomentsDirect, Examples) {
  std::mt19937_64 rng(30);
  const auto h = rt::oracle_scaled(rt::random_hermitian(3, 7, rng));
  const auto chi = rt::random_state(3, rng);
  const auto m = moments_direct(h, chi, 60);
  EXPECT_NEAR(m.values[0], 1.0, 1e-14);
  EXPECT_NEAR(m.values[1], inner(chi, apply_lcu(h, chi)).real(), 1e-14);
  const auto eig = rt::jacobi_eigen(rt::operator_dense(h));
  for (std::size_t k = 0; k <= 60; ++k) {
    const cplx want = rt::spectral_sum(eig, chi, [&](double x) { return chebyshev_t(x, k); });
    EXPECT_NEAR(m.values[k], want.real(), 1e-10);
  }
}
