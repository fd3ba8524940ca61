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


#include "rvse/statevec.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rvse/errors.hpp"
#include "test_support.hpp"

using namespace rvse;
namespace rt = rvse::testing;

namespace {

double distance(const StateVector& a, const StateVector& b) { return (a - b).norm(); }

StateVector from(std::size_t n, std::vector<cplx> amps) { return StateVector(n, std::move(amps)); }

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

TEST(StateVector, Construction) {
  const StateVector v(3);
  EXPECT_EQ(v.dim(), 8u);
  EXPECT_EQ(v.norm(), 0.0);
  EXPECT_THROW(StateVector(2, std::vector<cplx>(3)), std::invalid_argument);
  EXPECT_THROW(StateVector(kMaxStateQubits + 1), NumericGuardError);
  EXPECT_EQ(StateVector::basis("10").amplitudes()[2], cplx(1.0));
  EXPECT_TRUE(StateVector::basis(3, 5).is_normalized());
  EXPECT_THROW(StateVector(2).normalized(), NumericGuardError);
}

TEST(ApplyPauli, SingleQubitExamples) {
  const auto zero = StateVector::basis("0"), one = StateVector::basis("1");
  EXPECT_LT(distance(apply_pauli(PauliWord::parse("X"), zero), one), 1e-15);
  const auto plus = from(1, {kInvSqrt2, kInvSqrt2});
  const auto minus = from(1, {kInvSqrt2, -kInvSqrt2});
  EXPECT_LT(distance(apply_pauli(PauliWord::parse("Z"), plus), minus), 1e-15);
  EXPECT_LT(distance(apply_pauli(PauliWord::parse("Y"), zero), cplx(0, 1) * one), 1e-15);
  EXPECT_LT(distance(apply_pauli(PauliWord::parse("Y"), one), cplx(0, -1) * zero), 1e-15);
}

TEST(ApplyPauli, QubitZeroIsMostSignificant) {
  const auto out = apply_pauli(PauliWord::parse("XI"), StateVector::basis(2, 0));
  EXPECT_EQ(out[2], cplx(1.0));
}

TEST(ApplyPauli, PreservesNormAndChecksDimension) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto psi = rt::random_state(5, rng);
    const auto w = PauliWord::parse(rt::random_word(5, rng));
    EXPECT_NEAR(apply_pauli(w, psi).norm(), 1.0, 1e-14);
  }
  EXPECT_THROW(apply_pauli(PauliWord::parse("XX"), StateVector(3)), std::invalid_argument);
}

TEST(ApplyLcu, Examples) {
  std::mt19937_64 rng(2);
  const auto psi = rt::random_state(2, rng);
  EXPECT_LT(distance(apply_lcu(parse_hamiltonian("1 II"), psi), psi), 1e-15);
  const auto out = apply_lcu(parse_hamiltonian("0.5 Z"), StateVector::basis("0"));
  EXPECT_LT(distance(out, 0.5 * StateVector::basis("0")), 1e-15);
  EXPECT_THROW(apply_lcu(parse_hamiltonian("1 Z"), StateVector(2)), std::invalid_argument);
}

// Exhaustive over basis inputs for every n <= 3.
TEST(ApplyLcu, MatchesDenseOracle) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      auto op = rt::random_hermitian(n, 6, rng);
      op = op + parse_operator("(0.3,0.7) " + rt::random_word(n, rng));
      const auto dense = rt::operator_dense(op);
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
        const auto psi = StateVector::basis(n, b);
        const auto got = apply_lcu(op, psi);
        const auto want = rt::matvec(dense, psi.amplitudes());
        for (std::size_t i = 0; i < want.size(); ++i) {
          EXPECT_NEAR(std::abs(got[i] - want[i]), 0.0, 1e-12);
        }
      }
    }
  }
}

TEST(ApplyLcu, AccumulateMatchesApply) {
  std::mt19937_64 rng(4);
  const auto op = rt::random_hermitian(4, 12, rng);
  const auto psi = rt::random_state(4, rng);
  auto out = rt::random_state(4, rng);
  const auto start = out;
  accumulate_lcu(op, cplx(2.0, -1.0), psi, out);
  EXPECT_LT(distance(out, start + cplx(2.0, -1.0) * apply_lcu(op, psi)), 1e-13);
  EXPECT_THROW(accumulate_lcu(op, 1.0, out, out), std::invalid_argument);
}

TEST(ApplyLcu, Hermiticity) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = rt::random_hermitian(4, 10, rng);
    const auto phi = rt::random_state(4, rng), psi = rt::random_state(4, rng);
    const cplx lhs = inner(phi, apply_lcu(h, psi));
    const cplx rhs = std::conj(inner(psi, apply_lcu(h, phi)));
    EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
  }
}

TEST(Inner, Examples) {
  std::mt19937_64 rng(6);
  const auto psi = rt::random_state(3, rng);
  EXPECT_NEAR(std::abs(inner(psi, psi) - 1.0), 0.0, 1e-15);
  EXPECT_EQ(inner(StateVector::basis("0"), StateVector::basis("1")), cplx(0.0));
  const auto phi = from(1, {kInvSqrt2, cplx(0, kInvSqrt2)});
  EXPECT_NEAR(std::abs(inner(StateVector::basis("0"), phi) - kInvSqrt2), 0.0, 1e-15);
  EXPECT_THROW(inner(StateVector(1), StateVector(2)), std::invalid_argument);
}

TEST(Inner, ConjugateLinearAndCauchySchwarz) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = rt::random_state(3, rng), b = rt::random_state(3, rng);
    const cplx s(0.3, -1.2);
    EXPECT_NEAR(std::abs(inner(s * a, b) - std::conj(s) * inner(a, b)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(inner(a, s * b) - s * inner(a, b)), 0.0, 1e-14);
    const auto c = 2.5 * a;
    EXPECT_LE(std::abs(inner(c, b)), c.norm() * b.norm() + 1e-12);
  }
}

TEST(PauliMatrixElement, MatchesApply) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = rt::random_state(3, rng), b = rt::random_state(3, rng);
    const auto w = PauliWord::parse(rt::random_word(3, rng));
    EXPECT_NEAR(std::abs(pauli_matrix_element(a, w, b) - inner(a, apply_pauli(w, b))), 0.0,
                1e-14);
  }
}

TEST(ExactDiagonalize, Examples) {
  const auto z = exact_diagonalize(parse_hamiltonian("1 Z"));
  ASSERT_EQ(z.eigenvalues.size(), 2u);
  EXPECT_NEAR(z.eigenvalues[0], -1.0, 1e-14);
  EXPECT_NEAR(z.eigenvalues[1], 1.0, 1e-14);

  const auto xx = exact_diagonalize(parse_hamiltonian("0.5 XX"));
  const std::vector<double> want{-0.5, -0.5, 0.5, 0.5};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(xx.eigenvalues[i], want[i], 1e-14);
}

TEST(ExactDiagonalize, Errors) {
  EXPECT_THROW(exact_diagonalize(parse_operator("(0,1) X")), std::invalid_argument);
  const std::string big(kMaxDiagQubits + 1, 'Z');
  EXPECT_THROW(exact_diagonalize(parse_hamiltonian("1 " + big)), NumericGuardError);
}

TEST(ExactDiagonalize, MatchesJacobiOracleAndInvariants) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = rt::random_hermitian(3, 9, rng);
    const auto d = exact_diagonalize(h);
    const auto oracle = rt::jacobi_spectrum(rt::operator_dense(h));
    ASSERT_EQ(oracle.size(), d.eigenvalues.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      EXPECT_NEAR(d.eigenvalues[i], oracle[i], 1e-10);
      if (i > 0) EXPECT_LE(d.eigenvalues[i - 1], d.eigenvalues[i]);
    }
    for (std::size_t i = 0; i < d.eigenvectors.size(); ++i) {
      const auto& v = d.eigenvectors[i];
      const auto residual = apply_lcu(h, v) - d.eigenvalues[i] * v;
      for (auto a : residual.amplitudes()) EXPECT_LT(std::abs(a), 1e-9);
      for (std::size_t j = 0; j <= i; ++j) {
        const cplx o = inner(d.eigenvectors[j], v);
        EXPECT_NEAR(std::abs(o - (i == j ? 1.0 : 0.0)), 0.0, 1e-10);
      }
    }
  }
}

TEST(ExactDiagonalize, Parseval) {
  std::mt19937_64 rng(10);
  const auto d = exact_diagonalize(rt::random_hermitian(4, 14, rng));
  const auto psi = 1.7 * rt::random_state(4, rng);
  double s = 0.0;
  for (const auto& v : d.eigenvectors) s += std::norm(inner(v, psi));
  EXPECT_NEAR(s, std::norm(psi.norm()), 1e-10);
}

TEST(Sector, NumberOperatorExamples) {
  const auto n3 = number_operator(3);
  const auto g0 = ground_state_in_sector(exact_diagonalize(n3), 0, 3);
  EXPECT_NEAR(g0.energy, 0.0, 1e-12);
  EXPECT_NEAR(std::abs(g0.state[0]), 1.0, 1e-12);

  const auto g1 = ground_state_in_sector(exact_diagonalize(number_operator(2)), 1, 2);
  EXPECT_NEAR(g1.energy, 1.0, 1e-12);
  EXPECT_NEAR(std::norm(g1.state[1]) + std::norm(g1.state[2]), 1.0, 1e-12);
  EXPECT_NEAR(number_expectation(g1.state), 1.0, 1e-12);
}

TEST(Sector, MatchesBruteForceScan) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = rt::random_number_conserving(4, rng);
    const auto d = exact_diagonalize(h);
    for (std::size_t n = 0; n <= 4; ++n) {
      // Brute force: every eigenvector of the embedded real problem, keep
      // those whose number expectation is an integer equal to n.
      const auto eig = rt::jacobi_eigen(rt::operator_dense(h));
      double best = 1e300;
      for (std::size_t i = 0; i < eig.values.size(); ++i) {
        const auto& col = eig.vectors[i];
        const std::size_t dim = col.size() / 2;
        double num = 0.0, w = 0.0;
        for (std::size_t b = 0; b < dim; ++b) {
          const double p = col[b] * col[b] + col[b + dim] * col[b + dim];
          num += p * std::popcount(b);
          w += p;
        }
        if (std::abs(num / w - static_cast<double>(n)) < 1e-6) best = std::min(best, eig.values[i]);
      }
      const auto g = ground_state_in_sector(d, n, 4);
      EXPECT_NEAR(g.energy, best, 1e-9);
      EXPECT_NEAR(number_expectation(g.state), static_cast<double>(n), 1e-8);
      const auto residual = apply_lcu(h, g.state) - g.energy * g.state;
      EXPECT_LT(residual.norm(), 1e-9);
      const auto sec = sector_eigenvalues(h, n);
      ASSERT_FALSE(sec.empty());
      EXPECT_NEAR(sec.front(), best, 1e-9);
    }
  }
}

TEST(Sector, NoEigenvectorInSector) {
  EXPECT_THROW(ground_state_in_sector(exact_diagonalize(number_operator(2)), 3, 2),
               NumericGuardError);
}

TEST(ParseState, Examples) {
  const auto a = parse_state("1|10⟩", 2);
  EXPECT_LT(distance(a.state, StateVector::basis("10")), 1e-15);

  const auto b = parse_state("0.70710678|1100> + 0.70710678|0011>", 4);
  EXPECT_NEAR(b.state.norm(), 1.0, 1e-15);
  EXPECT_NEAR(b.state[0b1100].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(b.state[0b0011].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(b.raw_norm, 0.70710678 * std::sqrt(2.0), 1e-12);

  const auto c = parse_state("(0,1)|1>", 1);
  EXPECT_EQ(c.state[1], cplx(0.0, 1.0));
}

TEST(ParseState, Variants) {
  const auto a = parse_state("|01> - |10>", 2);
  EXPECT_NEAR(a.state[1].real(), kInvSqrt2, 1e-15);
  EXPECT_NEAR(a.state[2].real(), -kInvSqrt2, 1e-15);
  const auto b = parse_state(" 2 | 1 > + 2|1>", 1);
  EXPECT_NEAR(b.raw_norm, 4.0, 1e-15);
}

TEST(ParseState, Errors) {
  EXPECT_THROW(parse_state("abc|1>", 1), ParseError);
  EXPECT_THROW(parse_state("1|10>", 3), ParseError);
  EXPECT_THROW(parse_state("1|1> - 1|1>", 1), ParseError);
  EXPECT_THROW(parse_state("1|12>", 2), ParseError);
  EXPECT_THROW(parse_state("", 2), ParseError);
}
