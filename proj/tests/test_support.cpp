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


#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#ifndef RVSE_DATA_DIR
#error "RVSE_DATA_DIR must be defined"
#endif

namespace rvse::testing {

namespace {

Dense single(Pauli p) {
  const cplx i{0.0, 1.0};
  switch (p) {
    case Pauli::I: return {{1, 0}, {0, 1}};
    case Pauli::X: return {{0, 1}, {1, 0}};
    case Pauli::Y: return {{0, -i}, {i, 0}};
    case Pauli::Z: return {{1, 0}, {0, -1}};
  }
  return {};
}

Dense kron(const Dense& a, const Dense& b) {
  const std::size_t na = a.size(), nb = b.size();
  Dense out(na * nb, std::vector<cplx>(na * nb));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
  return out;
}

}  // namespace

Dense pauli_dense(const PauliWord& word) {
  Dense m = {{1}};
  for (std::size_t q = 0; q < word.size(); ++q) m = kron(m, single(word[q]));
  return m;
}

Dense operator_dense(const OperatorLCU& op) {
  const std::size_t d = std::size_t{1} << op.n_qubits();
  Dense m(d, std::vector<cplx>(d));
  for (const auto& t : op.terms()) {
    const auto p = pauli_dense(t.word);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m[i][j] += t.coeff * p[i][j];
  }
  return m;
}

std::vector<cplx> matvec(const Dense& m, std::span<const cplx> v) {
  std::vector<cplx> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

EmbeddedEigen jacobi_eigen(const Dense& h) {
  const std::size_t d = h.size(), n = 2 * d;
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      a[i][j] = a[i + d][j + d] = h[i][j].real();
      a[i + d][j] = h[i][j].imag();
      a[i][j + d] = -h[i][j].imag();
    }
  std::vector<std::vector<double>> v(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a[x][x] < a[y][y]; });
  EmbeddedEigen out;
  for (auto c : order) {
    out.values.push_back(a[c][c]);
    std::vector<double> col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = v[k][c];
    out.vectors.push_back(std::move(col));
  }
  return out;
}

std::vector<double> jacobi_spectrum(const Dense& h) {
  const auto e = jacobi_eigen(h);
  std::vector<double> out;
  for (std::size_t i = 0; i < e.values.size(); i += 2) out.push_back(e.values[i]);
  return out;
}

cplx spectral_sum(const EmbeddedEigen& eig, const StateVector& chi,
                  const std::function<cplx(double)>& f) {
  const std::size_t d = chi.dim();
  cplx s{};
  for (std::size_t n = 0; n < eig.values.size(); ++n) {
    double proj = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      proj += eig.vectors[n][i] * chi[i].real() + eig.vectors[n][i + d] * chi[i].imag();
    }
    s += proj * proj * f(eig.values[n]);
  }
  return s;
}

std::string random_word(std::size_t n, std::mt19937_64& rng) {
  static constexpr char kLetters[] = "IXYZ";
  std::uniform_int_distribution<int> pick(0, 3);
  std::string w;
  for (std::size_t q = 0; q < n; ++q) w.push_back(kLetters[pick(rng)]);
  return w;
}

OperatorLCU random_hermitian(std::size_t n, std::size_t terms, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<PauliTerm> t;
  for (std::size_t j = 0; j < terms; ++j) {
    t.push_back({coeff(rng), PauliWord::parse(random_word(n, rng))});
  }
  return OperatorLCU(n, std::move(t));
}

OperatorLCU random_number_conserving(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  OperatorLCU h(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    h = h + jw_number(i, n) * cplx{u(rng), 0.0};
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto hop = jw_creation(i, n) * jw_annihilation(j, n);
      h = h + (hop + hop.adjoint()) * cplx{u(rng), 0.0};
      h = h + jw_number(i, n) * jw_number(j, n) * cplx{u(rng), 0.0};
    }
  }
  return h;
}

StateVector random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cplx> amps(std::size_t{1} << n);
  for (auto& a : amps) a = {g(rng), g(rng)};
  return StateVector(n, std::move(amps)).normalized();
}

OperatorLCU oracle_scaled(const OperatorLCU& h, double margin) {
  const auto spec = jacobi_spectrum(operator_dense(h));
  return scale_spectral(h, spec.front(), spec.back(), margin).op;
}

std::string data_file(const std::string& name) {
  std::ifstream in(std::string(RVSE_DATA_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing data file " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace rvse::testing
