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

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <unordered_map>

#include "rvse/errors.hpp"

namespace rvse {

namespace {

void check_qubits(std::size_t n_qubits) {
  if (n_qubits == 0) throw std::invalid_argument("StateVector: zero qubits");
  if (n_qubits > kMaxStateQubits) {
    throw NumericGuardError("StateVector: " + std::to_string(n_qubits) +
                            " qubits exceeds the limit of " +
                            std::to_string(kMaxStateQubits));
  }
}

void check_dims(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

// i^{#Y} for a word; the sign (-1)^{|b & z|} is applied per basis index.
cplx y_phase(const PauliWord& w) {
  static const cplx kPhase[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPhase[w.y_count() % 4];
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
  ++live_;
  check_qubits(n_qubits);
  amps_.assign(std::size_t{1} << n_qubits, cplx{});
}

StateVector::StateVector(std::size_t n_qubits, std::vector<cplx> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  ++live_;
  check_qubits(n_qubits);
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw std::invalid_argument("StateVector: amplitude count is not 2^n");
  }
}

StateVector::StateVector(const StateVector& other)
    : n_qubits_(other.n_qubits_), amps_(other.amps_) {
  ++live_;
}

StateVector::StateVector(StateVector&& other) noexcept
    : n_qubits_(other.n_qubits_), amps_(std::move(other.amps_)) {
  ++live_;
}

StateVector StateVector::basis(std::size_t n_qubits, std::uint64_t index) {
  StateVector v(n_qubits);
  if (index >= v.dim()) throw std::out_of_range("StateVector::basis: index out of range");
  v.amps_[index] = 1.0;
  return v;
}

StateVector StateVector::basis(std::string_view bits) {
  std::uint64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw ParseError("basis: bitstring must be 0/1");
    index = (index << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return basis(bits.size(), index);
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

bool StateVector::is_normalized(double tol) const {
  return std::abs(norm() - 1.0) < tol;
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (!(n > 0.0)) throw NumericGuardError("cannot normalize the zero vector");
  StateVector out(*this);
  out *= cplx{1.0 / n, 0.0};
  return out;
}

StateVector& StateVector::operator*=(cplx s) {
  for (auto& a : amps_) a *= s;
  return *this;
}

StateVector& StateVector::operator+=(const StateVector& rhs) {
  check_dims(dim(), rhs.dim(), "StateVector +=");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] += rhs.amps_[i];
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& rhs) {
  check_dims(dim(), rhs.dim(), "StateVector -=");
  for (std::size_t i = 0; i < amps_.size(); ++i) amps_[i] -= rhs.amps_[i];
  return *this;
}

StateVector apply_pauli(const PauliWord& word, const StateVector& psi) {
  check_dims(word.size(), psi.n_qubits(), "apply_pauli");
  StateVector out(psi.n_qubits());
  const auto x = word.x_mask();
  const auto z = word.z_mask();
  const cplx phase = y_phase(word);
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    const double sign = (std::popcount(i & z) & 1) ? -1.0 : 1.0;
    out[i ^ x] = phase * sign * psi[i];
  }
  return out;
}

void accumulate_lcu(const OperatorLCU& op, cplx scale, const StateVector& src,
                    StateVector& out) {
  check_dims(op.n_qubits(), src.n_qubits(), "accumulate_lcu");
  check_dims(src.dim(), out.dim(), "accumulate_lcu");
  if (&src == &out) throw std::invalid_argument("accumulate_lcu: aliased buffers");
  const auto in = src.amplitudes();
  auto dst = out.amplitudes();
  for (const auto& t : op.terms()) {
    const auto x = t.word.x_mask();
    const auto z = t.word.z_mask();
    const cplx c = scale * t.coeff * y_phase(t.word);
    for (std::size_t i = 0; i < in.size(); ++i) {
      const double sign = (std::popcount(i & z) & 1) ? -1.0 : 1.0;
      dst[i ^ x] += (sign * c) * in[i];
    }
  }
}

StateVector apply_lcu(const OperatorLCU& op, const StateVector& psi) {
  StateVector out(psi.n_qubits());
  accumulate_lcu(op, 1.0, psi, out);
  return out;
}

cplx inner(const StateVector& bra, const StateVector& ket) {
  check_dims(bra.dim(), ket.dim(), "inner");
  cplx s{};
  for (std::size_t i = 0; i < bra.dim(); ++i) s += std::conj(bra[i]) * ket[i];
  return s;
}

cplx pauli_matrix_element(const StateVector& bra, const PauliWord& word,
                          const StateVector& ket) {
  check_dims(bra.dim(), ket.dim(), "pauli_matrix_element");
  check_dims(word.size(), ket.n_qubits(), "pauli_matrix_element");
  const auto x = word.x_mask();
  const auto z = word.z_mask();
  cplx s{};
  for (std::size_t i = 0; i < ket.dim(); ++i) {
    const double sign = (std::popcount(i & z) & 1) ? -1.0 : 1.0;
    s += std::conj(bra[i ^ x]) * (sign * ket[i]);
  }
  return s * y_phase(word);
}

double number_expectation(const StateVector& psi) {
  double s = 0.0;
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    s += std::norm(psi[i]) * std::popcount(i);
  }
  return s;
}

namespace {

Eigen::MatrixXcd dense_matrix(const OperatorLCU& op, std::span<const std::uint64_t> basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  const std::size_t full = std::size_t{1} << op.n_qubits();
  std::vector<Eigen::Index> position(full, -1);
  for (Eigen::Index a = 0; a < n; ++a) position[basis[a]] = a;
  // Individual words may leave the sector while their sum does not, so
  // leakage is accumulated and judged after all terms.
  std::unordered_map<std::uint64_t, cplx> leak;
  for (const auto& t : op.terms()) {
    const auto x = t.word.x_mask();
    const auto z = t.word.z_mask();
    const cplx c = t.coeff * y_phase(t.word);
    for (Eigen::Index col = 0; col < n; ++col) {
      const auto i = basis[col];
      const auto row = position[i ^ x];
      const double sign = (std::popcount(i & z) & 1) ? -1.0 : 1.0;
      if (row < 0) {
        leak[((i ^ x) << 32) | static_cast<std::uint64_t>(col)] += sign * c;
        continue;
      }
      m(row, col) += sign * c;
    }
  }
  for (const auto& [key, amp] : leak) {
    if (std::abs(amp) > kSectorTolerance) {
      throw std::invalid_argument("operator leaks out of the particle-number sector (|amp|=" +
                                  std::to_string(std::abs(amp)) + ")");
    }
  }
  return m;
}

void check_diag_input(const OperatorLCU& op) {
  if (!op.is_hermitian()) {
    throw std::invalid_argument("exact_diagonalize: operator is not Hermitian");
  }
  if (op.n_qubits() > kMaxDiagQubits) {
    throw NumericGuardError("exact_diagonalize: " + std::to_string(op.n_qubits()) +
                            " qubits exceeds the dense limit of " +
                            std::to_string(kMaxDiagQubits));
  }
}

}  // namespace

EigenDecomposition exact_diagonalize(const OperatorLCU& op) {
  check_diag_input(op);
  const std::size_t dim = std::size_t{1} << op.n_qubits();
  std::vector<std::uint64_t> basis(dim);
  for (std::size_t i = 0; i < dim; ++i) basis[i] = i;
  const Eigen::MatrixXcd m = dense_matrix(op, basis);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw NumericGuardError("exact_diagonalize: eigensolver did not converge");
  }
  EigenDecomposition out;
  out.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + dim);
  out.eigenvectors.reserve(dim);
  const auto& vecs = solver.eigenvectors();
  for (std::size_t c = 0; c < dim; ++c) {
    std::vector<cplx> amps(vecs.col(static_cast<Eigen::Index>(c)).data(),
                           vecs.col(static_cast<Eigen::Index>(c)).data() + dim);
    out.eigenvectors.emplace_back(op.n_qubits(), std::move(amps));
  }
  return out;
}

std::vector<double> sector_eigenvalues(const OperatorLCU& op, std::size_t n_particles) {
  check_diag_input(op);
  if (n_particles > op.n_qubits()) {
    throw NumericGuardError("sector N=" + std::to_string(n_particles) +
                            " is empty on " + std::to_string(op.n_qubits()) + " qubits");
  }
  const std::size_t dim = std::size_t{1} << op.n_qubits();
  std::vector<std::uint64_t> basis;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (static_cast<std::size_t>(std::popcount(i)) == n_particles) basis.push_back(i);
  }
  const Eigen::MatrixXcd m = dense_matrix(op, basis);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericGuardError("sector_eigenvalues: eigensolver did not converge");
  }
  return {solver.eigenvalues().data(),
          solver.eigenvalues().data() + solver.eigenvalues().size()};
}

SectorGroundState ground_state_in_sector(const EigenDecomposition& decomp,
                                         std::size_t n_particles,
                                         std::size_t n_qubits) {
  const double target = static_cast<double>(n_particles);
  const auto& ev = decomp.eigenvalues;
  std::size_t begin = 0;
  while (begin < ev.size()) {
    std::size_t end = begin + 1;
    while (end < ev.size() && ev[end] - ev[end - 1] < kDegeneracyThreshold) ++end;
    const std::size_t m = end - begin;

    if (m == 1) {
      const auto& v = decomp.eigenvectors[begin];
      if (v.n_qubits() != n_qubits) {
        throw std::invalid_argument("ground_state_in_sector: qubit count mismatch");
      }
      if (std::abs(number_expectation(v) - target) < kSectorTolerance) {
        return {ev[begin], v, 1};
      }
    } else {
      // N is diagonal in the computational basis: <v_a|N|v_b> = sum_i conj(v_a[i]) v_b[i] popcount(i).
      Eigen::MatrixXcd nmat(m, m);
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
          const auto& va = decomp.eigenvectors[begin + a];
          const auto& vb = decomp.eigenvectors[begin + b];
          cplx s{};
          for (std::size_t i = 0; i < va.dim(); ++i) {
            s += std::conj(va[i]) * vb[i] * static_cast<double>(std::popcount(i));
          }
          nmat(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = s;
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(nmat);
      std::size_t hits = 0;
      std::optional<StateVector> first;
      for (std::size_t r = 0; r < m; ++r) {
        if (std::abs(solver.eigenvalues()(static_cast<Eigen::Index>(r)) - target) >=
            kSectorTolerance) {
          continue;
        }
        ++hits;
        if (!first) {
          StateVector v(decomp.eigenvectors[begin].n_qubits());
          for (std::size_t a = 0; a < m; ++a) {
            const cplx w = solver.eigenvectors()(static_cast<Eigen::Index>(a),
                                                 static_cast<Eigen::Index>(r));
            for (std::size_t i = 0; i < v.dim(); ++i) {
              v[i] += w * decomp.eigenvectors[begin + a][i];
            }
          }
          first = v.normalized();
        }
      }
      if (first) {
        double level = 0.0;
        for (std::size_t a = begin; a < end; ++a) level += ev[a];
        return {level / static_cast<double>(m), std::move(*first), hits};
      }
    }
    begin = end;
  }
  throw NumericGuardError("no eigenvector in the N=" + std::to_string(n_particles) +
                          " sector");
}

ParsedState parse_state(std::string_view text, std::size_t n_qubits) {
  // Normalize: drop whitespace, map U+27E9 to '>' and U+2212 to '-'.
  std::string s;
  s.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c == 0xE2 && i + 2 < text.size()) {
      const auto c1 = static_cast<unsigned char>(text[i + 1]);
      const auto c2 = static_cast<unsigned char>(text[i + 2]);
      if (c1 == 0x9F && c2 == 0xA9) { s.push_back('>'); i += 2; continue; }
      if (c1 == 0x88 && c2 == 0x92) { s.push_back('-'); i += 2; continue; }
    }
    if (!std::isspace(c)) s.push_back(static_cast<char>(c));
  }
  if (s.empty()) throw ParseError("empty state specification");

  StateVector psi(n_qubits);
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("state '" + std::string(text) + "': " + what);
  };
  auto read_double = [&](std::size_t& p) {
    double v = 0.0;
    const char* first = s.data() + p;
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc{} || !std::isfinite(v)) fail("malformed amplitude");
    p = static_cast<std::size_t>(ptr - s.data());
    return v;
  };

  bool first_term = true;
  while (pos < s.size()) {
    double sign = 1.0;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1.0 : 1.0;
      ++pos;
    } else if (!first_term) {
      fail("expected '+' or '-' between terms");
    }
    first_term = false;
    if (pos >= s.size()) fail("dangling sign");

    cplx amp{1.0, 0.0};
    if (s[pos] == '(') {
      ++pos;
      const double re = read_double(pos);
      if (pos >= s.size() || s[pos] != ',') fail("complex amplitude needs (re,im)");
      ++pos;
      const double im = read_double(pos);
      if (pos >= s.size() || s[pos] != ')') fail("unterminated complex amplitude");
      ++pos;
      amp = {re, im};
    } else if (s[pos] != '|') {
      amp = read_double(pos);
    }
    if (pos >= s.size() || s[pos] != '|') fail("expected '|' before bitstring");
    ++pos;
    const auto close = s.find('>', pos);
    if (close == std::string::npos) fail("unterminated ket");
    const auto bits = std::string_view(s).substr(pos, close - pos);
    if (bits.size() != n_qubits) {
      fail("bitstring '" + std::string(bits) + "' has " + std::to_string(bits.size()) +
           " qubits, expected " + std::to_string(n_qubits));
    }
    std::uint64_t index = 0;
    for (char c : bits) {
      if (c != '0' && c != '1') fail("bitstring must contain only 0 and 1");
      index = (index << 1) | static_cast<std::uint64_t>(c == '1');
    }
    psi[index] += sign * amp;
    pos = close + 1;
  }

  const double raw = psi.norm();
  if (!(raw > 0.0)) throw ParseError("state '" + std::string(text) + "' is the zero vector");
  psi *= cplx{1.0 / raw, 0.0};
  return {std::move(psi), raw};
}

}  // namespace rvse
