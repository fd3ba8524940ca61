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

#include "rvse/pauli.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "rvse/errors.hpp"

namespace rvse {

// ---------------------------------------------------------------------------
// PauliWord

PauliWord::PauliWord(std::size_t n_qubits) : n_(n_qubits) {
  if (n_qubits > kMaxWordQubits) {
    throw std::invalid_argument("PauliWord: at most 63 qubits supported");
  }
}

PauliWord PauliWord::parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty Pauli word");
  if (text.size() > kMaxWordQubits) {
    throw ParseError("Pauli word longer than 63 qubits");
  }
  PauliWord w(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) {
    switch (text[q]) {
      case 'I': break;
      case 'X': w.set(q, Pauli::X); break;
      case 'Y': w.set(q, Pauli::Y); break;
      case 'Z': w.set(q, Pauli::Z); break;
      default:
        throw ParseError(std::string("invalid Pauli character '") + text[q] +
                         "' in word " + std::string(text));
    }
  }
  return w;
}

Pauli PauliWord::operator[](std::size_t qubit) const {
  if (qubit >= n_) throw std::out_of_range("PauliWord: qubit out of range");
  const bool x = (x_ & bit(qubit)) != 0;
  const bool z = (z_ & bit(qubit)) != 0;
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

void PauliWord::set(std::size_t qubit, Pauli p) {
  if (qubit >= n_) throw std::out_of_range("PauliWord: qubit out of range");
  const auto b = bit(qubit);
  x_ &= ~b;
  z_ &= ~b;
  if (p == Pauli::X || p == Pauli::Y) x_ |= b;
  if (p == Pauli::Z || p == Pauli::Y) z_ |= b;
}

int PauliWord::y_count() const noexcept { return std::popcount(x_ & z_); }

std::string PauliWord::to_string() const {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  std::string s(n_, 'I');
  for (std::size_t q = 0; q < n_; ++q) s[q] = kChars[static_cast<int>((*this)[q])];
  return s;
}

std::pair<cplx, PauliWord> multiply(const PauliWord& lhs, const PauliWord& rhs) {
  if (lhs.size() != rhs.size()) {
    throw std::invalid_argument("multiply: Pauli word lengths differ");
  }
  // X^a Z^b X^c Z^d = (-1)^{|b & c|} X^{a^c} Z^{b^d}; each word carries i^{#Y}.
  PauliWord out(lhs.size());
  const std::uint64_t x = lhs.x_mask() ^ rhs.x_mask();
  const std::uint64_t z = lhs.z_mask() ^ rhs.z_mask();
  for (std::size_t q = 0; q < out.size(); ++q) {
    const auto b = std::uint64_t{1} << (out.size() - 1 - q);
    const bool xb = (x & b) != 0, zb = (z & b) != 0;
    out.set(q, xb && zb ? Pauli::Y : xb ? Pauli::X : zb ? Pauli::Z : Pauli::I);
  }
  int power = lhs.y_count() + rhs.y_count() - out.y_count();
  power += 2 * std::popcount(lhs.z_mask() & rhs.x_mask());
  power = ((power % 4) + 4) % 4;
  static const cplx kPhase[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return {kPhase[power], out};
}

std::size_t PauliWordHash::operator()(const PauliWord& w) const noexcept {
  std::size_t h = std::hash<std::uint64_t>{}(w.x_mask());
  h ^= std::hash<std::uint64_t>{}(w.z_mask()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= w.size() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

// ---------------------------------------------------------------------------
// OperatorLCU

OperatorLCU::OperatorLCU(std::size_t n_qubits, std::vector<PauliTerm> terms)
    : n_qubits_(n_qubits) {
  if (n_qubits == 0) throw std::invalid_argument("OperatorLCU: zero qubits");
  if (n_qubits > kMaxWordQubits) {
    throw std::invalid_argument("OperatorLCU: at most 63 qubits supported");
  }
  std::unordered_map<PauliWord, std::size_t, PauliWordHash> index;
  std::vector<PauliTerm> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    if (t.word.size() != n_qubits) {
      throw std::invalid_argument("OperatorLCU: word " + t.word.to_string() +
                                  " does not have " + std::to_string(n_qubits) +
                                  " qubits");
    }
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag())) {
      throw std::invalid_argument("OperatorLCU: non-finite coefficient");
    }
    auto [it, inserted] = index.try_emplace(t.word, merged.size());
    if (inserted) {
      merged.push_back(std::move(t));
    } else {
      merged[it->second].coeff += t.coeff;
    }
  }
  terms_.reserve(merged.size());
  for (auto& t : merged) {
    if (std::abs(t.coeff) >= kMergeThreshold) terms_.push_back(std::move(t));
  }
}

OperatorLCU OperatorLCU::identity(std::size_t n_qubits, cplx coeff) {
  return OperatorLCU(n_qubits, {{coeff, PauliWord(n_qubits)}});
}

cplx OperatorLCU::coefficient(const PauliWord& word) const {
  for (const auto& t : terms_) {
    if (t.word == word) return t.coeff;
  }
  return 0.0;
}

bool OperatorLCU::is_hermitian(double tol) const {
  for (const auto& t : terms_) {
    if (std::abs(t.coeff.imag()) >= tol) return false;
  }
  return true;
}

OperatorLCU OperatorLCU::adjoint() const {
  std::vector<PauliTerm> out(terms_.begin(), terms_.end());
  for (auto& t : out) t.coeff = std::conj(t.coeff);
  return OperatorLCU(n_qubits_, std::move(out));
}

OperatorLCU OperatorLCU::operator+(const OperatorLCU& rhs) const {
  if (rhs.n_qubits_ != n_qubits_) {
    throw std::invalid_argument("OperatorLCU: qubit counts differ");
  }
  std::vector<PauliTerm> out(terms_.begin(), terms_.end());
  out.insert(out.end(), rhs.terms_.begin(), rhs.terms_.end());
  return OperatorLCU(n_qubits_, std::move(out));
}

OperatorLCU OperatorLCU::operator-(const OperatorLCU& rhs) const {
  return *this + rhs * cplx{-1.0, 0.0};
}

OperatorLCU OperatorLCU::operator*(const OperatorLCU& rhs) const {
  if (rhs.n_qubits_ != n_qubits_) {
    throw std::invalid_argument("OperatorLCU: qubit counts differ");
  }
  std::vector<PauliTerm> out;
  out.reserve(terms_.size() * rhs.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : rhs.terms_) {
      auto [phase, word] = multiply(a.word, b.word);
      out.push_back({a.coeff * b.coeff * phase, word});
    }
  }
  return OperatorLCU(n_qubits_, std::move(out));
}

OperatorLCU OperatorLCU::operator*(cplx scalar) const {
  std::vector<PauliTerm> out(terms_.begin(), terms_.end());
  for (auto& t : out) t.coeff *= scalar;
  return OperatorLCU(n_qubits_, std::move(out));
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(std::string_view s, std::size_t line_no) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": malformed coefficient '" + std::string(s) + "'");
  }
  return v;
}

cplx parse_coefficient(std::string_view s, std::size_t line_no) {
  if (!s.empty() && s.front() == '(') {
    if (s.back() != ')') {
      throw ParseError("line " + std::to_string(line_no) +
                       ": malformed complex coefficient '" + std::string(s) + "'");
    }
    auto inner = s.substr(1, s.size() - 2);
    const auto comma = inner.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": complex coefficient needs (re,im)");
    }
    return {parse_double(inner.substr(0, comma), line_no),
            parse_double(inner.substr(comma + 1), line_no)};
  }
  return {parse_double(s, line_no), 0.0};
}

}  // namespace

std::string OperatorLCU::serialize() const {
  std::ostringstream os;
  for (const auto& t : terms_) {
    if (t.coeff.imag() == 0.0) {
      os << format_double(t.coeff.real());
    } else {
      os << '(' << format_double(t.coeff.real()) << ','
         << format_double(t.coeff.imag()) << ')';
    }
    os << ' ' << t.word.to_string() << '\n';
  }
  return os.str();
}

OperatorLCU parse_operator(std::istream& in) {
  std::vector<PauliTerm> terms;
  std::size_t n_qubits = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string coeff_text, word_text, extra;
    if (!(ls >> coeff_text)) continue;  // blank
    if (coeff_text.front() == '#') continue;
    if (!(ls >> word_text)) {
      throw ParseError("line " + std::to_string(line_no) + ": missing Pauli word");
    }
    if (ls >> extra && extra.front() != '#') {
      throw ParseError("line " + std::to_string(line_no) + ": trailing text '" +
                       extra + "'");
    }
    const cplx c = parse_coefficient(coeff_text, line_no);
    PauliWord w;
    try {
      w = PauliWord::parse(word_text);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (n_qubits == 0) {
      n_qubits = w.size();
    } else if (w.size() != n_qubits) {
      throw ParseError("line " + std::to_string(line_no) + ": word " + word_text +
                       " has " + std::to_string(w.size()) + " qubits, expected " +
                       std::to_string(n_qubits));
    }
    terms.push_back({c, w});
  }
  if (terms.empty()) throw ParseError("no terms in Hamiltonian input");
  return OperatorLCU(n_qubits, std::move(terms));
}

OperatorLCU parse_operator(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_operator(in);
}

OperatorLCU parse_hamiltonian(std::istream& in) {
  auto op = parse_operator(in);
  if (!op.is_hermitian()) {
    throw ParseError("Hamiltonian has a coefficient with nonzero imaginary part");
  }
  return op;
}

OperatorLCU parse_hamiltonian(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_hamiltonian(in);
}

double l1_norm(const OperatorLCU& op) {
  double s = 0.0;
  for (const auto& t : op.terms()) s += std::abs(t.coeff);
  return s;
}

double sum_sq_coefficients(const OperatorLCU& op) {
  double s = 0.0;
  for (const auto& t : op.terms()) s += std::norm(t.coeff);
  return s;
}

// ---------------------------------------------------------------------------
// Scaling

ScaledOperator scale_spectral(const OperatorLCU& op, double e_min, double e_max,
                              double margin) {
  if (!(e_max > e_min)) {
    throw std::invalid_argument("scale_spectral: need e_max > e_min");
  }
  if (!(margin >= 0.0)) {
    throw std::invalid_argument("scale_spectral: margin must be >= 0");
  }
  const double widen = margin * (e_max - e_min) / 2.0;
  const double lo = e_min - widen;
  const double hi = e_max + widen;
  ScalingParams params;
  params.kind = ScalingParams::Kind::spectral;
  params.h_plus = (hi + lo) / 2.0;
  params.h_minus = (hi - lo) / 2.0;

  const auto shifted = op - OperatorLCU::identity(op.n_qubits(), params.h_plus);
  return {shifted * cplx{1.0 / params.h_minus, 0.0}, params};
}

ScaledOperator scale_l1(const OperatorLCU& op) {
  const double lambda = l1_norm(op);
  if (!(lambda > 0.0)) throw std::invalid_argument("scale_l1: zero operator");
  ScalingParams params;
  params.kind = ScalingParams::Kind::l1;
  params.lambda = lambda;
  return {op * cplx{1.0 / lambda, 0.0}, params};
}

double map_energy(const ScalingParams& p, double e) {
  return (e - p.offset()) / p.width();
}

cplx map_energy(const ScalingParams& p, cplx e) {
  return {(e.real() - p.offset()) / p.width(), e.imag() / p.width()};
}

double unmap_energy(const ScalingParams& p, double e_scaled) {
  return e_scaled * p.width() + p.offset();
}

cplx unmap_energy(const ScalingParams& p, cplx e_scaled) {
  return {e_scaled.real() * p.width() + p.offset(), e_scaled.imag() * p.width()};
}

// ---------------------------------------------------------------------------
// Jordan-Wigner

OperatorLCU jw_annihilation(std::size_t orbital, std::size_t n_qubits) {
  if (orbital >= n_qubits) {
    throw std::out_of_range("jw_annihilation: orbital " + std::to_string(orbital) +
                            " outside " + std::to_string(n_qubits) + " qubits");
  }
  PauliWord wx(n_qubits), wy(n_qubits);
  for (std::size_t q = 0; q < orbital; ++q) {
    wx.set(q, Pauli::Z);
    wy.set(q, Pauli::Z);
  }
  wx.set(orbital, Pauli::X);
  wy.set(orbital, Pauli::Y);
  return OperatorLCU(n_qubits, {{{0.5, 0.0}, wx}, {{0.0, 0.5}, wy}});
}

OperatorLCU jw_creation(std::size_t orbital, std::size_t n_qubits) {
  return jw_annihilation(orbital, n_qubits).adjoint();
}

OperatorLCU jw_number(std::size_t orbital, std::size_t n_qubits) {
  if (orbital >= n_qubits) throw std::out_of_range("jw_number: orbital out of range");
  PauliWord z(n_qubits);
  z.set(orbital, Pauli::Z);
  return OperatorLCU(n_qubits, {{0.5, PauliWord(n_qubits)}, {-0.5, z}});
}

OperatorLCU number_operator(std::size_t n_qubits) {
  std::vector<PauliTerm> terms;
  terms.push_back({0.5 * static_cast<double>(n_qubits), PauliWord(n_qubits)});
  for (std::size_t q = 0; q < n_qubits; ++q) {
    PauliWord z(n_qubits);
    z.set(q, Pauli::Z);
    terms.push_back({-0.5, z});
  }
  return OperatorLCU(n_qubits, std::move(terms));
}

}  // namespace rvse
