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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "rvse/errors.hpp"

namespace rvse {

namespace {

double normalize_in_place(StateVector& v, std::size_t order) {
  const double n = v.norm();
  if (!(n >= kAnnihilationThreshold)) throw AnnihilationError(order, n);
  v *= cplx{1.0 / n, 0.0};
  return n;
}

// out <- 2 n1 H prev - n2 prev2, where `out` may be prev2's buffer.
void combine(const OperatorLCU& h_sc, const StateVector& prev, double n1, double n2,
             StateVector& out) {
  out *= cplx{-n2, 0.0};
  accumulate_lcu(h_sc, cplx{2.0 * n1, 0.0}, prev, out);
}

}  // namespace

NormalizedChebState first_step(const OperatorLCU& h_sc, const NormalizedChebState& chi0) {
  NormalizedChebState out{StateVector(chi0.state.n_qubits()), 0.0};
  accumulate_lcu(h_sc, cplx{chi0.norm, 0.0}, chi0.state, out.state);
  out.norm = normalize_in_place(out.state, 1);
  return out;
}

NormalizedChebState recursion_step(const OperatorLCU& h_sc, const NormalizedChebState& prev,
                                   const NormalizedChebState& prev2, std::size_t order) {
  NormalizedChebState out{prev2.state, 0.0};
  combine(h_sc, prev.state, prev.norm, prev2.norm, out.state);
  out.norm = normalize_in_place(out.state, order);
  return out;
}

std::vector<MomentRecord> run_rvse(const OperatorLCU& h_sc, const StateVector& chi0,
                                   std::size_t K, const StepObserver& observer) {
  if (h_sc.n_qubits() != chi0.n_qubits()) {
    throw std::invalid_argument("run_rvse: operator and state sizes differ");
  }
  std::vector<MomentRecord> records;
  records.reserve(K + 1);
  auto emit = [&](MomentRecord r) {
    records.push_back(r);
    if (observer) observer(records.back());
  };

  const StateVector ref = chi0.normalized();
  emit({0, 1.0, 1.0});
  if (K == 0) return records;

  StateVector prev(chi0.n_qubits());
  accumulate_lcu(h_sc, 1.0, ref, prev);
  double n_prev = normalize_in_place(prev, 1);
  emit({1, n_prev, inner(ref, prev)});
  if (K == 1) return records;

  // k = 2 still needs chi0_bar, so it gets a fresh buffer; afterwards the
  // oldest buffer is recycled for each new state.
  StateVector cur = ref;
  double n_prev2 = 1.0;
  combine(h_sc, prev, n_prev, n_prev2, cur);
  double n_cur = normalize_in_place(cur, 2);
  emit({2, n_cur, inner(ref, cur)});

  for (std::size_t k = 3; k <= K; ++k) {
    std::swap(prev, cur);  // prev = chi_{k-1}, cur = chi_{k-2}
    n_prev2 = n_prev;
    n_prev = n_cur;
    combine(h_sc, prev, n_prev, n_prev2, cur);
    n_cur = normalize_in_place(cur, k);
    emit({k, n_cur, inner(ref, cur)});
  }
  return records;
}

ChebStateSequence chebyshev_states(const OperatorLCU& h_sc, const StateVector& chi0,
                                   std::size_t K) {
  ChebStateSequence seq;
  seq.chi0_norm = chi0.norm();
  seq.normalized_states.reserve(K + 1);
  seq.norms.reserve(K + 1);
  NormalizedChebState s0{chi0.normalized(), 1.0};
  seq.normalized_states.push_back(s0.state);
  seq.norms.push_back(s0.norm);
  if (K == 0) return seq;
  NormalizedChebState s1 = first_step(h_sc, s0);
  seq.normalized_states.push_back(s1.state);
  seq.norms.push_back(s1.norm);
  for (std::size_t k = 2; k <= K; ++k) {
    NormalizedChebState s2 = recursion_step(h_sc, s1, s0, k);
    seq.normalized_states.push_back(s2.state);
    seq.norms.push_back(s2.norm);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  return seq;
}

cplx assemble_expectation(std::span<const MomentRecord> records, double chi0_norm,
                          const std::function<cplx(std::size_t)>& coeff) {
  cplx s{};
  for (const auto& r : records) s += coeff(r.k) * r.norm * r.overlap;
  return chi0_norm * s;
}

MomentSeries moments_direct(const OperatorLCU& h_sc, const StateVector& chi0, std::size_t K) {
  MomentSeries out;
  out.values.reserve(K + 1);
  auto push = [&](cplx m) {
    out.max_imag_residue = std::max(out.max_imag_residue, std::abs(m.imag()));
    out.values.push_back(m.real());
  };
  push(inner(chi0, chi0));
  if (K == 0) return out;
  StateVector t_prev2 = chi0;
  StateVector t_prev = apply_lcu(h_sc, chi0);
  push(inner(chi0, t_prev));
  for (std::size_t k = 2; k <= K; ++k) {
    t_prev2 *= cplx{-1.0, 0.0};
    accumulate_lcu(h_sc, 2.0, t_prev, t_prev2);
    std::swap(t_prev, t_prev2);
    push(inner(chi0, t_prev));
  }
  return out;
}

}  // namespace rvse
