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


#include "rvse/io.hpp"

#include <cmath>
#include <cstdio>

namespace rvse {

namespace {

class Row {
 public:
  explicit Row(std::ostream& out) : out_(out) {}
  ~Row() { out_ << '\n'; }
  Row& operator<<(double v) { return put(format_double(v)); }
  Row& operator<<(std::size_t v) { return put(std::to_string(v)); }
  Row& operator<<(const std::string& v) { return put(v); }

 private:
  Row& put(const std::string& s) {
    if (!first_) out_ << ',';
    first_ = false;
    out_ << s;
    return *this;
  }
  std::ostream& out_;
  bool first_ = true;
};

}  // namespace

void Metadata::add(std::string key, std::string value) {
  entries_.emplace_back(std::move(key), std::move(value));
}

void Metadata::add(std::string key, double value) { add(std::move(key), format_double(value)); }

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_metadata(std::ostream& out, const Metadata& meta) {
  for (const auto& [k, v] : meta.entries()) out << "# " << k << '=' << v << '\n';
}

void write_moments_csv(std::ostream& out, std::span<const MomentRecord> records,
                       const Metadata& meta) {
  write_metadata(out, meta);
  out << "k,norm,overlap_re,overlap_im,moment\n";
  for (const auto& r : records) {
    Row(out) << r.k << r.norm << r.overlap.real() << r.overlap.imag()
             << r.norm * r.overlap.real();
  }
}

void write_spectral_csv(std::ostream& out, const SpectralResult& res, const Metadata& meta) {
  write_metadata(out, meta);
  for (const auto& e : res.table) {
    out << "# info.ea_ip=" << to_string(e.label) << ',' << e.index << ','
        << format_double(e.energy) << '\n';
  }
  out << "E,E_scaled,A,A_attach,A_remove,A_exact,Delta,A_noiseless\n";
  for (std::size_t i = 0; i < res.grid.size(); ++i) {
    Row(out) << res.grid[i] << res.grid_scaled[i] << res.a_values[i] << res.a_attach[i]
             << res.a_remove[i] << res.exact_reference[i] << res.delta_values[i]
             << res.a_noiseless[i];
  }
}

void write_autocorr_csv(std::ostream& out, const AutocorrResult& res, const Metadata& meta) {
  write_metadata(out, meta);
  out << "t,re_approx,im_approx,re_exact,im_exact,abs_err,bound,delta,re_noisy,im_noisy\n";
  for (std::size_t i = 0; i < res.t_grid.size(); ++i) {
    Row(out) << res.t_grid[i] << res.c_approx[i].real() << res.c_approx[i].imag()
             << res.c_exact[i].real() << res.c_exact[i].imag()
             << std::abs(res.c_approx[i] - res.c_exact[i]) << res.bound[i] << res.delta[i]
             << res.c_noisy[i].real() << res.c_noisy[i].imag();
  }
}

void write_noise_csv(std::ostream& out, std::span<const MomentRecord> records,
                     const EpsilonSequence& closed_form,
                     std::span<const NoisyMomentRecord> noisy, const Metadata& meta) {
  write_metadata(out, meta);
  out << "k,norm_exact,eps,norm_noisy,sigma_mu,sigma_nu\n";
  for (std::size_t k = 0; k < records.size(); ++k) {
    const double eps = noisy.empty() ? closed_form.eps[k] : noisy[k].eps;
    const double nn = noisy.empty() ? records[k].norm + eps : noisy[k].norm_noisy;
    Row(out) << k << records[k].norm << eps << nn << closed_form.sigma_mu[k]
             << closed_form.sigma_nu[k];
  }
}

}  // namespace rvse
