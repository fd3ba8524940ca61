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


#pragma once

#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rvse/autocorr.hpp"
#include "rvse/green.hpp"
#include "rvse/noise.hpp"
#include "rvse/recursion.hpp"

namespace rvse {

/// Ordered `key=value` pairs written as `# key=value` lines above a CSV.
class Metadata {
 public:
  void add(std::string key, std::string value);
  void add(std::string key, double value);
  const std::vector<std::pair<std::string, std::string>>& entries() const noexcept {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Shortest text that reads back to the same double (%.17g).
std::string format_double(double v);

void write_metadata(std::ostream& out, const Metadata& meta);

/// k, norm, overlap_re, overlap_im, moment
void write_moments_csv(std::ostream& out, std::span<const MomentRecord> records,
                       const Metadata& meta);

/// E, E_scaled, A, A_attach, A_remove, A_exact, Delta, A_noiseless.
/// The EA/IP table follows the metadata as `# info.ea_ip=...` lines.
void write_spectral_csv(std::ostream& out, const SpectralResult& result, const Metadata& meta);

/// t, re_approx, im_approx, re_exact, im_exact, abs_err, bound, delta,
/// re_noisy, im_noisy.
void write_autocorr_csv(std::ostream& out, const AutocorrResult& result, const Metadata& meta);

/// k, norm_exact, eps, norm_noisy, sigma_mu, sigma_nu. The sigma columns
/// come from the closed-form recursion; eps and norm_noisy from `noisy`
/// when given, else from the closed form.
void write_noise_csv(std::ostream& out, std::span<const MomentRecord> records,
                     const EpsilonSequence& closed_form,
                     std::span<const NoisyMomentRecord> noisy, const Metadata& meta);

}  // namespace rvse
