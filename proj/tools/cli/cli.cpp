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


#include "cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "rvse/autocorr.hpp"
#include "rvse/errors.hpp"
#include "rvse/green.hpp"
#include "rvse/io.hpp"
#include "rvse/noise.hpp"
#include "rvse/pauli.hpp"
#include "rvse/recursion.hpp"
#include "rvse/scaling.hpp"
#include "rvse/statevec.hpp"

#ifndef RVSE_VERSION
#define RVSE_VERSION "0.0.0"
#endif

namespace rvse::cli {

namespace {

struct RunConfig {
  std::string command;
  std::string hamiltonian;
  std::string scale = "auto";
  std::optional<double> emin, emax;
  double margin = kDefaultMargin;
  std::optional<std::size_t> terms;
  std::size_t shots = 1000;
  std::uint64_t seed = 0;
  std::string noise = "exact";
  std::string phi_convention = "paper";
  std::string coupling = "same";
  std::string out = "-";
  std::string noise_out;
  std::string plot_script;
  std::string state;
  std::size_t orbital = 1;
  std::optional<std::size_t> sector;
  double eta = 0.02;
  std::string grid;
  double tmax = 100.0;
  std::size_t steps = 1001;
  bool auto_k = false;
  double eps = 1e-8;
  std::string time_units = "scaled";
  int threads = 0;
  std::string config;
};

double parse_number(std::string_view s, const char* what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end) {
    throw ParseError(std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class OutputSink {
 public:
  OutputSink(const std::string& path, std::ostream& fallback) : path_(path) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw IoError("cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw IoError("write failed for '" + path_ + "'");
  }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

NoiseModel make_noise(const RunConfig& c) {
  NoiseModel m;
  m.shots = c.shots;
  m.seed = c.seed;
  m.mode = c.noise == "surrogate"   ? NoiseMode::surrogate
           : c.noise == "bernoulli" ? NoiseMode::bernoulli
                                    : NoiseMode::exact;
  m.phi_convention =
      c.phi_convention == "sqrt" ? PhiConvention::one_over_sqrt_S : PhiConvention::paper_1_over_S;
  m.coupling = c.coupling == "independent" ? PhiCoupling::independent : PhiCoupling::same_draw;
  m.validate();
  return m;
}

ScalingRequest make_scaling(const RunConfig& c) {
  ScalingRequest r;
  r.margin = c.margin;
  if (c.scale == "l1") {
    r.mode = ScalingRequest::Mode::l1;
  } else if (c.scale == "spectral") {
    if (!c.emin || !c.emax) throw ParseError("--scale spectral needs --emin and --emax");
    r.mode = ScalingRequest::Mode::spectral;
    r.e_min = *c.emin;
    r.e_max = *c.emax;
  }
  return r;
}

void add_params(Metadata& meta, const ScalingParams& p) {
  if (p.kind == ScalingParams::Kind::spectral) {
    meta.add("info.h_plus", p.h_plus);
    meta.add("info.h_minus", p.h_minus);
  } else {
    meta.add("info.lambda", p.lambda);
  }
}

Metadata base_metadata(const RunConfig& c, const std::string& sha, std::size_t K) {
  Metadata m;
  m.add("info.version", std::string(RVSE_VERSION));
  m.add("info.hamiltonian_sha256", sha);
  m.add("command", c.command);
  m.add("hamiltonian", c.hamiltonian);
  m.add("scale", c.scale);
  if (c.emin) m.add("emin", *c.emin);
  if (c.emax) m.add("emax", *c.emax);
  m.add("margin", c.margin);
  m.add("terms", std::to_string(K));
  m.add("noise", c.noise);
  m.add("shots", std::to_string(c.shots));
  m.add("seed", std::to_string(c.seed));
  m.add("phi-convention", c.phi_convention);
  m.add("coupling", c.coupling);
  return m;
}

StateVector load_state(const RunConfig& c, std::size_t n_qubits, Metadata& meta) {
  if (c.state.empty()) throw ParseError(c.command + " needs --state");
  auto parsed = parse_state(c.state, n_qubits);
  meta.add("state", c.state);
  meta.add("info.state_raw_norm", parsed.raw_norm);
  return std::move(parsed.state);
}

void write_plot_script(const RunConfig& c, const std::string& body) {
  if (c.plot_script.empty()) return;
  if (c.out.empty() || c.out == "-") throw ParseError("--plot-script needs --out FILE");
  OutputSink sink(c.plot_script, std::cout);
  sink.stream() << "set datafile separator ','\nset key autotitle columnhead\n"
                << "data = '" << c.out << "'\n"
                << body;
  sink.finish();
}

void write_noise_report(const RunConfig& c, const OperatorLCU& h_sc,
                        std::span<const MomentRecord> records,
                        std::span<const NoisyMomentRecord> noisy, const NoiseModel& model,
                        Metadata meta) {
  if (c.noise_out.empty()) return;
  const auto closed = epsilon_sequence(record_norms(records), sum_sq_coefficients(h_sc),
                                       std::max<std::size_t>(model.shots, 1),
                                       records.size() - 1, model.coupling);
  OutputSink sink(c.noise_out, std::cout);
  write_noise_csv(sink.stream(), records, closed, noisy, meta);
  sink.finish();
}

int cmd_eigs(const RunConfig& c, const OperatorLCU& h, const std::string& sha,
             std::ostream& out) {
  Metadata meta;
  meta.add("info.version", std::string(RVSE_VERSION));
  meta.add("info.hamiltonian_sha256", sha);
  meta.add("command", c.command);
  meta.add("hamiltonian", c.hamiltonian);
  OutputSink sink(c.out, out);
  auto& os = sink.stream();
  if (c.sector) {
    meta.add("sector", std::to_string(*c.sector));
    write_metadata(os, meta);
    os << "index,energy,number\n";
    const auto ev = sector_eigenvalues(h, *c.sector);
    for (std::size_t i = 0; i < ev.size(); ++i) {
      os << i << ',' << format_double(ev[i]) << ',' << *c.sector << '\n';
    }
  } else {
    write_metadata(os, meta);
    os << "index,energy,number\n";
    const auto d = exact_diagonalize(h);
    for (std::size_t i = 0; i < d.eigenvalues.size(); ++i) {
      os << i << ',' << format_double(d.eigenvalues[i]) << ','
         << format_double(number_expectation(d.eigenvectors[i])) << '\n';
    }
  }
  sink.finish();
  return kExitOk;
}

int cmd_moments(const RunConfig& c, const OperatorLCU& h, const std::string& sha,
                std::ostream& out) {
  const std::size_t K = c.terms.value_or(50);
  const auto model = make_noise(c);
  const auto scaled = resolve_scaling(h, make_scaling(c));
  Metadata meta = base_metadata(c, sha, K);
  const auto chi0 = load_state(c, h.n_qubits(), meta);
  add_params(meta, scaled.params);

  const auto records = run_rvse(scaled.op, chi0, K);
  std::vector<NoisyMomentRecord> noisy;
  if (model.mode == NoiseMode::surrogate) {
    noisy = noisy_records(records, model, sum_sq_coefficients(scaled.op));
  } else if (model.mode == NoiseMode::bernoulli) {
    noisy = bernoulli_records(scaled.op, chi0, K, model);
  }
  OutputSink sink(c.out, out);
  write_moments_csv(sink.stream(), records, meta);
  sink.finish();
  write_noise_report(c, scaled.op, records, noisy, model, meta);
  write_plot_script(c, "set xlabel 'k'\nplot data using 'k':'norm' with linespoints\n");
  return kExitOk;
}

int cmd_spectral(const RunConfig& c, const OperatorLCU& h, const std::string& sha,
                 std::ostream& out) {
  const auto model = make_noise(c);
  SpectralConfig sc;
  sc.orbital = c.orbital;
  sc.eta = c.eta;
  sc.K = c.terms.value_or(2000);
  sc.n_particles = c.sector.value_or(h.n_qubits() / 2);
  sc.scaling = make_scaling(c);
  sc.threads = c.threads;
  std::string grid_text = c.grid;
  if (grid_text.empty()) {
    const auto d = exact_diagonalize(h);
    const double span = d.eigenvalues.back() - d.eigenvalues.front();
    grid_text = format_double(-span) + ":" + format_double(span) + ":2001";
  }
  sc.grid = parse_grid(grid_text);

  const auto res = spectral_function(h, sc, model);
  Metadata meta = base_metadata(c, sha, sc.K);
  meta.add("orbital", std::to_string(sc.orbital));
  meta.add("sector", std::to_string(sc.n_particles));
  meta.add("eta", sc.eta);
  meta.add("grid", grid_text);
  add_params(meta, res.params);
  meta.add("info.e0", res.e0);
  meta.add("info.attach_norm", res.attach.chi0.norm);
  meta.add("info.remove_norm", res.remove.chi0.norm);

  OutputSink sink(c.out, out);
  write_spectral_csv(sink.stream(), res, meta);
  sink.finish();
  if (!c.noise_out.empty()) {
    // Attachment branch only; it is the first term of A.
    const auto& b = res.attach.records.empty() ? res.remove : res.attach;
    write_noise_report(c, resolve_scaling(h, sc.scaling).op, b.records, b.noisy, model, meta);
  }
  write_plot_script(c,
                    "set xlabel 'E'\nplot data using 'E':'A' with lines, "
                    "data using 'E':'A_exact' with lines dashtype 2\n");
  return kExitOk;
}

int cmd_autocorr(const RunConfig& c, const OperatorLCU& h, const std::string& sha,
                 std::ostream& out) {
  const auto model = make_noise(c);
  const auto scaled = resolve_scaling(h, make_scaling(c));
  if (!(c.tmax >= 0.0)) throw ParseError("--tmax must be >= 0");
  if (c.steps == 0) throw ParseError("--steps must be >= 1");
  if (c.time_units != "scaled" && c.time_units != "physical") {
    throw ParseError("--time-units must be scaled or physical");
  }
  // Physical time t multiplies H; in scaled units it multiplies H_sc = H / width.
  const double to_scaled = c.time_units == "physical" ? scaled.params.width() : 1.0;
  std::vector<double> user_t(c.steps);
  AutocorrConfig ac;
  for (std::size_t i = 0; i < c.steps; ++i) {
    user_t[i] = c.steps == 1 ? c.tmax
                             : c.tmax * static_cast<double>(i) / static_cast<double>(c.steps - 1);
    ac.t_grid.push_back(user_t[i] * to_scaled);
  }
  ac.K = c.terms.value_or(120);
  ac.auto_k = c.auto_k;
  ac.epsilon_target = c.eps;
  ac.threads = c.threads;

  Metadata meta = base_metadata(c, sha, ac.K);
  const auto psi = load_state(c, h.n_qubits(), meta);
  auto res = autocorrelation(scaled.op, psi, ac, model);
  if (c.auto_k) {
    // Keep `terms` reproducible: the recorded value is the chosen K.
    meta = base_metadata(c, sha, res.K);
    load_state(c, h.n_qubits(), meta);
    meta.add("auto-k", std::string("true"));
    meta.add("eps", c.eps);
  }
  meta.add("tmax", c.tmax);
  meta.add("steps", std::to_string(c.steps));
  meta.add("time-units", c.time_units);
  add_params(meta, scaled.params);
  for (const auto& w : res.warnings) meta.add("info.warning", w);
  res.t_grid = user_t;

  OutputSink sink(c.out, out);
  write_autocorr_csv(sink.stream(), res, meta);
  sink.finish();
  write_noise_report(c, scaled.op, res.records, res.noisy, model, meta);
  write_plot_script(c,
                    "set xlabel 't'\nplot data using 't':'re_exact' with lines, "
                    "data using 't':'re_approx' with lines dashtype 2\n");
  return kExitOk;
}

void apply_config(CLI::App& app, const std::string& path) {
  for (const auto& [key, value] : load_config(path)) {
    if (key == "config") throw ParseError("config files cannot include other configs");
    CLI::Option* opt =
        key == "command" ? app.get_option_no_throw("command") : app.get_option_no_throw("--" + key);
    if (opt == nullptr) throw ParseError("unknown config key '" + key + "'");
    if (opt->count() == 0) {
      opt->add_result(value);
      opt->run_callback();
    }
  }
}

void build_app(CLI::App& app, RunConfig& c) {
  app.add_option("command", c.command, "moments | spectral | autocorr | eigs")
      ->check(CLI::IsMember({"moments", "spectral", "autocorr", "eigs"}));
  app.add_option("--hamiltonian", c.hamiltonian, "Hamiltonian file");
  app.add_option("--scale", c.scale, "auto | spectral | l1")
      ->check(CLI::IsMember({"auto", "spectral", "l1"}));
  app.add_option("--emin", c.emin, "lower spectral bound (--scale spectral)");
  app.add_option("--emax", c.emax, "upper spectral bound (--scale spectral)");
  app.add_option("--margin", c.margin, "outward widening of the bounds");
  app.add_option("--terms", c.terms, "truncation order K");
  app.add_option("--shots", c.shots, "measurements per overlap");
  app.add_option("--seed", c.seed, "RNG seed");
  app.add_option("--noise", c.noise, "exact | surrogate | bernoulli")
      ->check(CLI::IsMember({"exact", "surrogate", "bernoulli"}));
  app.add_option("--phi-convention", c.phi_convention, "paper (1/S) | sqrt (1/sqrt S)")
      ->check(CLI::IsMember({"paper", "sqrt"}));
  app.add_option("--coupling", c.coupling, "same | independent real/imag noise draws")
      ->check(CLI::IsMember({"same", "independent"}));
  app.add_option("--out", c.out, "output CSV, '-' for stdout");
  app.add_option("--noise-out", c.noise_out, "noise report CSV");
  app.add_option("--plot-script", c.plot_script, "gnuplot script for the output CSV");
  app.add_option("--state", c.state, "initial state, e.g. '0.7|1100> + 0.7|0011>'");
  app.add_option("--orbital", c.orbital, "spin-orbital index (from 0)");
  app.add_option("--sector", c.sector, "particle number N");
  app.add_option("--eta", c.eta, "broadening");
  app.add_option("--grid", c.grid, "energy grid start:stop:count");
  app.add_option("--tmax", c.tmax, "largest time");
  app.add_option("--steps", c.steps, "number of time points");
  app.add_flag("--auto-k", c.auto_k, "choose K from --eps");
  app.add_option("--eps", c.eps, "truncation error budget for --auto-k");
  app.add_option("--time-units", c.time_units, "scaled | physical");
  app.add_option("--threads", c.threads, "worker threads, 0 = all cores");
  app.add_option("--config", c.config, "key=value file; command-line flags win");
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
    throw ParseError("grid must be start:stop:count, got '" + std::string(text) + "'");
  }
  const double start = parse_number(text.substr(0, a), "grid start");
  const double stop = parse_number(text.substr(a + 1, b - a - 1), "grid stop");
  const double count_d = parse_number(text.substr(b + 1), "grid count");
  if (!(count_d >= 1.0) || count_d != std::floor(count_d)) {
    throw ParseError("grid count must be a positive integer");
  }
  const auto count = static_cast<std::size_t>(count_d);
  if (count > 1 && !(stop > start)) throw ParseError("grid needs stop > start");
  std::vector<double> g(count);
  for (std::size_t i = 0; i < count; ++i) {
    g[i] = count == 1 ? start
                      : start + (stop - start) * static_cast<double>(i) /
                                    static_cast<double>(count - 1);
  }
  return g;
}

std::vector<std::pair<std::string, std::string>> load_config(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::pair<std::string, std::string>> items;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view v(line);
    const bool commented = !v.empty() && v.front() == '#';
    // A bare line without '=' is the CSV header of a previous run's output.
    if (!commented && v.find('=') == std::string_view::npos &&
        v.find_first_not_of(" \t") != std::string_view::npos) {
      break;
    }
    if (commented) v.remove_prefix(1);
    const auto first = v.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    v.remove_prefix(first);
    const auto eq = v.find('=');
    if (eq == std::string_view::npos) continue;  // free-form comment
    std::string key(v.substr(0, eq));
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
    std::string value(v.substr(eq + 1));
    if (key.rfind("info.", 0) == 0) continue;
    items.emplace_back(std::move(key), std::move(value));
  }
  return items;
}

std::string file_sha256(const std::string& path) {
  const std::string bytes = read_file(path);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 failed for '" + path + "'");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[md[i] >> 4]);
    hex.push_back(kHex[md[i] & 0xF]);
  }
  return hex;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recursive variational series estimation simulator", "rvse"};
  RunConfig c;
  build_app(app, c);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (!c.config.empty()) apply_config(app, c.config);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; every other parse failure maps to kExitConfig.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (c.command.empty()) throw ParseError("missing command (moments | spectral | autocorr | eigs)");
    if (c.hamiltonian.empty()) throw ParseError("missing --hamiltonian");
    const auto h = parse_hamiltonian(read_file(c.hamiltonian));
    const auto sha = file_sha256(c.hamiltonian);
    if (c.command == "eigs") return cmd_eigs(c, h, sha, out);
    if (c.command == "moments") return cmd_moments(c, h, sha, out);
    if (c.command == "spectral") return cmd_spectral(c, h, sha, out);
    return cmd_autocorr(c, h, sha, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const NumericGuardError& e) {
    err << "numeric guard: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace rvse::cli
