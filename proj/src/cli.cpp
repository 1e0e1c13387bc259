// Copyright 2026 The dissgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "dissgate/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dissgate/config.hpp"
#include "dissgate/dfs.hpp"
#include "dissgate/errors.hpp"
#include "dissgate/evolve.hpp"
#include "dissgate/gates.hpp"
#include "dissgate/stats.hpp"
#include "dissgate/trajectory.hpp"
#include "dissgate/verify.hpp"

namespace dissgate {
namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

// Single owner of one output artifact: a file when a path is given, else the fallback stream.
class Sink {
 public:
  Sink(const std::optional<std::string>& path, std::ostream& fallback, const char* flag) {
    if (path) {
      file_.open(*path, std::ios::binary);
      if (!file_) throw ConfigError(flag, "cannot write " + *path);
      stream_ = &file_;
    } else {
      stream_ = &fallback;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

void write_records(std::ostream& os, const std::vector<GateRecord>& records) {
  os << "omega_over_g2,gamma3_over_g2,g3_over_g2,initial_label,p0,fidelity\r\n";
  for (const auto& r : records) {
    os << num(r.omega) << ',' << num(r.gamma3) << ',' << num(r.g3) << ',' << field(r.initial_label) << ','
       << num(r.p0) << ',' << num(r.fidelity) << "\r\n";
  }
}

void warn_drive(const SystemParams& params, std::ostream& err) {
  if (auto w = weak_drive_warning(params)) err << "warning: " << *w << '\n';
}

SystemParams drive_params(const RunConfig& c, const std::string& drive) {
  return drive == "cnot" ? GateSpec::cnot(c.params, c.omega).params : c.params;
}

// "l1l2_n", e.g. "10_0".
BasisLabel parse_component(const std::string& s, const HilbertSpace& space) {
  const auto bad = [&] { return ConfigError("evolve.components", "bad component \"" + s + "\", expected l1l2_n"); };
  if (s.size() < 4 || s[2] != '_' || s[0] < '0' || s[0] > '3' || s[1] < '0' || s[1] > '3') throw bad();
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(s.substr(3), &used);
    if (used != s.size() - 3) throw bad();
  } catch (const std::logic_error&) {
    throw bad();
  }
  if (n < 0 || n > space.n_max()) throw ConfigError("evolve.components", s + " exceeds n_max");
  return {s[0] - '0', s[1] - '0', n};
}

int cmd_dfs_report(const RunConfig& c, const std::optional<std::string>& basis_out, std::ostream& out) {
  const HilbertSpace space(c.n_max);
  SystemParams undriven = c.params;
  undriven.omega = RabiMatrix{};
  const DfsDecomposition d = extract_dfs(build_h_cond(space, undriven), space, c.dfs);

  Sink sink(c.output, out, "--out");
  *sink << "re,im,is_dfs,trunc_population\r\n";
  for (Index i = 0; i < d.eigenvalues.size(); ++i) {
    *sink << num(d.eigenvalues(i).real()) << ',' << num(d.eigenvalues(i).imag()) << ',' << (d.is_dfs(i) ? 1 : 0) << ','
          << num(d.truncation_population(i)) << "\r\n";
  }

  std::optional<std::string> basis_path = basis_out;
  if (!basis_path && c.output) basis_path = *c.output + ".basis.json";
  if (basis_path) {
    json basis = json::array();
    for (Index k = 0; k < d.dfs_basis.cols(); ++k) {
      json vec = json::array();
      for (Index r = 0; r < d.dfs_basis.rows(); ++r) vec.push_back({d.dfs_basis(r, k).real(), d.dfs_basis(r, k).imag()});
      basis.push_back(std::move(vec));
    }
    Sink bsink(basis_path, out, "--basis-out");
    *bsink << basis.dump() << '\n';
  }
  return kExitOk;
}

int cmd_evolve(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const HilbertSpace space(c.n_max);
  const SystemParams params = drive_params(c, c.evolve.drive);
  warn_drive(params, err);

  StateVector psi0;
  if (c.evolve.amplitudes) {
    const auto& a = *c.evolve.amplitudes;
    if (static_cast<Index>(a.size()) != space.dim()) {
      throw ConfigError("evolve.amplitudes", "needs " + std::to_string(space.dim()) + " entries for n_max " +
                                                 std::to_string(c.n_max));
    }
    psi0 = Eigen::Map<const StateVector>(a.data(), space.dim());
    require_normalized(psi0, "evolve.amplitudes");
  } else {
    psi0 = qubit_input(space, c.evolve.initial_state).state;
  }

  std::vector<Index> columns;
  for (const auto& comp : c.evolve.components) columns.push_back(space.index(parse_component(comp, space)));

  std::vector<double> grid = c.t_grid;
  if (grid.empty()) {
    const double t_end = c.evolve.drive == "cnot" ? 2.0 * std::numbers::pi / c.omega : 100.0;
    for (int k = 0; k <= 100; ++k) grid.push_back(t_end * k / 100.0);
  }
  const Eigen::MatrixXcd states = evolve_on_grid(build_h_total(space, params), psi0, grid);

  Sink sink(c.output, out, "--out");
  *sink << "t,p0";
  for (const auto& comp : c.evolve.components) *sink << ',' << field("re_" + comp) << ',' << field("im_" + comp);
  *sink << "\r\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto col = states.col(static_cast<Index>(k));
    const double p0 = col.squaredNorm();
    if (p0 < kMinConditionalProbability) {
      throw NumericalError("no-photon probability " + num(p0) + " at t = " + num(grid[k]) +
                           " too small to normalize the conditional state");
    }
    const double scale = 1.0 / std::sqrt(p0);
    *sink << num(grid[k]) << ',' << num(p0);
    for (Index idx : columns) *sink << ',' << num(col(idx).real() * scale) << ',' << num(col(idx).imag() * scale);
    *sink << "\r\n";
  }
  return kExitOk;
}

int cmd_cnot(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const HilbertSpace space(c.n_max);
  const GateSpec spec = GateSpec::cnot(c.params, c.omega);
  warn_drive(spec.params, err);
  const auto records = gate_metrics(space, spec, c.initial_states);
  Sink sink(c.output, out, "--out");
  write_records(*sink, records);
  return kExitOk;
}

int cmd_sweep_rabi(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const HilbertSpace space(c.n_max);
  warn_drive(GateSpec::cnot(c.params, c.omega_grid.back()).params, err);
  const auto records = sweep_rabi(space, c.params, c.omega_grid, c.initial_states, c.threads);
  Sink sink(c.output, out, "--out");
  write_records(*sink, records);
  return kExitOk;
}

int cmd_sweep_gamma(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const HilbertSpace space(c.n_max);
  SystemParams smallest = c.params;
  smallest.g3 = smallest.gamma3 = c.gamma_grid.front();
  warn_drive(GateSpec::cnot(smallest, c.gamma_sweep_omega).params, err);
  const auto records = sweep_gamma(space, c.params, c.gamma_grid, c.gamma_sweep_omega, c.initial_states, c.threads);
  Sink sink(c.output, out, "--out");
  write_records(*sink, records);
  return kExitOk;
}

int cmd_trajectories(const RunConfig& c, const std::optional<std::string>& histogram_out, std::ostream& out,
                     std::ostream& err) {
  const auto& ts = c.trajectory;
  const HilbertSpace space(c.n_max);
  const SystemParams params = drive_params(c, ts.drive);
  warn_drive(params, err);
  double t_final = 0.0;
  if (ts.t_final) {
    t_final = *ts.t_final;
  } else if (ts.drive == "cnot") {
    t_final = 2.0 * std::numbers::pi / c.omega;
  } else {
    throw ConfigError("trajectory.t_final", "required when trajectory.drive is \"params\"");
  }

  JumpConfig jc = default_jump_config(space, params, t_final, ts.n_traj, c.seed);
  jc.destination_level = ts.destination_level;
  jc.jump_ops = decay_jump_ops(space, params.gamma3, ts.destination_level);
  jc.histogram_bins = ts.histogram_bins;
  jc.coarse_steps = ts.coarse_steps;
  jc.threads = c.threads;

  const QubitInput input = qubit_input(space, ts.initial_state);
  const OperatorMatrix h = build_h_total(space, params);
  const TrajectoryStats st = run_trajectories(h, jc, input.state);

  json summary;
  summary["initial_state"] = input.label;
  summary["seed"] = c.seed;
  summary["t_final"] = t_final;
  summary["n_traj"] = st.n_traj;
  summary["n_no_jump"] = st.n_no_jump;
  summary["n_aborted"] = st.n_aborted;
  summary["total_jumps"] = st.total_jumps;
  summary["p0_estimate"] = st.p0_estimate;
  summary["stderr"] = st.standard_error;
  summary["p0_exact"] = no_photon_probability(h, input.state, t_final);

  if (ts.restart_runs > 0) {
    if (ts.drive != "cnot") throw ConfigError("trajectory.restart_runs", "restart protocol needs the cnot drive");
    const RestartStats rs =
        restart_protocol_estimate(space, GateSpec::cnot(c.params, c.omega), input, jc, ts.restart_runs);
    json restart;
    restart["n_runs"] = rs.n_runs;
    restart["mean_attempts"] = rs.mean_attempts;
    restart["variance_attempts"] = rs.variance_attempts;
    restart["success_rate"] = rs.success_rate;
    json counts = json::object();
    for (const auto& [attempts, runs] : rs.attempt_counts) counts[std::to_string(attempts)] = runs;
    restart["attempt_counts"] = std::move(counts);
    summary["restart"] = std::move(restart);
  }

  Sink sink(c.output, out, "--out");
  *sink << summary.dump(2) << '\n';

  if (histogram_out) {
    Sink hsink(histogram_out, out, "--histogram-out");
    *hsink << "t_lo,t_hi,count\r\n";
    for (std::size_t b = 0; b < st.histogram_counts.size(); ++b) {
      *hsink << num(st.histogram_edges[b]) << ',' << num(st.histogram_edges[b + 1]) << ',' << st.histogram_counts[b]
             << "\r\n";
    }
  }
  return kExitOk;
}

int cmd_repeat_stats(const RunConfig& c, std::ostream& out) {
  Sink sink(c.output, out, "--out");
  *sink << "p0,n_gates,m_runs,p_no_result,exp_approx_rel_error,min_repeats\r\n";
  for (double p0 : c.repeat.p0) {
    for (std::uint64_t n : c.repeat.n_gates) {
      std::string m_star;
      try {
        m_star = std::to_string(min_repeats(p0, n, c.repeat.target_success));
      } catch (const NumericalError&) {
        // left empty: target unreachable in double precision
      }
      for (std::uint64_t m : c.repeat.m_runs) {
        *sink << num(p0) << ',' << n << ',' << m << ',' << num(p_no_result(p0, n, m)) << ','
              << num(exponential_approx_error(p0, n, m)) << ',' << m_star << "\r\n";
      }
    }
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  Sink sink(c.output, out, "--out");
  bool ok = true;
  for (const auto& r : run_invariant_suite(c)) {
    *sink << (r.passed ? "PASS " : "FAIL ") << r.name;
    if (!r.detail.empty()) *sink << "  [" << r.detail << ']';
    *sink << '\n';
    ok = ok && r.passed;
  }
  *sink << (ok ? "verify: all invariants hold\n" : "verify: FAILED\n");
  return ok ? kExitOk : kExitNumerical;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dissipation-assisted two-ion gate simulator", "dissgate"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::string> config_path, out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> n_max, threads;
  std::optional<double> omega;
  app.add_option("--config", config_path, "JSON run configuration")->envname("DISSGATE_CONFIG");
  app.add_option("--out", out_path, "Output file (default: stdout)")->envname("DISSGATE_OUT");
  app.add_option("--seed", seed, "Master RNG seed")->envname("DISSGATE_SEED");
  app.add_option("--n-max", n_max, "Phonon cutoff")->envname("DISSGATE_N_MAX");
  app.add_option("--threads", threads, "Worker threads")->envname("DISSGATE_THREADS");
  app.add_option("--omega", omega, "CNOT Rabi frequency / g2")->envname("DISSGATE_OMEGA");

  std::optional<std::string> basis_out, histogram_out;
  auto* dfs_cmd = app.add_subcommand("dfs-report", "Spectrum of H_cond and the decoherence-free basis");
  dfs_cmd->add_option("--basis-out", basis_out, "DFS basis JSON (default: <out>.basis.json)");
  auto* evolve_cmd = app.add_subcommand("evolve", "No-photon evolution on a time grid");
  auto* cnot_cmd = app.add_subcommand("cnot", "CNOT success probability and fidelity");
  auto* rabi_cmd = app.add_subcommand("sweep-rabi", "CNOT metrics over omega_grid");
  auto* gamma_cmd = app.add_subcommand("sweep-gamma", "CNOT metrics over gamma_grid with g3 = Gamma3");
  auto* traj_cmd = app.add_subcommand("trajectories", "Quantum-jump Monte Carlo of one pulse");
  traj_cmd->add_option("--histogram-out", histogram_out, "Jump-time histogram CSV");
  auto* repeat_cmd = app.add_subcommand("repeat-stats", "Repeat-until-success statistics");
  auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    RunConfig config = config_path ? load_config(*config_path) : RunConfig{};
    if (out_path) config.output = out_path;
    if (seed) config.seed = *seed;
    if (n_max) config.n_max = *n_max;
    if (threads) config.threads = *threads;
    if (omega) config.omega = *omega;
    validate(config);

    if (*dfs_cmd) return cmd_dfs_report(config, basis_out, out);
    if (*evolve_cmd) return cmd_evolve(config, out, err);
    if (*cnot_cmd) return cmd_cnot(config, out, err);
    if (*rabi_cmd) return cmd_sweep_rabi(config, out, err);
    if (*gamma_cmd) return cmd_sweep_gamma(config, out, err);
    if (*traj_cmd) return cmd_trajectories(config, histogram_out, out, err);
    if (*repeat_cmd) return cmd_repeat_stats(config, out);
    if (*verify_cmd) {
      const int code = cmd_verify(config, out);
      if (code != kExitOk) err << "error: invariant suite failed\n";
      return code;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}

}  // namespace dissgate
