#include "qcp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "qcp/domain.hpp"
#include "qcp/error.hpp"
#include "qcp/format.hpp"
#include "qcp/model.hpp"
#include "qcp/pump.hpp"
#include "qcp/topology.hpp"

#ifndef QCP_VERSION
#define QCP_VERSION "unknown"
#endif

namespace qcp {
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::vector<double> hops(const ExperimentConfig& c) {
  const int n = c.n_sites;
  if (c.couplings.kind == CouplingKind::ssh) return ssh_couplings(n, c.couplings.lambda_v, c.couplings.lambda_w);
  return std::vector<double>(static_cast<std::size_t>(std::max(n - 1, 0)), c.couplings.lambda);
}

// Site rates: the seed site is never driven, lambda_j = lambda_{m=j} otherwise.
std::vector<double> site_rates(const ExperimentConfig& c) {
  std::vector<double> out{0.0};
  const auto h = hops(c);
  out.insert(out.end(), h.begin(), h.end());
  return out;
}

std::vector<double> static_detunings(const ExperimentConfig& c) {
  if (!c.detuning.delta.empty()) return c.detuning.delta;
  return std::vector<double>(static_cast<std::size_t>(c.n_sites), 0.0);
}

void check_spin_capacity(const ExperimentConfig& c) {
  if (c.n_sites > kMaxBuildSites) {
    throw CapacityError("spin models are limited to " + std::to_string(kMaxBuildSites) + " sites");
  }
  const std::size_t dim = std::size_t{1} << c.n_sites;
  if (dim > c.max_dim) {
    throw CapacityError("spin-space dimension " + std::to_string(dim) + " exceeds max_dim " +
                        std::to_string(c.max_dim));
  }
}

QuantumState initial_state(const ExperimentConfig& c, BasisKind basis) {
  switch (c.initial.kind) {
    case InitialKind::seed: return QuantumState::seed(basis, c.n_sites);
    case InitialKind::fock: return QuantumState::domain_state(basis, c.n_sites, c.initial.m);
    case InitialKind::custom: return QuantumState(basis, c.n_sites, c.initial.amplitudes);
  }
  throw ConfigError("initial.kind", "unsupported");
}

bool wants(const std::vector<std::string>& outputs, std::string_view name) {
  return outputs.empty() || std::find(outputs.begin(), outputs.end(), name) != outputs.end();
}

void write_file(const fs::path& path, const std::string& text, std::vector<fs::path>& files) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
  files.push_back(path);
}

// Wide per-observable table: t followed by one column per index.
std::string wide_csv(const TrajectoryRecord& rec, std::string_view observable) {
  std::ostringstream os;
  const bool vector_valued = observable == "n_site" || observable == "p_domain";
  os << "t";
  if (vector_valued) {
    for (int i = 1; i <= rec.n_sites; ++i) os << "," << i;
  } else {
    os << ",value";
  }
  os << "\n";
  for (const auto& row : rec.rows) {
    os << format_double(row.t);
    if (observable == "n_site") {
      for (double v : row.site_populations) os << "," << format_double(v);
    } else if (observable == "p_domain") {
      for (double v : row.domain_populations) os << "," << format_double(v);
    } else if (observable == "fidelity_L") {
      os << "," << format_double(row.fidelity_left);
    } else if (observable == "fidelity_R") {
      os << "," << format_double(row.fidelity_right);
    } else if (observable == "com") {
      os << "," << (row.center_of_mass ? format_double(*row.center_of_mass) : "");
    } else if (observable == "norm") {
      os << "," << format_double(row.norm);
    } else if (observable == "energy") {
      os << "," << (row.energy ? format_double(*row.energy) : "");
    }
    os << "\n";
  }
  return os.str();
}

json hygiene_json(const TrajectoryRecord& rec) {
  json h;
  h["max_norm_drift"] = rec.max_norm_drift;
  if (rec.static_hamiltonian) {
    h["max_energy_drift"] = rec.max_energy_drift;
    h["energy_drift_bound"] = 1e-8 * rec.operator_max_entry;
  }
  h["operator_max_entry"] = rec.operator_max_entry;
  h["max_halving_delta"] = rec.max_halving_delta;
  h["halving_bound"] = 10.0 * rec.tol;
  h["max_leakage"] = rec.max_leakage;
  h["steps"] = rec.steps;
  h["krylov_matvecs"] = rec.krylov.matvecs;
  h["krylov_max_subspace"] = rec.krylov.max_subspace;
  return h;
}

json config_json(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  j["model"] = to_string(c.model);
  j["n_sites"] = c.n_sites;
  j["t_max"] = c.t_max;
  j["n_samples"] = c.n_samples;
  j["tol"] = c.tol;
  j["verify_step_halving"] = c.verify_step_halving;
  j["max_dim"] = c.max_dim;
  j["outputs"] = c.outputs;
  json cp;
  cp["kind"] = to_string(c.couplings.kind);
  if (c.couplings.kind == CouplingKind::uniform) cp["lambda"] = c.couplings.lambda;
  if (c.couplings.kind == CouplingKind::ssh) {
    cp["lambda_v"] = c.couplings.lambda_v;
    cp["lambda_w"] = c.couplings.lambda_w;
  }
  j["couplings"] = cp;
  if (c.pump) {
    json p;
    p["lambda0"] = c.pump->lambda0;
    p["eta0"] = c.pump->eta0;
    p["phase0"] = c.pump->program.phase0;
    p["min_hold"] = c.pump->min_hold;
    json segs = json::array();
    for (const auto& s : c.pump->program.segments) segs.push_back({{"duration", s.duration}, {"omega", s.omega}});
    p["segments"] = segs;
    j["pump"] = p;
  }
  if (c.model == ModelKind::rydberg) {
    const double d0 = *c.detuning.delta_offset;
    j["detuning"] = {{"delta_offset", d0},
                     {"v_nn", c.detuning.v_nn.value_or(-d0)},
                     {"facilitation", c.detuning.facilitation}};
  }
  if (!c.detuning.delta.empty()) j["detuning"]["delta"] = c.detuning.delta;
  json init;
  init["kind"] = to_string(c.initial.kind);
  if (c.initial.kind == InitialKind::fock) init["m"] = c.initial.m;
  if (c.initial.kind == InitialKind::custom) {
    json amps = json::array();
    for (const auto& a : c.initial.amplitudes) amps.push_back({a.real(), a.imag()});
    init["amplitudes"] = amps;
  }
  j["initial"] = init;
  if (c.model == ModelKind::classical) j["classical"] = {{"gamma_f0", c.classical.gamma_f0}, {"gamma", c.classical.gamma}};
  return j;
}

json derived_json(const ExperimentConfig& c) {
  json d = json::object();
  if (c.couplings.kind == CouplingKind::ssh && c.couplings.lambda_v != 0.0 && c.couplings.lambda_w != 0.0) {
    const auto loc = localization_length(c.couplings.lambda_v, c.couplings.lambda_w);
    d["xi"] = loc.xi;
    d["phase"] = to_string(loc.phase);
    if (c.n_sites % 2 == 0) {
      const auto h = hybridization(c.n_sites, c.couplings.lambda_v, c.couplings.lambda_w);
      d["hybridization"] = {{"valid", h.valid}, {"n1", h.n1}, {"e_plus", h.e_plus},
                            {"e_minus", h.e_minus}, {"t_hyb", h.t_hyb}};
      const auto x = exact_edge_splitting(c.n_sites, c.couplings.lambda_v, c.couplings.lambda_w);
      d["exact_splitting"] = {{"e_plus", x.e_plus}, {"e_minus", x.e_minus}, {"t_hyb", x.t_hyb}};
    }
    if (loc.phase != SshPhase::gapless) d["winding_number"] = winding_number(c.couplings.lambda_v, c.couplings.lambda_w);
  }
  if (c.pump) {
    const auto schedule = AahSchedule(c.pump->lambda0, c.pump->eta0, c.pump->program);
    const auto det = rydberg_pump_detunings(schedule);
    d["delta_max"] = det.delta_max;
    d["recommended_min_offset"] = det.min_offset;
    d["pump_period"] = c.pump->program.max_omega() > 0.0 ? 2.0 * std::numbers::pi / c.pump->program.max_omega() : 0.0;
    const auto a = adiabaticity_check(schedule);
    d["adiabaticity"] = {{"pass", a.pass},          {"ratio", a.ratio},         {"max_omega", a.max_omega},
                         {"min_gap", a.min_gap},    {"gap_phase", a.gap_phase}, {"gap_time", a.gap_time},
                         {"gap_closed", a.gap_closed}};
    if (!a.gap_closed) {
      const auto ch = pump_chern_numbers(schedule);
      d["chern_numbers"] = {ch[0], ch[1], ch[2]};
    }
  }
  return d;
}

}  // namespace

Simulation build_simulation(const ExperimentConfig& c) {
  c.validate();
  if (c.pump) c.pump->program.check_min_hold(c.pump->min_hold);
  const auto grid = uniform_grid(c.t_max, static_cast<std::size_t>(c.n_samples));
  switch (c.model) {
    case ModelKind::domain: {
      if (c.couplings.kind == CouplingKind::aah) {
        return {domain_pump_generator(c.schedule(), c.n_sites), initial_state(c, BasisKind::domain), grid};
      }
      DomainParameters p;
      p.n = c.n_sites;
      p.hop = hops(c);
      p.onsite = onsite_from_detunings(static_detunings(c));
      return {HamiltonianGenerator::constant(build_domain_hamiltonian(p)), initial_state(c, BasisKind::domain), grid};
    }
    case ModelKind::qxp: {
      check_spin_capacity(c);
      QxpParameters p;
      p.n_sites = c.n_sites;
      p.lambda = site_rates(c);
      p.delta = static_detunings(c);
      p.seed_boundary = true;
      return {HamiltonianGenerator::constant(build_qxp_hamiltonian(p)), initial_state(c, BasisKind::spin), grid};
    }
    case ModelKind::rydberg: {
      check_spin_capacity(c);
      const double d0 = *c.detuning.delta_offset;
      if (c.couplings.kind == CouplingKind::aah) {
        return {rydberg_pump_generator(c.schedule(), c.n_sites, d0), initial_state(c, BasisKind::spin), grid};
      }
      RydbergParameters p;
      p.n_sites = c.n_sites;
      p.lambda = site_rates(c);
      p.delta_offset = d0;
      p.delta_mod = static_detunings(c);
      p.v_nn = c.detuning.v_nn.value_or(-d0);
      p.facilitation_mode = c.detuning.facilitation;
      p.seed_boundary = true;
      return {HamiltonianGenerator::constant(build_rydberg_hamiltonian(p)), initial_state(c, BasisKind::spin), grid};
    }
    case ModelKind::classical: break;
  }
  throw ConfigError("experiment.model", "classical runs have no Hamiltonian");
}

std::string trajectory_csv(const TrajectoryRecord& rec, const std::vector<std::string>& outputs) {
  std::ostringstream os;
  os << "t,observable,index,value\n";
  for (const auto& row : rec.rows) {
    const std::string t = format_double(row.t);
    auto line = [&](std::string_view obs, int index, double v) {
      os << t << ',' << obs << ',' << index << ',' << format_double(v) << '\n';
    };
    if (wants(outputs, "n_site")) {
      for (std::size_t j = 0; j < row.site_populations.size(); ++j) line("n_site", static_cast<int>(j + 1), row.site_populations[j]);
    }
    if (wants(outputs, "p_domain")) {
      for (std::size_t m = 0; m < row.domain_populations.size(); ++m) line("p_domain", static_cast<int>(m + 1), row.domain_populations[m]);
    }
    if (wants(outputs, "fidelity_L")) line("fidelity_L", 0, row.fidelity_left);
    if (wants(outputs, "fidelity_R")) line("fidelity_R", 0, row.fidelity_right);
    if (wants(outputs, "com") && row.center_of_mass) line("com", 0, *row.center_of_mass);
    if (wants(outputs, "norm")) line("norm", 0, row.norm);
    if (wants(outputs, "energy") && row.energy) line("energy", 0, *row.energy);
  }
  return os.str();
}

std::string classical_csv(const ClassicalTrajectory& traj) {
  std::ostringstream os;
  os << "t,observable,index,value\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const std::string t = format_double(traj.times[k]);
    for (std::size_t j = 0; j < traj.p[k].size(); ++j) {
      os << t << ",p_classical," << j + 1 << ',' << format_double(traj.p[k][j]) << '\n';
    }
  }
  return os.str();
}

std::string derived_quantities_json(const ExperimentConfig& config) { return derived_json(config).dump(2); }

ExperimentResult run_experiment(const ExperimentConfig& config, const fs::path& out_dir) {
  if (config.sweep) throw ConfigError("sweep", "configuration holds a sweep; run it with run_sweep");
  config.validate();
  ExperimentResult result;
  result.config = config;

  json meta;
  meta["software"] = {{"name", "qcp"}, {"version", QCP_VERSION}};
  meta["config"] = config_json(config);
  meta["derived"] = derived_json(config);

  if (config.model == ModelKind::classical) {
    ClassicalState p0;
    p0.p.assign(static_cast<std::size_t>(config.n_sites), 0.0);
    const int m = config.initial.kind == InitialKind::fock ? config.initial.m : 1;
    std::fill(p0.p.begin(), p0.p.begin() + m, 1.0);
    const auto grid = uniform_grid(config.t_max, static_cast<std::size_t>(config.n_samples));
    result.classical = classical_evolve(p0, config.classical.gamma_f0, config.classical.gamma, grid);
    meta["hygiene"] = {{"steps", result.classical->steps},
                       {"step", result.classical->step},
                       {"clamp_events", result.classical->clamp_events}};
  } else {
    Simulation sim = build_simulation(config);
    EvolveOptions opts;
    opts.tol = config.tol;
    opts.verify_step_halving = config.verify_step_halving;
    opts.max_dim = config.max_dim;
    result.trajectory = evolve(sim.generator, sim.psi0, sim.grid, opts);
    meta["hygiene"] = hygiene_json(*result.trajectory);
  }

  fs::create_directories(out_dir);
  if (result.classical) {
    write_file(out_dir / "trajectory.csv", classical_csv(*result.classical), result.files);
    if (wants(config.outputs, "p_classical")) {
      std::ostringstream os;
      os << "t";
      for (int j = 1; j <= config.n_sites; ++j) os << "," << j;
      os << "\n";
      for (std::size_t k = 0; k < result.classical->times.size(); ++k) {
        os << format_double(result.classical->times[k]);
        for (double v : result.classical->p[k]) os << "," << format_double(v);
        os << "\n";
      }
      write_file(out_dir / "p_classical.csv", os.str(), result.files);
    }
  } else {
    const auto& rec = *result.trajectory;
    write_file(out_dir / "trajectory.csv", trajectory_csv(rec, config.outputs), result.files);
    for (std::string_view obs : kObservables) {
      if (obs == "p_classical" || !wants(config.outputs, obs)) continue;
      if (obs == "energy" && !rec.static_hamiltonian) continue;
      write_file(out_dir / (std::string(obs) + ".csv"), wide_csv(rec, obs), result.files);
    }
  }
  result.meta_json = meta.dump(2) + "\n";
  write_file(out_dir / "meta.json", result.meta_json, result.files);
  return result;
}

std::vector<ExperimentResult> run_sweep(const ExperimentConfig& config, const fs::path& out_dir, unsigned jobs) {
  if (!config.sweep) return {run_experiment(config, out_dir)};
  const auto points = expand_sweep(config);
  std::vector<ExperimentResult> results(points.size());
  std::vector<std::exception_ptr> errors(points.size());

  auto dir = [&](std::size_t i) { return out_dir / ("point_" + std::to_string(i)); };
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        results[i] = run_experiment(points[i], dir(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(points.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  json index;
  index["parameter"] = config.sweep->parameter;
  json entries = json::array();
  for (std::size_t i = 0; i < points.size(); ++i) {
    entries.push_back({{"value", config.sweep->values[i]}, {"directory", dir(i).filename().string()}});
  }
  index["points"] = entries;
  std::vector<fs::path> files;
  fs::create_directories(out_dir);
  write_file(out_dir / "sweep.json", index.dump(2) + "\n", files);
  return results;
}

}  // namespace qcp
