#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qcp/classical.hpp"
#include "qcp/config.hpp"
#include "qcp/evolution.hpp"

namespace qcp {

// Generator, initial state and output grid of a quantum configuration.
struct Simulation {
  HamiltonianGenerator generator;
  QuantumState psi0;
  std::vector<double> grid;
};

// Throws CapacityError when the spin space exceeds config.max_dim or the
// build limit, ConfigError for classical configurations.
Simulation build_simulation(const ExperimentConfig& config);

struct ExperimentResult {
  ExperimentConfig config;
  std::optional<TrajectoryRecord> trajectory;
  std::optional<ClassicalTrajectory> classical;
  std::string meta_json;
  std::vector<std::filesystem::path> files;
};

// Runs a configuration without a sweep and writes trajectory.csv,
// meta.json and one <observable>.csv per requested observable.
ExperimentResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

// One subdirectory point_<i> per sweep value plus sweep.json, running up to
// `jobs` points concurrently. A configuration without a sweep runs once.
std::vector<ExperimentResult> run_sweep(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                                        unsigned jobs = 1);

// Closed-form and invariant quantities of the configuration as JSON text.
std::string derived_quantities_json(const ExperimentConfig& config);

// Long-format CSV with header t,observable,index,value.
std::string trajectory_csv(const TrajectoryRecord& record, const std::vector<std::string>& outputs);
std::string classical_csv(const ClassicalTrajectory& traj);

}  // namespace qcp
