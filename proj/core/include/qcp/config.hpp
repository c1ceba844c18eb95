#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcp/pump.hpp"
#include "qcp/sparse_operator.hpp"

namespace qcp {

enum class ModelKind { qxp, rydberg, domain, classical };
enum class CouplingKind { uniform, ssh, aah };
enum class InitialKind { seed, fock, custom };

const char* to_string(ModelKind) noexcept;
const char* to_string(CouplingKind) noexcept;
const char* to_string(InitialKind) noexcept;

struct CouplingSpec {
  CouplingKind kind = CouplingKind::uniform;
  double lambda = 1.0;    // uniform
  double lambda_v = 1.0;  // ssh, even m
  double lambda_w = 1.0;  // ssh, odd m
};

struct PumpSpec {
  double lambda0 = 1.0;
  double eta0 = -10.0;
  PumpProgram program;
  double min_hold = kDefaultMinHold;
};

struct DetuningSpec {
  std::optional<double> delta_offset;  // Delta_0, rydberg only
  std::optional<double> v_nn;          // defaults to -Delta_0 under facilitation
  bool facilitation = true;
  std::vector<double> delta;           // static delta_j, j = 1..N (empty = 0)
};

struct InitialSpec {
  InitialKind kind = InitialKind::seed;
  int m = 1;                        // fock
  std::vector<Complex> amplitudes;  // custom, in the model's basis
};

struct ClassicalSpec {
  double gamma_f0 = 1.0;
  double gamma = 0.0;
};

// Runs the same experiment once per value, with `parameter` (a dotted
// key such as "couplings.lambda_w") overridden.
struct SweepSpec {
  std::string parameter;
  std::vector<double> values;
};

struct ExperimentConfig {
  std::string name = "experiment";
  ModelKind model = ModelKind::domain;
  int n_sites = 4;
  double t_max = 10.0;
  int n_samples = 101;
  double tol = 1e-8;
  bool verify_step_halving = true;
  std::size_t max_dim = std::size_t{1} << 14;
  std::vector<std::string> outputs;  // empty = every observable the model supports

  CouplingSpec couplings;
  std::optional<PumpSpec> pump;  // present iff couplings.kind == aah
  DetuningSpec detuning;
  InitialSpec initial;
  ClassicalSpec classical;
  std::optional<SweepSpec> sweep;

  // Throws ConfigError naming the offending field.
  void validate() const;
  AahSchedule schedule() const;
};

inline constexpr std::string_view kObservables[] = {"n_site", "p_domain", "fidelity_L", "fidelity_R",
                                                   "com",    "norm",     "energy",     "p_classical"};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
// Text that parses back to the same configuration.
std::string to_config_text(const ExperimentConfig& config);

// One fully resolved configuration per sweep value, each without a sweep.
std::vector<ExperimentConfig> expand_sweep(const ExperimentConfig& config);

}  // namespace qcp
