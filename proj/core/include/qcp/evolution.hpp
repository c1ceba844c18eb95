#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "qcp/krylov.hpp"
#include "qcp/sparse_operator.hpp"
#include "qcp/state.hpp"

namespace qcp {

// t -> H(t). A static generator holds one operator; a time-dependent one
// rebuilds the operator at every midpoint.
class HamiltonianGenerator {
 public:
  using Builder = std::function<SparseOperator(double)>;
  using NormBound = std::function<double(double)>;

  static HamiltonianGenerator constant(SparseOperator h);

  // omega is the largest modulation frequency of the drive (0 if none).
  // step_norm(t) is the operator norm entering the step bound; by default
  // the row-sum norm of H(t). Generators whose time dependence sits on top
  // of a large static part pass a bound on the time-varying part instead.
  static HamiltonianGenerator time_dependent(Builder at, double omega = 0.0,
                                             NormBound step_norm = {});

  bool is_static() const noexcept { return static_op_ != nullptr; }
  SparseOperator at(double t) const;
  const SparseOperator& static_operator() const;
  double omega() const noexcept { return omega_; }
  double step_norm(double t) const;

 private:
  std::shared_ptr<const SparseOperator> static_op_;
  Builder builder_;
  NormBound step_norm_;
  double omega_ = 0.0;
};

struct ObservableRow {
  double t = 0.0;
  std::vector<double> site_populations;    // <n_j>, j = 1..N
  std::vector<double> domain_populations;  // P_m, m = 1..N
  double leakage = 0.0;                    // 1 - sum_m P_m
  double fidelity_left = 0.0;              // |<•∘...∘|psi>|^2
  double fidelity_right = 0.0;             // |<••...•|psi>|^2
  std::optional<double> center_of_mass;    // sum m P_m / sum P_m
  double norm = 1.0;
  std::optional<double> energy;            // static runs only
};

// Domain populations below this total leave the center of mass undefined.
inline constexpr double kMinDomainPopulation = 1e-6;

ObservableRow measure(const QuantumState& state, double t = 0.0,
                      const SparseOperator* hamiltonian = nullptr);
// Same without the unit-norm precondition; used on states in flight.
ObservableRow measure(BasisKind basis, int n_sites, std::span<const Complex> amplitudes, double t,
                      const SparseOperator* hamiltonian = nullptr);

struct TrajectoryRecord {
  BasisKind basis = BasisKind::spin;
  int n_sites = 0;
  bool static_hamiltonian = true;
  double tol = 0.0;
  std::vector<ObservableRow> rows;

  double operator_max_entry = 0.0;  // max |H_rc| seen at the sample times
  double max_norm_drift = 0.0;      // max |1 - ||psi||^2|
  double max_energy_drift = 0.0;    // max |<H>(t) - <H>(0)|, static runs
  double max_halving_delta = 0.0;   // largest population change under step halving
  double max_leakage = 0.0;
  long steps = 0;
  KrylovStats krylov;

  std::vector<double> times() const;
  std::vector<double> fidelity_right() const;
  std::vector<double> fidelity_left() const;
  std::vector<double> domain_population(int m) const;
  std::vector<double> site_population(int j) const;
};

struct EvolveOptions {
  double tol = 1e-8;
  // Compare every output interval against a run with half the step and
  // refine until populations agree within 10 * tol.
  bool verify_step_halving = true;
  int max_refinements = 12;
  std::size_t max_dim = std::size_t{1} << kMaxEvolutionSites;
  // ||H|| dt <= norm_step_bound
  double norm_step_bound = 0.1;
  // dt <= (2 pi / omega) / steps_per_period
  int steps_per_period = 50;
  // Called at every output time with the current amplitudes.
  std::function<void(double, std::span<const Complex>)> observer;
};

// Propagates psi0 through t_grid (strictly increasing, starting at 0) and
// records observables exactly at the requested times.
TrajectoryRecord evolve(const HamiltonianGenerator& generator, const QuantumState& psi0,
                        std::span<const double> t_grid, const EvolveOptions& options = {});

// n_samples equally spaced times on [0, t_max].
std::vector<double> uniform_grid(double t_max, std::size_t n_samples);

}  // namespace qcp
