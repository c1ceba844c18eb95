#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qcp/domain.hpp"
#include "qcp/evolution.hpp"
#include "qcp/model.hpp"

namespace qcp {

inline constexpr int kUnitCell = 3;
inline constexpr double kDefaultMinHold = 5.0;

struct PumpSegment {
  double duration = 0.0;  // units of 1/lambda_0
  double omega = 0.0;     // phase velocity, units of lambda_0
};

// Piecewise-linear phase phi(t) = phase0 + int_0^t omega(t') dt'. After the
// last segment the phase stays frozen.
struct PumpProgram {
  std::vector<PumpSegment> segments;
  double phase0 = 0.0;

  static PumpProgram constant(double omega, double duration, double phase0 = 0.0);

  void validate() const;
  double duration() const;
  double phase(double t) const;
  double omega_at(double t) const;
  double max_omega() const;
  // Holds (omega = 0) that follow a driven segment and last less than
  // min_hold. Each one is also reported through warn().
  std::vector<std::string> check_min_hold(double min_hold = kDefaultMinHold) const;
};

// lambda_m(t) = lambda0 sin(phi + 4 pi (m+1)/3), eta_m(t) = eta0 cos(phi + 4 pi (m+1)/3).
// The site index enters modulo 3, so the period in m is exact.
class AahSchedule {
 public:
  AahSchedule(double lambda0, double eta0, PumpProgram program);

  double lambda0() const noexcept { return lambda0_; }
  double eta0() const noexcept { return eta0_; }
  const PumpProgram& program() const noexcept { return program_; }

  double phase(double t) const { return program_.phase(t); }
  double hop(int m, double t) const;
  double onsite(int m, double t) const;
  double hop_at_phase(int m, double phi) const;
  double onsite_at_phase(int m, double phi) const;

  DomainParameters domain_parameters(int n, double t) const;

 private:
  double lambda0_;
  double eta0_;
  PumpProgram program_;
};

// Warns when |eta0| < 5 lambda0, where the on-site modulation no longer
// pins the particle to single sites.
AahSchedule aah_schedule(double lambda0, double eta0, PumpProgram program);

struct RydbergPumpDetunings {
  SiteFunction delta;       // delta_j(t), delta_1 = 0
  double delta_max = 0.0;   // sqrt(3) |eta0|
  double min_offset = 0.0;  // recommended |Delta_0| >= 10 delta_max
};

// delta_j(t) = -sqrt(3) eta0 sin(phi(t) + 4 pi j/3 + 2 pi/3) for j >= 2.
RydbergPumpDetunings rydberg_pump_detunings(const AahSchedule& schedule);

// Facilitated Rydberg chain realizing the schedule: lambda_j = lambda_m at
// j = m >= 2, Delta_j = Delta_0 + delta_j, V_NN = -Delta_0, seed at site 1.
RydbergParameters rydberg_pump_parameters(const AahSchedule& schedule, int n_sites,
                                          double delta_offset);

HamiltonianGenerator domain_pump_generator(const AahSchedule& schedule, int n_sites);
// The step bound uses the norm of the driven part sum_j lambda_j sigma^x_j
// + delta_j n_j; the static Delta_0 and V_NN terms are resolved exactly by
// the exponential of each step.
HamiltonianGenerator rydberg_pump_generator(const AahSchedule& schedule, int n_sites,
                                            double delta_offset);

// 3x3 Bloch Hamiltonian of the periodic schedule at phase phi and crystal
// momentum k. Sublattice s holds the sites m = 3c + 1 + s.
Eigen::Matrix3cd aah_bloch_hamiltonian(double lambda0, double eta0, double phi, double k);
// Ascending band energies.
Eigen::Vector3d aah_bloch_bands(double lambda0, double eta0, double phi, double k);

struct AdiabaticityReport {
  double min_gap = 0.0;     // smallest direct gap between adjacent bands
  double gap_phase = 0.0;   // phase where it occurs
  double gap_time = 0.0;    // first program time at that phase
  double max_omega = 0.0;
  double ratio = 0.0;       // max |omega| / min_gap
  bool gap_closed = false;
  bool pass = false;        // ratio < 0.1 and no gap closing
};

AdiabaticityReport adiabaticity_check(const AahSchedule& schedule, int n_k = 64, int n_phase = 512);

}  // namespace qcp
