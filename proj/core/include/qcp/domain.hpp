#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qcp/model.hpp"
#include "qcp/sparse_operator.hpp"
#include "qcp/state.hpp"

namespace qcp {

// Size m of the boundary-anchored domain (sites 1..m excited, all others
// ground). Empty for the vacuum and for every other configuration.
std::optional<int> domain_index(const SpinConfiguration& config);

struct DomainAmplitudes {
  std::vector<Complex> amps;  // amps[m-1] = <m|psi>
  double leakage = 0.0;       // population outside the prefix-domain sector

  std::vector<double> populations() const;
  double sector_population() const;
};

// Projection of a spin-space state onto the prefix-domain states.
// Throws NormalizationError for inputs that are not unit norm.
DomainAmplitudes project_to_domain(std::span<const Complex> spin_amplitudes, int n_sites);
DomainAmplitudes project_to_domain(const QuantumState& state);

// Effective single-particle model: hop[m-2] = lambda_m couples m-1 and m
// (m = 2..n); onsite[m-1] = eta_m.
struct DomainParameters {
  int n = 0;
  std::vector<double> hop;
  std::vector<double> onsite;

  void validate() const;

  // lambda_m = lambda_{j=m}, eta_m = sum_{j<=m} delta_j. Requires the seed
  // site to be undriven, the condition under which the mapping is unique.
  static DomainParameters from_qxp(const QxpParameters& params);
};

// Tridiagonal operator <m|H|m-1> = lambda_m, <m|H|m> = eta_m.
SparseOperator build_domain_hamiltonian(const DomainParameters& params);

// Alternating hopping for m = 2..n: lambda_v on even m, lambda_w on odd m.
// Odd n emits a warning: the paired edge states assume an even chain.
std::vector<double> ssh_couplings(int n, double lambda_v, double lambda_w);

// delta_j(t) = eta_j(t) - eta_{j-1}(t) for j >= 2 and delta_1 = 0.
SiteFunction derive_detunings(SiteFunction eta);

// eta_m = sum_{j=1}^{m} delta_j.
std::vector<double> onsite_from_detunings(std::span<const double> delta);

}  // namespace qcp
