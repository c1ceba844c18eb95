#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qcp/sparse_operator.hpp"

namespace qcp {

// Hard limit of the configuration type (bits fit a 32-bit word).
inline constexpr int kMaxSites = 30;
// Largest chain for which a full many-body operator is assembled.
inline constexpr int kMaxBuildSites = 20;
// Default largest chain for full state-vector evolution (dim 2^14).
inline constexpr int kMaxEvolutionSites = 14;

// Excitation pattern of a chain of n two-level sites. Site j (1-based)
// is bit j-1, so site 1 is the least significant bit and the index of a
// configuration in the enumerated basis equals its bit pattern.
class SpinConfiguration {
 public:
  SpinConfiguration(std::uint32_t bits, int n_sites);

  static SpinConfiguration vacuum(int n_sites) { return {0u, n_sites}; }
  // Sites 1..m excited, the rest in the ground state.
  static SpinConfiguration prefix(int m, int n_sites);

  std::uint32_t bits() const noexcept { return bits_; }
  int n_sites() const noexcept { return n_sites_; }
  std::size_t index() const noexcept { return bits_; }

  bool excited(int site) const;
  SpinConfiguration flipped(int site) const;
  int excitation_count() const noexcept;

  // Site 1 first, e.g. "•∘∘" for the seed on three sites.
  std::string to_string() const;

  friend bool operator==(const SpinConfiguration&, const SpinConfiguration&) = default;

 private:
  std::uint32_t bits_;
  int n_sites_;
};

// All 2^n configurations in increasing bit-pattern order.
std::vector<SpinConfiguration> enumerate_basis(int n_sites);

// Site-resolved coefficient c_j(t); j is 1-based.
using SiteFunction = std::function<double(int, double)>;

// Time-dependent per-site drive. Empty members leave the static values
// of the owning parameter set in place.
struct SiteSchedule {
  SiteFunction lambda;
  SiteFunction delta;
};

struct QxpParameters {
  int n_sites = 0;
  std::vector<double> lambda;  // coherent excitation rates, units of lambda_0
  std::vector<double> delta;   // on-site energies, units of lambda_0
  // Site 1 carries the seed and must not be driven (lambda_1 = delta_1 = 0).
  bool seed_boundary = false;

  void validate() const;
};

struct RydbergParameters {
  int n_sites = 0;
  std::vector<double> lambda;     // Rabi frequencies lambda_j
  double delta_offset = 0.0;      // Delta_0
  std::vector<double> delta_mod;  // delta_j, Delta_j = Delta_0 + delta_j
  double v_nn = 0.0;              // nearest-neighbour interaction
  // Requires V_NN + Delta_0 = 0.
  bool facilitation_mode = true;
  // Site 1 is the undriven seed: lambda_1 = 0 and Delta_1 = 0.
  bool seed_boundary = true;
  std::optional<SiteSchedule> drive;

  void validate() const;
  // Rabi frequencies and detunings Delta_j actually used at time t.
  std::vector<double> lambda_at(double t) const;
  std::vector<double> detuning_at(double t) const;
};

// H = sum_j lambda_j (Q_{j-1} X_j P_{j+1} + P_{j-1} X_j Q_{j+1}) + delta_j Q_j
// on 2^n configurations. Virtual sites 0 and n+1 are permanently in the
// ground state.
SparseOperator build_qxp_hamiltonian(const QxpParameters& params);

// H = sum_j lambda_j sigma^x_j + Delta_j n_j + V_NN n_j n_{j+1}, open chain.
SparseOperator build_rydberg_hamiltonian(const RydbergParameters& params, double t = 0.0);

}  // namespace qcp
