#include "qcp/state.hpp"

#include <cmath>
#include <sstream>

#include "qcp/error.hpp"

namespace qcp {

const char* to_string(BasisKind kind) noexcept {
  return kind == BasisKind::spin ? "spin" : "domain";
}

std::size_t basis_dimension(BasisKind kind, int n_sites) {
  if (n_sites < 1 || n_sites > kMaxSites) throw CapacityError("number of sites outside [1, 30]");
  return kind == BasisKind::spin ? (std::size_t{1} << n_sites) : static_cast<std::size_t>(n_sites);
}

double norm_of(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& a : v) s += std::norm(a);
  return std::sqrt(s);
}

void require_normalized(std::span<const Complex> v, double tolerance) {
  const double n = norm_of(v);
  if (!(std::abs(n - 1.0) <= tolerance)) {
    std::ostringstream os;
    os << "state norm " << n << " differs from 1 by more than " << tolerance;
    throw NormalizationError(os.str());
  }
}

QuantumState::QuantumState(BasisKind basis, int n_sites, std::vector<Complex> amplitudes)
    : basis_(basis), n_sites_(n_sites), amps_(std::move(amplitudes)) {
  if (amps_.size() != basis_dimension(basis, n_sites)) {
    throw ParameterError("amplitude vector length does not match the basis dimension");
  }
  for (const auto& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw NumericalError("state contains non-finite amplitudes");
    }
  }
  require_normalized(amps_);
}

QuantumState QuantumState::seed(BasisKind basis, int n_sites) {
  return domain_state(basis, n_sites, 1);
}

QuantumState QuantumState::domain_state(BasisKind basis, int n_sites, int m) {
  if (m < 1 || m > n_sites) throw ParameterError("domain size outside [1, n]");
  std::vector<Complex> amps(basis_dimension(basis, n_sites));
  if (basis == BasisKind::spin) {
    amps[SpinConfiguration::prefix(m, n_sites).index()] = 1.0;
  } else {
    amps[static_cast<std::size_t>(m - 1)] = 1.0;
  }
  return {basis, n_sites, std::move(amps)};
}

QuantumState QuantumState::basis_state(const SpinConfiguration& config) {
  std::vector<Complex> amps(basis_dimension(BasisKind::spin, config.n_sites()));
  amps[config.index()] = 1.0;
  return {BasisKind::spin, config.n_sites(), std::move(amps)};
}

double QuantumState::norm() const { return norm_of(amps_); }

}  // namespace qcp
