#include "qcp/domain.hpp"

#include <cmath>
#include <sstream>

#include "qcp/diagnostics.hpp"
#include "qcp/error.hpp"

namespace qcp {

std::optional<int> domain_index(const SpinConfiguration& config) {
  const std::uint32_t bits = config.bits();
  // Prefix patterns are exactly 2^m - 1, i.e. bits & (bits + 1) == 0.
  if (bits == 0u || (static_cast<std::uint64_t>(bits) & (static_cast<std::uint64_t>(bits) + 1u)) != 0u) {
    return std::nullopt;
  }
  return config.excitation_count();
}

std::vector<double> DomainAmplitudes::populations() const {
  std::vector<double> p(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) p[i] = std::norm(amps[i]);
  return p;
}

double DomainAmplitudes::sector_population() const {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return s;
}

DomainAmplitudes project_to_domain(std::span<const Complex> spin_amplitudes, int n_sites) {
  if (spin_amplitudes.size() != basis_dimension(BasisKind::spin, n_sites)) {
    throw ParameterError("spin state length does not match 2^n");
  }
  require_normalized(spin_amplitudes);
  DomainAmplitudes out;
  out.amps.resize(static_cast<std::size_t>(n_sites));
  for (int m = 1; m <= n_sites; ++m) {
    out.amps[static_cast<std::size_t>(m - 1)] = spin_amplitudes[SpinConfiguration::prefix(m, n_sites).index()];
  }
  out.leakage = std::max(0.0, 1.0 - out.sector_population());
  return out;
}

DomainAmplitudes project_to_domain(const QuantumState& state) {
  if (state.basis() != BasisKind::spin) throw ParameterError("projection requires a spin-space state");
  return project_to_domain(state.amplitudes(), state.n_sites());
}

void DomainParameters::validate() const {
  if (n < 1) throw ParameterError("domain chain needs at least one site");
  if (static_cast<int>(hop.size()) != n - 1) {
    std::ostringstream os;
    os << "hop array has " << hop.size() << " entries, expected " << n - 1;
    throw ParameterError(os.str());
  }
  if (static_cast<int>(onsite.size()) != n) {
    std::ostringstream os;
    os << "onsite array has " << onsite.size() << " entries, expected " << n;
    throw ParameterError(os.str());
  }
  for (double v : hop) {
    if (!std::isfinite(v)) throw ParameterError("hop contains a non-finite entry");
  }
  for (double v : onsite) {
    if (!std::isfinite(v)) throw ParameterError("onsite contains a non-finite entry");
  }
}

DomainParameters DomainParameters::from_qxp(const QxpParameters& params) {
  params.validate();
  if (params.lambda[0] != 0.0 || params.delta[0] != 0.0) {
    throw ParameterError("domain mapping requires an undriven seed site (lambda_1 = delta_1 = 0)");
  }
  DomainParameters out;
  out.n = params.n_sites;
  out.hop.assign(params.lambda.begin() + 1, params.lambda.end());
  out.onsite = onsite_from_detunings(params.delta);
  return out;
}

SparseOperator build_domain_hamiltonian(const DomainParameters& params) {
  params.validate();
  const auto n = static_cast<std::size_t>(params.n);
  std::vector<std::size_t> row_ptr(n + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<Complex> values;
  cols.reserve(3 * n);
  values.reserve(3 * n);
  for (std::size_t r = 0; r < n; ++r) {
    if (r > 0) {
      cols.push_back(r - 1);
      values.emplace_back(params.hop[r - 1], 0.0);
    }
    cols.push_back(r);
    values.emplace_back(params.onsite[r], 0.0);
    if (r + 1 < n) {
      cols.push_back(r + 1);
      values.emplace_back(params.hop[r], 0.0);
    }
    row_ptr[r + 1] = cols.size();
  }
  return SparseOperator::from_csr(n, std::move(row_ptr), std::move(cols), std::move(values));
}

std::vector<double> ssh_couplings(int n, double lambda_v, double lambda_w) {
  if (n < 2) throw ParameterError("SSH chain needs at least two sites");
  if (!std::isfinite(lambda_v) || !std::isfinite(lambda_w)) {
    throw ParameterError("SSH couplings must be finite");
  }
  if (n % 2 != 0) warn("SSH chain with an odd number of sites has no paired edge states");
  std::vector<double> hop;
  hop.reserve(static_cast<std::size_t>(n - 1));
  for (int m = 2; m <= n; ++m) hop.push_back(m % 2 == 0 ? lambda_v : lambda_w);
  return hop;
}

SiteFunction derive_detunings(SiteFunction eta) {
  if (!eta) throw ParameterError("on-site generator is empty");
  return [eta = std::move(eta)](int j, double t) {
    if (j <= 1) return 0.0;
    return eta(j, t) - eta(j - 1, t);
  };
}

std::vector<double> onsite_from_detunings(std::span<const double> delta) {
  std::vector<double> eta(delta.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    acc += delta[j];
    eta[j] = acc;
  }
  return eta;
}

}  // namespace qcp
