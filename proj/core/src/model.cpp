#include "qcp/model.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "qcp/error.hpp"

namespace qcp {
namespace {

void check_site_count(int n_sites, int limit) {
  if (n_sites < 1 || n_sites > limit) {
    std::ostringstream os;
    os << "number of sites " << n_sites << " outside [1, " << limit << "]";
    throw CapacityError(os.str());
  }
}

void check_array(const std::vector<double>& values, int n_sites, const char* name) {
  if (static_cast<int>(values.size()) != n_sites) {
    std::ostringstream os;
    os << name << " has " << values.size() << " entries, expected " << n_sites;
    throw ParameterError(os.str());
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw ParameterError(std::string(name) + " contains a non-finite entry");
  }
}

// Assembles an operator whose off-diagonal entries connect s and
// s ^ (1 << b) with amplitude flip(s, b), skipping zero amplitudes, plus a
// diagonal diag(s) stored for every row. Rows come out sorted without a
// global sort: set bits give smaller columns, visited from the highest bit
// down, then the diagonal, then unset bits from the lowest up.
template <class Flip, class Diag>
SparseOperator assemble_bitflip(int n_sites, Flip&& flip, Diag&& diag) {
  const std::size_t dim = std::size_t{1} << n_sites;
  std::vector<std::size_t> row_ptr(dim + 1, 0);
  std::vector<std::size_t> cols;
  std::vector<Complex> values;
  cols.reserve(dim * static_cast<std::size_t>(n_sites + 1));
  values.reserve(cols.capacity());
  for (std::size_t s = 0; s < dim; ++s) {
    for (int b = n_sites - 1; b >= 0; --b) {
      if ((s >> b) & 1u) {
        const double a = flip(s, b);
        if (a != 0.0) {
          cols.push_back(s ^ (std::size_t{1} << b));
          values.emplace_back(a, 0.0);
        }
      }
    }
    cols.push_back(s);
    values.emplace_back(diag(s), 0.0);
    for (int b = 0; b < n_sites; ++b) {
      if (!((s >> b) & 1u)) {
        const double a = flip(s, b);
        if (a != 0.0) {
          cols.push_back(s ^ (std::size_t{1} << b));
          values.emplace_back(a, 0.0);
        }
      }
    }
    row_ptr[s + 1] = cols.size();
  }
  return SparseOperator::from_csr(dim, std::move(row_ptr), std::move(cols), std::move(values));
}

}  // namespace

SpinConfiguration::SpinConfiguration(std::uint32_t bits, int n_sites)
    : bits_(bits), n_sites_(n_sites) {
  check_site_count(n_sites, kMaxSites);
  if (n_sites < 32 && (bits >> n_sites) != 0u) {
    throw ParameterError("configuration bits exceed the number of sites");
  }
}

SpinConfiguration SpinConfiguration::prefix(int m, int n_sites) {
  if (m < 0 || m > n_sites) throw ParameterError("prefix domain size outside [0, n]");
  return {static_cast<std::uint32_t>((std::uint64_t{1} << m) - 1u), n_sites};
}

bool SpinConfiguration::excited(int site) const {
  if (site < 1 || site > n_sites_) throw ParameterError("site index outside [1, n]");
  return (bits_ >> (site - 1)) & 1u;
}

SpinConfiguration SpinConfiguration::flipped(int site) const {
  if (site < 1 || site > n_sites_) throw ParameterError("site index outside [1, n]");
  return {bits_ ^ (1u << (site - 1)), n_sites_};
}

int SpinConfiguration::excitation_count() const noexcept { return std::popcount(bits_); }

std::string SpinConfiguration::to_string() const {
  std::string out;
  for (int j = 1; j <= n_sites_; ++j) out += excited(j) ? "•" : "∘";
  return out;
}

std::vector<SpinConfiguration> enumerate_basis(int n_sites) {
  check_site_count(n_sites, kMaxSites);
  const std::uint64_t dim = std::uint64_t{1} << n_sites;
  std::vector<SpinConfiguration> basis;
  basis.reserve(dim);
  for (std::uint64_t s = 0; s < dim; ++s) basis.emplace_back(static_cast<std::uint32_t>(s), n_sites);
  return basis;
}

void QxpParameters::validate() const {
  check_site_count(n_sites, kMaxSites);
  check_array(lambda, n_sites, "lambda");
  check_array(delta, n_sites, "delta");
  if (seed_boundary && (lambda[0] != 0.0 || delta[0] != 0.0)) {
    throw ParameterError("seed-boundary mode requires lambda_1 = 0 and delta_1 = 0");
  }
}

void RydbergParameters::validate() const {
  check_site_count(n_sites, kMaxSites);
  check_array(lambda, n_sites, "lambda");
  check_array(delta_mod, n_sites, "delta_mod");
  if (!std::isfinite(delta_offset) || !std::isfinite(v_nn)) {
    throw ParameterError("delta_offset and v_nn must be finite");
  }
  if (facilitation_mode && std::abs(v_nn + delta_offset) > 1e-12 * (1.0 + std::abs(delta_offset))) {
    throw ParameterError("facilitation mode requires V_NN + Delta_0 = 0");
  }
  if (seed_boundary && (lambda[0] != 0.0 || delta_mod[0] != 0.0)) {
    throw ParameterError("seed-boundary mode requires lambda_1 = 0 and delta_1 = 0");
  }
}

std::vector<double> RydbergParameters::lambda_at(double t) const {
  std::vector<double> out = lambda;
  if (drive && drive->lambda) {
    for (int j = 1; j <= n_sites; ++j) out[j - 1] = drive->lambda(j, t);
  }
  if (seed_boundary && out[0] != 0.0) {
    throw ParameterError("seed-boundary mode requires lambda_1(t) = 0");
  }
  return out;
}

std::vector<double> RydbergParameters::detuning_at(double t) const {
  std::vector<double> out(static_cast<std::size_t>(n_sites));
  for (int j = 1; j <= n_sites; ++j) {
    const double mod = (drive && drive->delta) ? drive->delta(j, t) : delta_mod[j - 1];
    if (j == 1 && seed_boundary) {
      if (mod != 0.0) throw ParameterError("seed-boundary mode requires delta_1(t) = 0");
      out[0] = 0.0;
    } else {
      out[j - 1] = delta_offset + mod;
    }
  }
  return out;
}

SparseOperator build_qxp_hamiltonian(const QxpParameters& params) {
  params.validate();
  check_site_count(params.n_sites, kMaxBuildSites);
  const int n = params.n_sites;
  const auto& lambda = params.lambda;
  const auto& delta = params.delta;
  auto flip = [&](std::size_t s, int b) {
    const bool left = b > 0 && ((s >> (b - 1)) & 1u);
    const bool right = b < n - 1 && ((s >> (b + 1)) & 1u);
    return left != right ? lambda[static_cast<std::size_t>(b)] : 0.0;
  };
  auto diag = [&](std::size_t s) {
    double e = 0.0;
    for (int b = 0; b < n; ++b) {
      if ((s >> b) & 1u) e += delta[static_cast<std::size_t>(b)];
    }
    return e;
  };
  return assemble_bitflip(n, flip, diag);
}

SparseOperator build_rydberg_hamiltonian(const RydbergParameters& params, double t) {
  params.validate();
  check_site_count(params.n_sites, kMaxBuildSites);
  if (!(t >= 0.0)) throw ParameterError("time must be non-negative");
  const int n = params.n_sites;
  const std::vector<double> lambda = params.lambda_at(t);
  const std::vector<double> detuning = params.detuning_at(t);
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(lambda[j]) || !std::isfinite(detuning[j])) {
      throw ParameterError("drive produced a non-finite coefficient");
    }
  }
  const double v_nn = params.v_nn;
  auto flip = [&](std::size_t, int b) { return lambda[static_cast<std::size_t>(b)]; };
  auto diag = [&](std::size_t s) {
    double e = 0.0;
    for (int b = 0; b < n; ++b) {
      if ((s >> b) & 1u) e += detuning[static_cast<std::size_t>(b)];
    }
    return e + v_nn * std::popcount(s & (s >> 1));
  };
  return assemble_bitflip(n, flip, diag);
}

}  // namespace qcp
