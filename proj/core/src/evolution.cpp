#include "qcp/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qcp/domain.hpp"
#include "qcp/error.hpp"

namespace qcp {
namespace {

std::vector<double> comparison_populations(BasisKind basis, int n, std::span<const Complex> amps) {
  std::vector<double> out;
  const auto nn = static_cast<std::size_t>(n);
  if (basis == BasisKind::domain) {
    out.resize(nn);
    for (std::size_t m = 0; m < nn; ++m) out[m] = std::norm(amps[m]);
    return out;
  }
  out.assign(2 * nn, 0.0);
  for (std::size_t s = 0; s < amps.size(); ++s) {
    const double p = std::norm(amps[s]);
    if (p == 0.0) continue;
    for (std::size_t b = 0; b < nn; ++b) {
      if ((s >> b) & 1u) out[b] += p;
    }
  }
  for (std::size_t m = 1; m <= nn; ++m) out[nn + m - 1] = std::norm(amps[(std::size_t{1} << m) - 1]);
  return out;
}

double max_difference(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

void check_finite(std::span<const Complex> amps, double t) {
  for (const auto& a : amps) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      std::ostringstream os;
      os << "non-finite amplitude encountered at t = " << t;
      throw NumericalError(os.str());
    }
  }
}

void validate_grid(std::span<const double> grid) {
  if (grid.empty()) throw ParameterError("time grid is empty");
  if (grid.front() != 0.0) throw ParameterError("time grid must start at 0");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || !(grid[i] > grid[i - 1])) {
      throw ParameterError("time grid must be finite and strictly increasing");
    }
  }
}

}  // namespace

HamiltonianGenerator HamiltonianGenerator::constant(SparseOperator h) {
  HamiltonianGenerator g;
  g.static_op_ = std::make_shared<const SparseOperator>(std::move(h));
  return g;
}

HamiltonianGenerator HamiltonianGenerator::time_dependent(Builder at, double omega, NormBound step_norm) {
  if (!at) throw ParameterError("time-dependent generator has no builder");
  if (!std::isfinite(omega)) throw ParameterError("modulation frequency must be finite");
  HamiltonianGenerator g;
  g.builder_ = std::move(at);
  g.omega_ = std::abs(omega);
  g.step_norm_ = std::move(step_norm);
  return g;
}

SparseOperator HamiltonianGenerator::at(double t) const {
  return static_op_ ? *static_op_ : builder_(t);
}

const SparseOperator& HamiltonianGenerator::static_operator() const {
  if (!static_op_) throw ParameterError("generator is time dependent");
  return *static_op_;
}

double HamiltonianGenerator::step_norm(double t) const {
  if (step_norm_) return step_norm_(t);
  return at(t).row_sum_norm();
}

ObservableRow measure(BasisKind basis, int n_sites, std::span<const Complex> amps, double t,
                      const SparseOperator* hamiltonian) {
  const auto n = static_cast<std::size_t>(n_sites);
  if (amps.size() != basis_dimension(basis, n_sites)) {
    throw ParameterError("state length does not match the basis dimension");
  }
  ObservableRow row;
  row.t = t;
  row.norm = norm_of(amps);
  row.site_populations.assign(n, 0.0);
  row.domain_populations.assign(n, 0.0);
  if (basis == BasisKind::domain) {
    for (std::size_t m = 0; m < n; ++m) row.domain_populations[m] = std::norm(amps[m]);
    // Sites 1..m are excited in domain state m.
    double tail = 0.0;
    for (std::size_t j = n; j-- > 0;) {
      tail += row.domain_populations[j];
      row.site_populations[j] = tail;
    }
    row.fidelity_left = row.domain_populations.front();
    row.fidelity_right = row.domain_populations.back();
  } else {
    for (std::size_t s = 0; s < amps.size(); ++s) {
      const double p = std::norm(amps[s]);
      if (p == 0.0) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if ((s >> b) & 1u) row.site_populations[b] += p;
      }
    }
    for (std::size_t m = 1; m <= n; ++m) {
      row.domain_populations[m - 1] = std::norm(amps[(std::size_t{1} << m) - 1]);
    }
    row.fidelity_left = std::norm(amps[1]);
    row.fidelity_right = std::norm(amps[amps.size() - 1]);
  }
  double sector = 0.0;
  double weighted = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    sector += row.domain_populations[m];
    weighted += static_cast<double>(m + 1) * row.domain_populations[m];
  }
  row.leakage = std::max(0.0, row.norm * row.norm - sector);
  if (sector >= kMinDomainPopulation) row.center_of_mass = weighted / sector;
  if (hamiltonian) row.energy = hamiltonian->expectation(amps);
  return row;
}

ObservableRow measure(const QuantumState& state, double t, const SparseOperator* hamiltonian) {
  return measure(state.basis(), state.n_sites(), state.amplitudes(), t, hamiltonian);
}

namespace {

std::vector<double> column(const std::vector<ObservableRow>& rows, auto&& get) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(get(r));
  return out;
}

}  // namespace

std::vector<double> TrajectoryRecord::times() const {
  return column(rows, [](const ObservableRow& r) { return r.t; });
}
std::vector<double> TrajectoryRecord::fidelity_right() const {
  return column(rows, [](const ObservableRow& r) { return r.fidelity_right; });
}
std::vector<double> TrajectoryRecord::fidelity_left() const {
  return column(rows, [](const ObservableRow& r) { return r.fidelity_left; });
}
std::vector<double> TrajectoryRecord::domain_population(int m) const {
  if (m < 1 || m > n_sites) throw ParameterError("domain size outside [1, n]");
  return column(rows, [m](const ObservableRow& r) { return r.domain_populations[static_cast<std::size_t>(m - 1)]; });
}
std::vector<double> TrajectoryRecord::site_population(int j) const {
  if (j < 1 || j > n_sites) throw ParameterError("site index outside [1, n]");
  return column(rows, [j](const ObservableRow& r) { return r.site_populations[static_cast<std::size_t>(j - 1)]; });
}

TrajectoryRecord evolve(const HamiltonianGenerator& generator, const QuantumState& psi0,
                        std::span<const double> t_grid, const EvolveOptions& options) {
  if (!(options.tol >= 1e-12 && options.tol <= 1e-6)) {
    throw ParameterError("tolerance must lie in [1e-12, 1e-6]");
  }
  validate_grid(t_grid);
  if (psi0.dim() > options.max_dim) {
    std::ostringstream os;
    os << "state dimension " << psi0.dim() << " exceeds the evolution limit " << options.max_dim;
    throw CapacityError(os.str());
  }

  const BasisKind basis = psi0.basis();
  const int n = psi0.n_sites();
  TrajectoryRecord rec;
  rec.basis = basis;
  rec.n_sites = n;
  rec.static_hamiltonian = generator.is_static();
  rec.tol = options.tol;
  rec.rows.reserve(t_grid.size());

  const SparseOperator* h_static = generator.is_static() ? &generator.static_operator() : nullptr;
  {
    const SparseOperator h0 = generator.at(0.0);
    if (h0.dim() != psi0.dim()) throw ParameterError("Hamiltonian and state dimensions differ");
    rec.operator_max_entry = h0.max_abs_entry();
  }

  std::vector<Complex> psi(psi0.amplitudes().begin(), psi0.amplitudes().end());
  KrylovPropagator krylov;
  const double halving_limit = 10.0 * options.tol;

  auto record = [&](double t) {
    ObservableRow row = measure(basis, n, psi, t, h_static);
    rec.max_norm_drift = std::max(rec.max_norm_drift, std::abs(1.0 - row.norm * row.norm));
    rec.max_leakage = std::max(rec.max_leakage, row.leakage);
    if (row.energy && !rec.rows.empty()) {
      rec.max_energy_drift = std::max(rec.max_energy_drift, std::abs(*row.energy - *rec.rows.front().energy));
    }
    rec.rows.push_back(std::move(row));
    if (options.observer) options.observer(t, psi);
  };
  record(0.0);

  auto propagate = [&](std::vector<Complex>& v, double t0, double t1, long substeps, double ktol) {
    const double dt = (t1 - t0) / static_cast<double>(substeps);
    for (long i = 0; i < substeps; ++i) {
      if (h_static) {
        krylov.propagate(*h_static, v, dt, ktol);
      } else {
        const double tm = t0 + (static_cast<double>(i) + 0.5) * dt;
        const SparseOperator h = generator.at(tm);
        if (h.dim() != v.size()) throw ParameterError("Hamiltonian dimension changed during evolution");
        krylov.propagate(h, v, dt, ktol);
      }
    }
    rec.steps += substeps;
  };

  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    const double t0 = t_grid[k - 1];
    const double t1 = t_grid[k];
    long substeps = 1;
    if (!h_static) {
      const double tm = 0.5 * (t0 + t1);
      const double norm = std::max({generator.step_norm(t0), generator.step_norm(tm), generator.step_norm(t1)});
      double dt_max = norm > 0.0 ? options.norm_step_bound / norm : (t1 - t0);
      if (generator.omega() > 0.0) {
        dt_max = std::min(dt_max, 2.0 * std::numbers::pi / generator.omega() / options.steps_per_period);
      }
      substeps = std::max<long>(1, static_cast<long>(std::ceil((t1 - t0) / dt_max - 1e-12)));
    }

    if (!options.verify_step_halving) {
      propagate(psi, t0, t1, substeps, options.tol);
    } else {
      double ktol = options.tol;
      std::vector<Complex> coarse = psi;
      propagate(coarse, t0, t1, substeps, ktol);
      bool converged = false;
      for (int attempt = 0; attempt <= options.max_refinements; ++attempt) {
        std::vector<Complex> fine = psi;
        propagate(fine, t0, t1, 2 * substeps, ktol);
        const double delta = max_difference(comparison_populations(basis, n, coarse),
                                            comparison_populations(basis, n, fine));
        if (delta < halving_limit) {
          rec.max_halving_delta = std::max(rec.max_halving_delta, delta);
          psi = std::move(fine);
          converged = true;
          break;
        }
        if (h_static) {
          // The exponential is exact up to the Krylov tolerance; tighten it.
          ktol = std::max(ktol * 0.1, 1e-15);
          coarse = psi;
          propagate(coarse, t0, t1, substeps, ktol);
        } else {
          substeps *= 2;
          coarse = std::move(fine);
        }
      }
      if (!converged) {
        std::ostringstream os;
        os << "step-halving check did not converge on [" << t0 << ", " << t1 << "]";
        throw NumericalError(os.str());
      }
    }
    check_finite(psi, t1);
    if (!h_static && k % 64 == 0) {
      rec.operator_max_entry = std::max(rec.operator_max_entry, generator.at(t1).max_abs_entry());
    }
    record(t1);
  }
  rec.krylov = krylov.stats();
  return rec;
}

std::vector<double> uniform_grid(double t_max, std::size_t n_samples) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ParameterError("t_max must be positive and finite");
  if (n_samples < 2) throw ParameterError("need at least two samples");
  std::vector<double> grid(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) {
    grid[i] = t_max * static_cast<double>(i) / static_cast<double>(n_samples - 1);
  }
  return grid;
}

}  // namespace qcp
