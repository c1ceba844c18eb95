#include "qcp/pump.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qcp/diagnostics.hpp"
#include "qcp/error.hpp"

namespace qcp {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGapClosed = 1e-8;

int mod3(int m) { return ((m % kUnitCell) + kUnitCell) % kUnitCell; }

double cell_angle(int m, double phi) { return phi + 4.0 * kPi * mod3(m + 1) / 3.0; }

}  // namespace

PumpProgram PumpProgram::constant(double omega, double duration, double phase0) {
  PumpProgram p;
  p.segments.push_back({duration, omega});
  p.phase0 = phase0;
  p.validate();
  return p;
}

void PumpProgram::validate() const {
  if (segments.empty()) throw ParameterError("pump program has no segments");
  if (!std::isfinite(phase0)) throw ParameterError("pump phase0 must be finite");
  for (const auto& s : segments) {
    if (!(s.duration > 0.0) || !std::isfinite(s.duration)) {
      throw ParameterError("pump segment durations must be positive and finite");
    }
    if (!std::isfinite(s.omega)) throw ParameterError("pump segment omega must be finite");
  }
}

double PumpProgram::duration() const {
  double d = 0.0;
  for (const auto& s : segments) d += s.duration;
  return d;
}

double PumpProgram::phase(double t) const {
  if (t < 0.0) throw ParameterError("pump phase requested at negative time");
  double phi = phase0;
  double start = 0.0;
  for (const auto& s : segments) {
    if (t <= start + s.duration) return phi + s.omega * (t - start);
    phi += s.omega * s.duration;
    start += s.duration;
  }
  return phi;
}

double PumpProgram::omega_at(double t) const {
  double start = 0.0;
  for (const auto& s : segments) {
    if (t < start + s.duration) return s.omega;
    start += s.duration;
  }
  return 0.0;
}

double PumpProgram::max_omega() const {
  double w = 0.0;
  for (const auto& s : segments) w = std::max(w, std::abs(s.omega));
  return w;
}

std::vector<std::string> PumpProgram::check_min_hold(double min_hold) const {
  std::vector<std::string> out;
  for (std::size_t i = 1; i < segments.size(); ++i) {
    if (segments[i].omega == 0.0 && segments[i - 1].omega != 0.0 && segments[i].duration < min_hold) {
      std::ostringstream os;
      os << "hold segment " << i << " lasts " << segments[i].duration
         << ", shorter than the minimum hold " << min_hold;
      out.push_back(os.str());
      warn(out.back());
    }
  }
  return out;
}

AahSchedule::AahSchedule(double lambda0, double eta0, PumpProgram program)
    : lambda0_(lambda0), eta0_(eta0), program_(std::move(program)) {
  if (!std::isfinite(lambda0) || !std::isfinite(eta0)) throw ParameterError("lambda0 and eta0 must be finite");
  program_.validate();
}

double AahSchedule::hop_at_phase(int m, double phi) const { return lambda0_ * std::sin(cell_angle(m, phi)); }
double AahSchedule::onsite_at_phase(int m, double phi) const { return eta0_ * std::cos(cell_angle(m, phi)); }
double AahSchedule::hop(int m, double t) const { return hop_at_phase(m, phase(t)); }
double AahSchedule::onsite(int m, double t) const { return onsite_at_phase(m, phase(t)); }

DomainParameters AahSchedule::domain_parameters(int n, double t) const {
  const double phi = phase(t);
  DomainParameters p;
  p.n = n;
  p.hop.resize(static_cast<std::size_t>(std::max(n - 1, 0)));
  p.onsite.resize(static_cast<std::size_t>(n));
  for (int m = 1; m <= n; ++m) {
    p.onsite[static_cast<std::size_t>(m - 1)] = onsite_at_phase(m, phi);
    if (m >= 2) p.hop[static_cast<std::size_t>(m - 2)] = hop_at_phase(m, phi);
  }
  p.validate();
  return p;
}

AahSchedule aah_schedule(double lambda0, double eta0, PumpProgram program) {
  if (std::abs(eta0) < 5.0 * std::abs(lambda0)) {
    std::ostringstream os;
    os << "|eta0| = " << std::abs(eta0) << " is below 5 lambda0; dispersion is not suppressed";
    warn(os.str());
  }
  return AahSchedule(lambda0, eta0, std::move(program));
}

RydbergPumpDetunings rydberg_pump_detunings(const AahSchedule& schedule) {
  RydbergPumpDetunings out;
  const double eta0 = schedule.eta0();
  out.delta = [schedule, eta0](int j, double t) {
    if (j <= 1) return 0.0;
    const double phi = schedule.phase(t);
    return -std::sqrt(3.0) * eta0 * std::sin(phi + 4.0 * kPi * mod3(j) / 3.0 + 2.0 * kPi / 3.0);
  };
  out.delta_max = std::sqrt(3.0) * std::abs(eta0);
  out.min_offset = 10.0 * out.delta_max;
  return out;
}

RydbergParameters rydberg_pump_parameters(const AahSchedule& schedule, int n_sites, double delta_offset) {
  const auto det = rydberg_pump_detunings(schedule);
  if (std::abs(delta_offset) < det.min_offset) {
    std::ostringstream os;
    os << "|Delta_0| = " << std::abs(delta_offset) << " is below the recommended " << det.min_offset;
    warn(os.str());
  }
  RydbergParameters p;
  p.n_sites = n_sites;
  p.lambda.assign(static_cast<std::size_t>(n_sites), 0.0);
  p.delta_mod.assign(static_cast<std::size_t>(n_sites), 0.0);
  p.delta_offset = delta_offset;
  p.v_nn = -delta_offset;
  p.facilitation_mode = true;
  p.seed_boundary = true;
  p.drive = SiteSchedule{
      [schedule](int j, double t) { return j <= 1 ? 0.0 : schedule.hop(j, t); },
      det.delta,
  };
  p.validate();
  return p;
}

HamiltonianGenerator domain_pump_generator(const AahSchedule& schedule, int n_sites) {
  if (n_sites < 1) throw ParameterError("domain model needs at least one site");
  return HamiltonianGenerator::time_dependent(
      [schedule, n_sites](double t) { return build_domain_hamiltonian(schedule.domain_parameters(n_sites, t)); },
      schedule.program().max_omega());
}

namespace {

// Rebuilds the driven Rydberg chain on a fixed sparsity pattern: every
// site j >= 2 may flip, site 1 is the undriven seed.
class RydbergChainAssembler {
 public:
  explicit RydbergChainAssembler(RydbergParameters params) : params_(std::move(params)) {
    const int n = params_.n_sites;
    if (n > kMaxBuildSites) throw CapacityError("spin models are limited to " + std::to_string(kMaxBuildSites) + " sites");
    const std::size_t dim = std::size_t{1} << n;
    std::vector<std::size_t> row_ptr{0};
    std::vector<std::size_t> cols;
    row_ptr.reserve(dim + 1);
    cols.reserve(dim * static_cast<std::size_t>(n));
    role_.reserve(dim * static_cast<std::size_t>(n));
    interaction_.resize(dim);
    for (std::size_t s = 0; s < dim; ++s) {
      for (int b = n - 1; b >= 1; --b) {
        if ((s >> b) & 1u) {
          cols.push_back(s ^ (std::size_t{1} << b));
          role_.push_back(static_cast<std::int8_t>(b));
        }
      }
      cols.push_back(s);
      role_.push_back(-1);
      for (int b = 1; b < n; ++b) {
        if (!((s >> b) & 1u)) {
          cols.push_back(s ^ (std::size_t{1} << b));
          role_.push_back(static_cast<std::int8_t>(b));
        }
      }
      row_ptr.push_back(cols.size());
      interaction_[s] = params_.v_nn * static_cast<double>(std::popcount(s & (s >> 1)));
    }
    std::vector<Complex> values(cols.size());
    pattern_ = SparseOperator::from_csr(dim, std::move(row_ptr), std::move(cols), std::move(values));
  }

  SparseOperator operator()(double t) const {
    const auto lambda = params_.lambda_at(t);
    const auto detuning = params_.detuning_at(t);
    const std::size_t dim = pattern_.dim();
    // Detuning energy of s from that of s with its lowest set bit cleared.
    std::vector<double> energy(dim, 0.0);
    for (std::size_t s = 1; s < dim; ++s) {
      energy[s] = energy[s & (s - 1)] + detuning[static_cast<std::size_t>(std::countr_zero(s))];
    }
    const auto row_ptr = pattern_.row_ptr();
    std::vector<Complex> values(pattern_.nnz());
    for (std::size_t s = 0; s < dim; ++s) {
      for (std::size_t k = row_ptr[s]; k < row_ptr[s + 1]; ++k) {
        const int b = role_[k];
        values[k] = b < 0 ? energy[s] + interaction_[s] : lambda[static_cast<std::size_t>(b)];
      }
    }
    return pattern_.with_values(std::move(values));
  }

 private:
  RydbergParameters params_;
  SparseOperator pattern_;
  std::vector<std::int8_t> role_;    // flipped bit, -1 on the diagonal
  std::vector<double> interaction_;  // V_NN times the number of excited pairs
};

}  // namespace

HamiltonianGenerator rydberg_pump_generator(const AahSchedule& schedule, int n_sites, double delta_offset) {
  RydbergParameters params = rydberg_pump_parameters(schedule, n_sites, delta_offset);
  // The driven part is a sum of commuting single-site terms
  // [[0, lambda_j], [lambda_j, delta_j]], so its extreme eigenvalues are the
  // sums of the single-site ones.
  auto norm = [params](double t) {
    const auto lam = params.lambda_at(t);
    const auto det = params.detuning_at(t);
    double top = 0.0;
    double bottom = 0.0;
    for (std::size_t j = 0; j < lam.size(); ++j) {
      const double d = (j == 0 && params.seed_boundary) ? 0.0 : det[j] - params.delta_offset;
      const double r = std::hypot(0.5 * d, lam[j]);
      top += 0.5 * d + r;
      bottom += 0.5 * d - r;
    }
    return std::max(top, -bottom);
  };
  auto assembler = std::make_shared<const RydbergChainAssembler>(params);
  return HamiltonianGenerator::time_dependent([assembler](double t) { return (*assembler)(t); },
                                              schedule.program().max_omega(), std::move(norm));
}

Eigen::Matrix3cd aah_bloch_hamiltonian(double lambda0, double eta0, double phi, double k) {
  const AahSchedule s(lambda0, eta0, PumpProgram::constant(0.0, 1.0));
  Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
  for (int sub = 0; sub < 3; ++sub) h(sub, sub) = s.onsite_at_phase(sub + 1, phi);
  h(0, 1) = s.hop_at_phase(2, phi);
  h(1, 2) = s.hop_at_phase(3, phi);
  // Site 3c (sublattice 2 of the previous cell) to site 3c + 1.
  h(0, 2) = s.hop_at_phase(4, phi) * std::exp(Complex(0.0, -k));
  h(1, 0) = std::conj(h(0, 1));
  h(2, 1) = std::conj(h(1, 2));
  h(2, 0) = std::conj(h(0, 2));
  return h;
}

Eigen::Vector3d aah_bloch_bands(double lambda0, double eta0, double phi, double k) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(aah_bloch_hamiltonian(lambda0, eta0, phi, k),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

AdiabaticityReport adiabaticity_check(const AahSchedule& schedule, int n_k, int n_phase) {
  if (n_k < 4 || n_phase < 4) throw ParameterError("adiabaticity grid too coarse");
  const PumpProgram& prog = schedule.program();
  AdiabaticityReport r;
  r.max_omega = prog.max_omega();
  r.min_gap = std::numeric_limits<double>::infinity();

  auto probe = [&](double phi, double t) {
    for (int i = 0; i < n_k; ++i) {
      const double k = 2.0 * kPi * i / n_k;
      const auto e = aah_bloch_bands(schedule.lambda0(), schedule.eta0(), phi, k);
      const double gap = std::min(e(1) - e(0), e(2) - e(1));
      if (gap < r.min_gap) {
        r.min_gap = gap;
        r.gap_phase = phi;
        r.gap_time = t;
      }
    }
  };

  // The phases visited by the program; a full cycle or more covers them all.
  double start = 0.0;
  double phi = prog.phase0;
  for (const auto& seg : prog.segments) {
    if (seg.omega == 0.0) {
      probe(phi, start);
    } else {
      const double sweep = std::min(std::abs(seg.omega) * seg.duration, 2.0 * kPi);
      const int samples = std::max(2, static_cast<int>(std::ceil(n_phase * sweep / (2.0 * kPi))));
      for (int i = 0; i <= samples; ++i) {
        const double dt = seg.duration * (sweep / (std::abs(seg.omega) * seg.duration)) * i / samples;
        probe(phi + seg.omega * dt, start + dt);
      }
    }
    phi += seg.omega * seg.duration;
    start += seg.duration;
  }

  r.gap_closed = r.min_gap < kGapClosed;
  r.ratio = r.max_omega == 0.0 ? 0.0 : (r.gap_closed ? std::numeric_limits<double>::infinity() : r.max_omega / r.min_gap);
  r.pass = !r.gap_closed && r.ratio < 0.1;
  return r;
}

}  // namespace qcp
