#include "qcp/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "qcp/domain.hpp"
#include "qcp/error.hpp"

namespace qcp {
namespace {

constexpr double kPi = std::numbers::pi;

bool gap_closed(double lambda_v, double lambda_w) {
  return std::abs(std::abs(lambda_v) - std::abs(lambda_w)) <=
         1e-12 * std::max(std::abs(lambda_v), std::abs(lambda_w));
}

Eigen::MatrixXd ssh_matrix(int n, double lv, double lw) {
  const auto hop = ssh_couplings(n, lv, lw);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int m = 2; m <= n; ++m) {
    h(m - 1, m - 2) = h(m - 2, m - 1) = hop[static_cast<std::size_t>(m - 2)];
  }
  return h;
}

// Indices of the two eigenvalues closest to zero, higher energy first.
std::pair<int, int> edge_pair(const Eigen::VectorXd& e) {
  std::vector<int> idx(static_cast<std::size_t>(e.size()));
  for (int i = 0; i < e.size(); ++i) idx[static_cast<std::size_t>(i)] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return std::abs(e(a)) < std::abs(e(b)); });
  int a = idx[0];
  int b = idx[1];
  if (e(a) < e(b)) std::swap(a, b);
  return {a, b};
}

void require_even(int n) {
  if (n < 2 || n % 2 != 0) throw ParameterError("edge-state analysis needs an even chain with N >= 2");
}

}  // namespace

const char* to_string(SshPhase phase) noexcept {
  switch (phase) {
    case SshPhase::topological: return "topological";
    case SshPhase::trivial: return "trivial";
    case SshPhase::gapless: return "gapless";
  }
  return "unknown";
}

LocalizationLength localization_length(double lambda_v, double lambda_w) {
  if (!std::isfinite(lambda_v) || !std::isfinite(lambda_w)) throw ParameterError("couplings must be finite");
  if (lambda_v == 0.0 || lambda_w == 0.0) throw ParameterError("couplings must be nonzero");
  if (gap_closed(lambda_v, lambda_w)) return {std::numeric_limits<double>::infinity(), SshPhase::gapless};
  const double xi = 1.0 / (std::log(std::abs(lambda_w)) - std::log(std::abs(lambda_v)));
  return {xi, xi > 0.0 ? SshPhase::topological : SshPhase::trivial};
}

EdgeStateReport hybridization(int n_sites, double lambda_v, double lambda_w, double n1) {
  require_even(n_sites);
  if (!(n1 > 0.0) || n1 > 1.0) throw ParameterError("edge-site population n1 must lie in (0, 1]");
  const auto loc = localization_length(lambda_v, lambda_w);
  EdgeStateReport r;
  r.xi = loc.xi;
  r.phase = loc.phase;
  r.n1 = n1;
  r.valid = loc.phase == SshPhase::topological;
  if (!r.valid) {
    r.t_hyb = std::numeric_limits<double>::infinity();
    return r;
  }
  const double cells = n_sites / 2 - 1;
  const double e = std::abs(n1 * std::exp(-cells / loc.xi) * lambda_v);
  r.e_plus = e;
  r.e_minus = -e;
  r.t_hyb = 2.0 * kPi / (r.e_plus - r.e_minus);
  return r;
}

EdgeStateReport exact_edge_splitting(int n_sites, double lambda_v, double lambda_w) {
  require_even(n_sites);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ssh_matrix(n_sites, lambda_v, lambda_w), Eigen::EigenvaluesOnly);
  const auto [a, b] = edge_pair(es.eigenvalues());
  EdgeStateReport r;
  if (lambda_v != 0.0 && lambda_w != 0.0) {
    const auto loc = localization_length(lambda_v, lambda_w);
    r.xi = loc.xi;
    r.phase = loc.phase;
  }
  r.e_plus = es.eigenvalues()(a);
  r.e_minus = es.eigenvalues()(b);
  r.valid = r.e_plus > r.e_minus;
  r.t_hyb = r.valid ? 2.0 * kPi / (r.e_plus - r.e_minus) : std::numeric_limits<double>::infinity();
  return r;
}

double edge_site_population(int n_sites, double lambda_v, double lambda_w) {
  require_even(n_sites);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ssh_matrix(n_sites, lambda_v, lambda_w));
  const auto [a, b] = edge_pair(es.eigenvalues());
  Eigen::VectorXd plus = es.eigenvectors().col(a);
  Eigen::VectorXd minus = es.eigenvectors().col(b);
  // Fix the relative sign so that the sum builds up on site 1.
  if (plus(0) * minus(0) < 0.0) minus = -minus;
  const double c = (plus(0) + minus(0)) / std::sqrt(2.0);
  return c * c;
}

int winding_number(double lambda_v, double lambda_w, int k_samples) {
  if (k_samples < 64) throw ParameterError("winding number needs at least 64 k samples");
  if (!std::isfinite(lambda_v) || !std::isfinite(lambda_w)) throw ParameterError("couplings must be finite");
  if (lambda_v == 0.0 && lambda_w == 0.0) throw ParameterError("both couplings vanish");
  if (gap_closed(lambda_v, lambda_w)) throw ParameterError("|lambda_v| = |lambda_w|: gap closed, winding undefined");
  auto h = [&](int i) {
    const double k = 2.0 * kPi * i / k_samples;
    return Complex(lambda_v, 0.0) + lambda_w * std::exp(Complex(0.0, k));
  };
  double total = 0.0;
  Complex prev = h(0);
  for (int i = 1; i <= k_samples; ++i) {
    const Complex cur = h(i);
    total += std::arg(cur / prev);
    prev = cur;
  }
  const double w = total / (2.0 * kPi);
  const double rounded = std::round(w);
  if (std::abs(w - rounded) > 1e-6) {
    std::ostringstream os;
    os << "winding number residual " << std::abs(w - rounded) << " exceeds 1e-6";
    throw NumericalError(os.str());
  }
  return static_cast<int>(rounded);
}

namespace {

struct BandFrame {
  Eigen::Vector3d energies;
  Eigen::Matrix3cd vectors;
};

BandFrame bloch_frame(const AahSchedule& s, double phi, double k) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(aah_bloch_hamiltonian(s.lambda0(), s.eta0(), phi, k));
  return {es.eigenvalues(), es.eigenvectors()};
}

void check_grid(const ChernGrid& grid) {
  if (grid.n_k < 24 || grid.n_phase < 24) throw ParameterError("Chern grid must be at least 24 x 24");
}

// Berry flux of `band` summed over all plaquettes, in units of 2 pi.
double chern_flux(const std::vector<BandFrame>& frames, const ChernGrid& grid, int band) {
  auto at = [&](int i, int j) -> Eigen::Vector3cd {
    return frames[static_cast<std::size_t>((j % grid.n_phase) * grid.n_k + (i % grid.n_k))].vectors.col(band);
  };
  double flux = 0.0;
  for (int j = 0; j < grid.n_phase; ++j) {
    for (int i = 0; i < grid.n_k; ++i) {
      const auto u1 = at(i, j);
      const auto u2 = at(i + 1, j);
      const auto u3 = at(i + 1, j + 1);
      const auto u4 = at(i, j + 1);
      const Complex loop = u1.dot(u2) * u2.dot(u3) * u3.dot(u4) * u4.dot(u1);
      flux += std::arg(loop);
    }
  }
  return flux / (2.0 * kPi);
}

std::vector<BandFrame> frames_on_grid(const AahSchedule& s, const ChernGrid& grid, int band) {
  std::vector<BandFrame> frames;
  frames.reserve(static_cast<std::size_t>(grid.n_k * grid.n_phase));
  for (int j = 0; j < grid.n_phase; ++j) {
    const double phi = grid.phase_origin + 2.0 * kPi * j / grid.n_phase;
    for (int i = 0; i < grid.n_k; ++i) {
      const double k = grid.k_origin + 2.0 * kPi * i / grid.n_k;
      frames.push_back(bloch_frame(s, phi, k));
      const auto& e = frames.back().energies;
      const double below = band > 0 ? e(band) - e(band - 1) : std::numeric_limits<double>::infinity();
      const double above = band < 2 ? e(band + 1) - e(band) : std::numeric_limits<double>::infinity();
      if (std::min(below, above) < 1e-8) {
        std::ostringstream os;
        os << "band " << band << " touches a neighbour at k = " << k << ", phi = " << phi;
        throw NumericalError(os.str());
      }
    }
  }
  return frames;
}

int quantize(double flux) {
  const double rounded = std::round(flux);
  if (std::abs(flux - rounded) > 1e-6) {
    std::ostringstream os;
    os << "Chern flux " << flux << " is not an integer";
    throw NumericalError(os.str());
  }
  return static_cast<int>(rounded);
}

}  // namespace

int pump_chern_number(const AahSchedule& schedule, int band, const ChernGrid& grid) {
  check_grid(grid);
  if (band < 0 || band > 2) throw ParameterError("band index must be 0, 1 or 2");
  return quantize(chern_flux(frames_on_grid(schedule, grid, band), grid, band));
}

std::array<int, 3> pump_chern_numbers(const AahSchedule& schedule, const ChernGrid& grid) {
  return {pump_chern_number(schedule, 0, grid), pump_chern_number(schedule, 1, grid),
          pump_chern_number(schedule, 2, grid)};
}

std::optional<int> band_at_energy(const AahSchedule& schedule, double phi, double energy, int n_k) {
  if (n_k < 2) throw ParameterError("band_at_energy needs at least two k points");
  std::array<double, 3> lo;
  std::array<double, 3> hi;
  lo.fill(std::numeric_limits<double>::infinity());
  hi.fill(-std::numeric_limits<double>::infinity());
  for (int i = 0; i < n_k; ++i) {
    const auto e = aah_bloch_bands(schedule.lambda0(), schedule.eta0(), phi, 2.0 * kPi * i / n_k);
    for (int b = 0; b < 3; ++b) {
      lo[static_cast<std::size_t>(b)] = std::min(lo[static_cast<std::size_t>(b)], e(b));
      hi[static_cast<std::size_t>(b)] = std::max(hi[static_cast<std::size_t>(b)], e(b));
    }
  }
  // Edge states of a finite chain can sit slightly outside the bulk window.
  std::optional<int> best;
  double best_distance = std::numeric_limits<double>::infinity();
  for (int b = 0; b < 3; ++b) {
    const double d = std::max({lo[static_cast<std::size_t>(b)] - energy, energy - hi[static_cast<std::size_t>(b)], 0.0});
    if (d < best_distance) {
      best_distance = d;
      best = b;
    }
  }
  const double width = std::abs(schedule.lambda0()) + 1e-12;
  if (best_distance > width) return std::nullopt;
  return best;
}

double com_displacement(const TrajectoryRecord& record, double t_start, double t_end, double min_domain_population) {
  if (!(t_end >= t_start)) throw InvalidWindowError("window end precedes its start");
  auto find_row = [&](double t) -> std::size_t {
    for (std::size_t i = 0; i < record.rows.size(); ++i) {
      if (std::abs(record.rows[i].t - t) <= 1e-9 * std::max(1.0, std::abs(t))) return i;
    }
    std::ostringstream os;
    os << "time " << t << " is not on the recorded grid";
    throw InvalidWindowError(os.str());
  };
  const std::size_t a = find_row(t_start);
  const std::size_t b = find_row(t_end);
  for (std::size_t i = a; i <= b; ++i) {
    const auto& row = record.rows[i];
    double sector = 0.0;
    for (double p : row.domain_populations) sector += p;
    if (sector < min_domain_population || !row.center_of_mass) {
      std::ostringstream os;
      os << "domain population " << sector << " at t = " << row.t << " is below " << min_domain_population;
      throw InvalidWindowError(os.str());
    }
  }
  return *record.rows[b].center_of_mass - *record.rows[a].center_of_mass;
}

}  // namespace qcp
