#include "qcp/classical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcp/diagnostics.hpp"
#include "qcp/error.hpp"

namespace qcp {

void ClassicalState::validate() const {
  if (p.empty()) throw ParameterError("classical state has no sites");
  for (double x : p) {
    if (!(x >= 0.0 && x <= 1.0)) throw ParameterError("excitation probabilities must lie in [0, 1]");
  }
}

std::vector<double> ClassicalTrajectory::total() const {
  std::vector<double> out;
  out.reserve(p.size());
  for (const auto& row : p) {
    double s = 0.0;
    for (double x : row) s += x;
    out.push_back(s);
  }
  return out;
}

double facilitation_rate(std::span<const double> p, int site, double gamma_f0) {
  const auto n = static_cast<int>(p.size());
  const double left = site > 1 ? p[static_cast<std::size_t>(site - 2)] : 0.0;
  const double right = site < n ? p[static_cast<std::size_t>(site)] : 0.0;
  return gamma_f0 * (left * (1.0 - right) + (1.0 - left) * right);
}

namespace {

void rhs(std::span<const double> p, double gamma_f0, double gamma, std::span<double> out) {
  const auto n = static_cast<int>(p.size());
  for (int j = 1; j <= n; ++j) {
    const double pj = p[static_cast<std::size_t>(j - 1)];
    const double gf = facilitation_rate(p, j, gamma_f0);
    out[static_cast<std::size_t>(j - 1)] = -(gf + gamma) * pj + gf * (1.0 - pj);
  }
}

}  // namespace

ClassicalTrajectory classical_evolve(const ClassicalState& p0, double gamma_f0, double gamma,
                                     std::span<const double> t_grid) {
  p0.validate();
  if (!(gamma_f0 >= 0.0) || !(gamma >= 0.0) || !std::isfinite(gamma_f0) || !std::isfinite(gamma)) {
    throw ParameterError("rates must be finite and non-negative");
  }
  if (t_grid.empty() || t_grid.front() != 0.0) throw ParameterError("time grid must start at 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1]) || !std::isfinite(t_grid[i])) {
      throw ParameterError("time grid must be finite and strictly increasing");
    }
  }

  const std::size_t n = p0.p.size();
  const double rate = std::max(gamma_f0, gamma);
  const double h_max = rate > 0.0 ? 0.01 / rate : 0.0;

  ClassicalTrajectory traj;
  traj.step = h_max;
  traj.times.assign(t_grid.begin(), t_grid.end());
  traj.p.reserve(t_grid.size());

  std::vector<double> p = p0.p;
  std::vector<double> k1(n), k2(n), k3(n), k4(n), tmp(n);
  traj.p.push_back(p);

  for (std::size_t k = 1; k < t_grid.size(); ++k) {
    const double span = t_grid[k] - t_grid[k - 1];
    if (rate == 0.0) {
      traj.p.push_back(p);
      continue;
    }
    const long steps = std::max<long>(1, static_cast<long>(std::ceil(span / h_max - 1e-12)));
    const double h = span / static_cast<double>(steps);
    for (long s = 0; s < steps; ++s) {
      rhs(p, gamma_f0, gamma, k1);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * h * k1[i];
      rhs(tmp, gamma_f0, gamma, k2);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + 0.5 * h * k2[i];
      rhs(tmp, gamma_f0, gamma, k3);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = p[i] + h * k3[i];
      rhs(tmp, gamma_f0, gamma, k4);
      for (std::size_t i = 0; i < n; ++i) {
        p[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!std::isfinite(p[i]) || p[i] < -1e-6 || p[i] > 1.0 + 1e-6) {
          std::ostringstream os;
          os << "rate-equation integrator unstable: p_" << i + 1 << " = " << p[i];
          throw NumericalError(os.str());
        }
        if (p[i] < -1e-9 || p[i] > 1.0 + 1e-9) {
          ++traj.clamp_events;
          std::ostringstream os;
          os << "clamping p_" << i + 1 << " = " << p[i] << " into [0, 1]";
          warn(os.str());
        }
        p[i] = std::clamp(p[i], 0.0, 1.0);
      }
    }
    traj.steps += steps;
    traj.p.push_back(p);
  }
  return traj;
}

}  // namespace qcp
