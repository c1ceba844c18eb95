#pragma once

#include <span>
#include <vector>

namespace qcp {

// Excitation probabilities p_j of the classical contact process.
struct ClassicalState {
  std::vector<double> p;
  void validate() const;
};

struct ClassicalTrajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> p;  // p[k][j-1] at times[k]
  long steps = 0;
  double step = 0.0;
  int clamp_events = 0;

  std::vector<double> total() const;  // sum_j p_j at every sample
};

// Facilitation rate Gamma_f^0 [p_{j-1}(1-p_{j+1}) + (1-p_{j-1}) p_{j+1}],
// virtual neighbours at p = 0.
double facilitation_rate(std::span<const double> p, int site, double gamma_f0);

// dp_j/dt = -(Gamma_f + gamma) p_j + Gamma_f (1 - p_j), fixed-step RK4 with
// step <= 0.01 / max(Gamma_f^0, gamma). Output times match t_grid exactly.
ClassicalTrajectory classical_evolve(const ClassicalState& p0, double gamma_f0, double gamma,
                                     std::span<const double> t_grid);

}  // namespace qcp
