#pragma once

#include <array>
#include <optional>
#include <utility>

#include "qcp/evolution.hpp"
#include "qcp/pump.hpp"

namespace qcp {

enum class SshPhase { topological, trivial, gapless };
const char* to_string(SshPhase phase) noexcept;

struct LocalizationLength {
  double xi = 0.0;  // signed; negative in the trivial phase, infinite at the gap closing
  SshPhase phase = SshPhase::gapless;
};

// xi = 1 / (ln|lambda_w| - ln|lambda_v|)
LocalizationLength localization_length(double lambda_v, double lambda_w);

struct EdgeStateReport {
  double xi = 0.0;
  double e_plus = 0.0;
  double e_minus = 0.0;
  double t_hyb = 0.0;  // 2 pi / (E+ - E-)
  double n1 = 1.0;
  SshPhase phase = SshPhase::gapless;
  bool valid = false;  // closed form applies only in the topological phase
};

// E+- = +-|n1 exp(-(N/2 - 1)/xi) lambda_v|. The two edge states of an
// N-site chain are N/2 - 1 unit cells apart, which sets the overlap.
EdgeStateReport hybridization(int n_sites, double lambda_v, double lambda_w, double n1 = 1.0);

// Two eigenvalues of smallest magnitude of the SSH domain matrix, ordered
// (E+, E-), with t_hyb from their difference. No closed-form assumptions.
EdgeStateReport exact_edge_splitting(int n_sites, double lambda_v, double lambda_w);

// |<1|L>|^2 for the left edge combination (|E+> + |E->)/sqrt(2).
double edge_site_population(int n_sites, double lambda_v, double lambda_w);

// Winding of h(k) = lambda_v + lambda_w e^{ik} around the origin from the
// accumulated phase on k_samples points.
int winding_number(double lambda_v, double lambda_w, int k_samples = 256);

struct ChernGrid {
  int n_k = 48;
  int n_phase = 48;
  double k_origin = 0.0;
  double phase_origin = 0.0;
};

// Lattice field-strength Chern number of Bloch band `band` (0 = lowest)
// over the (k, phi) torus. Throws NumericalError with the location when
// the band touches a neighbour on the grid.
int pump_chern_number(const AahSchedule& schedule, int band, const ChernGrid& grid = {});
std::array<int, 3> pump_chern_numbers(const AahSchedule& schedule, const ChernGrid& grid = {});

// Band whose energy window at phase phi contains `energy`; empty if the
// energy falls into a gap.
std::optional<int> band_at_energy(const AahSchedule& schedule, double phi, double energy, int n_k = 64);

// x(t_end) - x(t_start) for two recorded times. Requires the domain
// population to stay >= 0.99 on every row inside the window.
double com_displacement(const TrajectoryRecord& record, double t_start, double t_end,
                        double min_domain_population = 0.99);

}  // namespace qcp
