#include "qcp/presets.hpp"

#include <numbers>

#include "qcp/error.hpp"
#include "qcp/topology.hpp"

namespace qcp {
namespace {

constexpr double kOmega = 0.02;
constexpr double kEta0 = -10.0;

ExperimentConfig ssh_run(std::string name, ModelKind model, int n, double lv, double lw) {
  ExperimentConfig c;
  c.name = std::move(name);
  c.model = model;
  c.n_sites = n;
  c.couplings.kind = CouplingKind::ssh;
  c.couplings.lambda_v = lv;
  c.couplings.lambda_w = lw;
  return c;
}

PumpSpec reference_pump(std::vector<PumpSegment> segments) {
  PumpSpec p;
  p.lambda0 = 1.0;
  p.eta0 = kEta0;
  p.program.segments = std::move(segments);
  return p;
}

}  // namespace

double reference_pump_period() { return 2.0 * std::numbers::pi / kOmega; }

std::vector<std::string> preset_names() {
  return {"fig1c", "fig1d", "fig2-trivial", "fig2-topological", "fig3-sweep", "fig4-pump", "fig5-sweep"};
}

ExperimentConfig preset(std::string_view name) {
  const double period = reference_pump_period();
  ExperimentConfig c;
  if (name == "fig1c") {
    c.name = "fig1c";
    c.model = ModelKind::classical;
    c.n_sites = 8;
    c.classical = {1.0, 0.0};
    c.t_max = 200.0;
    c.n_samples = 401;
  } else if (name == "fig1d") {
    c = ssh_run("fig1d", ModelKind::rydberg, 4, 1.0, 10.0);
    c.detuning.delta_offset = -500.0;
    c.t_max = 1.5 * hybridization(4, 1.0, 10.0).t_hyb;
    c.n_samples = 601;
  } else if (name == "fig2-trivial") {
    c = ssh_run("fig2-trivial", ModelKind::domain, 8, 1.0, 0.1);
    c.t_max = 500.0;
    c.n_samples = 5001;
  } else if (name == "fig2-topological") {
    c = ssh_run("fig2-topological", ModelKind::domain, 8, 1.0, 10.0);
    c.t_max = 1.5 * hybridization(8, 1.0, 10.0).t_hyb;
    c.n_samples = 4001;
  } else if (name == "fig3-sweep") {
    c = ssh_run("fig3-sweep", ModelKind::domain, 4, 1.0, 20.0);
    // One and a half slow periods at the largest ratio, the slowest point.
    c.t_max = 1.5 * hybridization(4, 1.0, 20.0).t_hyb;
    c.n_samples = 4001;
    c.sweep = SweepSpec{"couplings.lambda_w", {2.0, 5.0, 10.0, 20.0}};
  } else if (name == "fig4-pump") {
    c.name = "fig4-pump";
    c.model = ModelKind::rydberg;
    c.n_sites = 10;
    c.couplings.kind = CouplingKind::aah;
    c.detuning.delta_offset = -500.0;
    // Lead-in to the first single-site plateau, grow two cycles, hold,
    // shrink one cycle, hold.
    c.pump = reference_pump({{period / 6.0, kOmega},
                             {2.0 * period, kOmega},
                             {period / 6.0, 0.0},
                             {period, -kOmega},
                             {period / 6.0, 0.0}});
    c.t_max = c.pump->program.duration();
    c.n_samples = 421;
  } else if (name == "fig5-sweep") {
    c.name = "fig5-sweep";
    c.model = ModelKind::rydberg;
    c.n_sites = 8;
    c.couplings.kind = CouplingKind::aah;
    c.detuning.delta_offset = -500.0;
    c.pump = reference_pump({{7.0 * period / 6.0, kOmega}});
    c.t_max = 7.0 * period / 6.0;
    c.n_samples = 141;
    c.sweep = SweepSpec{"detuning.delta_offset", {-22.0, -50.0, -100.0, -500.0}};
  } else {
    throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
  }
  c.validate();
  return c;
}

}  // namespace qcp
