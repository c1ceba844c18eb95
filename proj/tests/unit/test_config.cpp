#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qcp/config.hpp"
#include "qcp/error.hpp"
#include "qcp/presets.hpp"
#include "qcp/topology.hpp"

namespace {

constexpr const char* kSsh = R"(
[experiment]
name = edge
model = domain
n_sites = 6
t_max = 40
n_samples = 81
outputs = fidelity_R, com

[couplings]
kind = ssh
lambda_v = 1
lambda_w = 10
)";

std::string field_of(const std::string& text) {
  try {
    qcp::parse_config(text);
  } catch (const qcp::ConfigError& e) {
    return e.field();
  }
  return "<no error>";
}

std::string with(const std::string& extra) { return std::string(kSsh) + extra; }

}  // namespace

TEST(Config, ParsesSections) {
  const auto c = qcp::parse_config(kSsh);
  EXPECT_EQ(c.name, "edge");
  EXPECT_EQ(c.model, qcp::ModelKind::domain);
  EXPECT_EQ(c.n_sites, 6);
  EXPECT_EQ(c.t_max, 40.0);
  EXPECT_EQ(c.n_samples, 81);
  EXPECT_EQ(c.outputs, (std::vector<std::string>{"fidelity_R", "com"}));
  EXPECT_EQ(c.couplings.kind, qcp::CouplingKind::ssh);
  EXPECT_EQ(c.couplings.lambda_w, 10.0);
  EXPECT_EQ(c.initial.kind, qcp::InitialKind::seed);
  EXPECT_EQ(c.tol, 1e-8);
}

TEST(Config, RoundTripIsLossless) {
  auto c = qcp::parse_config(with("[initial]\nkind = custom\namplitudes = 0.6, 0:0.8, 0, 0, 0, 0\n"));
  const auto text = qcp::to_config_text(c);
  const auto back = qcp::parse_config(text);
  EXPECT_EQ(qcp::to_config_text(back), text);
  ASSERT_EQ(back.initial.amplitudes.size(), 6u);
  EXPECT_EQ(back.initial.amplitudes[1], qcp::Complex(0.0, 0.8));
  for (const auto& name : qcp::preset_names()) {
    const auto p = qcp::preset(name);
    EXPECT_EQ(qcp::to_config_text(qcp::parse_config(qcp::to_config_text(p))), qcp::to_config_text(p)) << name;
  }
}

TEST(Config, ErrorsNameTheField) {
  EXPECT_EQ(field_of(R"([experiment]
model = rydberg
n_sites = 4
t_max = 1
[couplings]
kind = uniform
)"),
            "detuning.delta_offset");
  EXPECT_EQ(field_of(with("[detuning]\nbogus = 1\n")), "detuning.bogus");
  EXPECT_EQ(field_of(with("[nonsense]\nx = 1\n")), "nonsense");
  EXPECT_EQ(field_of(std::string(kSsh).replace(std::string(kSsh).find("n_sites = 6"), 11, "n_sites = x")),
            "experiment.n_sites");
  EXPECT_EQ(field_of(with("[initial]\nkind = fock\nm = 9\n")), "initial.m");
  EXPECT_EQ(field_of(with("[initial]\nkind = custom\namplitudes = 1, 1, 0, 0, 0, 0\n")), "initial.amplitudes");
  EXPECT_EQ(field_of(with("[detuning]\ndelta = 0.5, 0, 0, 0, 0, 0\n")), "detuning.delta");
  EXPECT_EQ(field_of(with("[sweep]\nparameter = couplings.nope\nvalues = 1, 2\n")), "sweep.parameter");
  EXPECT_EQ(field_of(R"([experiment]
model = rydberg
n_sites = 4
t_max = 1
[couplings]
kind = uniform
[detuning]
delta_offset = -50
v_nn = 10
)"),
            "detuning.v_nn");
  EXPECT_EQ(field_of(R"([experiment]
model = qxp
n_sites = 4
t_max = 1
[couplings]
kind = aah
[pump]
segments = 10:0.02
)"),
            "couplings.kind");
}

TEST(Config, OutputsAreChecked) {
  EXPECT_EQ(field_of(with("").replace(with("").find("fidelity_R, com"), 15, "fidelity_X")), "experiment.outputs");
}

TEST(Config, SweepExpansion) {
  const auto c = qcp::parse_config(with("[sweep]\nparameter = couplings.lambda_w\nvalues = 2, 5, 10\n"));
  const auto points = qcp::expand_sweep(c);
  ASSERT_EQ(points.size(), 3u);
  EXPECT_EQ(points[0].couplings.lambda_w, 2.0);
  EXPECT_EQ(points[2].couplings.lambda_w, 10.0);
  for (const auto& p : points) {
    EXPECT_FALSE(p.sweep.has_value());
    EXPECT_EQ(p.couplings.lambda_v, 1.0);
  }
  EXPECT_EQ(qcp::expand_sweep(qcp::parse_config(kSsh)).size(), 1u);
}

TEST(Config, PumpSegments) {
  const auto c = qcp::parse_config(R"([experiment]
model = domain
n_sites = 9
t_max = 100
[couplings]
kind = aah
[pump]
eta0 = -10
phase0 = 1.0471975511965976
segments = 50:0.02, 10:0, 40:-0.02
)");
  ASSERT_TRUE(c.pump.has_value());
  ASSERT_EQ(c.pump->program.segments.size(), 3u);
  EXPECT_EQ(c.pump->program.segments[2].omega, -0.02);
  EXPECT_DOUBLE_EQ(c.schedule().phase(50.0), 1.0471975511965976 + 1.0);
}

TEST(Presets, Contents) {
  const double period = 2 * std::numbers::pi / 0.02;
  EXPECT_DOUBLE_EQ(qcp::reference_pump_period(), period);

  const auto f4 = qcp::preset("fig4-pump");
  EXPECT_EQ(f4.model, qcp::ModelKind::rydberg);
  EXPECT_EQ(f4.n_sites, 10);
  EXPECT_EQ(*f4.detuning.delta_offset, -500.0);
  EXPECT_EQ(f4.pump->program.max_omega(), 0.02);
  EXPECT_NEAR(f4.pump->program.duration(), 3.5 * period, 1e-9);
  EXPECT_NEAR(f4.t_max, f4.pump->program.duration(), 1e-9);

  const auto f5 = qcp::preset("fig5-sweep");
  ASSERT_TRUE(f5.sweep.has_value());
  EXPECT_EQ(f5.sweep->parameter, "detuning.delta_offset");
  EXPECT_NE(std::find(f5.sweep->values.begin(), f5.sweep->values.end(), -22.0), f5.sweep->values.end());

  const auto f2 = qcp::preset("fig2-topological");
  EXPECT_EQ(f2.couplings.kind, qcp::CouplingKind::ssh);
  EXPECT_EQ(f2.couplings.lambda_v, 1.0);
  EXPECT_EQ(f2.couplings.lambda_w, 10.0);
  EXPECT_NEAR(f2.t_max, 1.5 * qcp::hybridization(8, 1.0, 10.0).t_hyb, 1e-9);

  const auto f1 = qcp::preset("fig1c");
  EXPECT_EQ(f1.model, qcp::ModelKind::classical);
  EXPECT_EQ(f1.classical.gamma, 0.0);

  EXPECT_THROW(qcp::preset("fig9"), qcp::ConfigError);
  for (const auto& name : qcp::preset_names()) EXPECT_NO_THROW(qcp::preset(name).validate()) << name;
}
