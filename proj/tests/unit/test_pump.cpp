#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qcp/diagnostics.hpp"
#include "qcp/error.hpp"
#include "qcp/pump.hpp"

using std::numbers::pi;

namespace {

qcp::AahSchedule schedule(double omega = 0.02, double duration = 2 * pi / 0.02, double phase0 = 0.0) {
  return qcp::AahSchedule(1.0, -10.0, qcp::PumpProgram::constant(omega, duration, phase0));
}

// Counts warnings for the lifetime of the object.
struct WarningCounter {
  int count = 0;
  qcp::ScopedWarningCapture capture{[this](std::string_view) { ++count; }};
};

}  // namespace

TEST(PumpProgram, PhaseIsPiecewiseLinearAndFrozenAfterTheEnd) {
  qcp::PumpProgram p{{{10.0, 0.1}, {5.0, 0.0}, {10.0, -0.2}}, 0.5};
  EXPECT_DOUBLE_EQ(p.duration(), 25.0);
  EXPECT_DOUBLE_EQ(p.phase(0.0), 0.5);
  EXPECT_DOUBLE_EQ(p.phase(10.0), 1.5);
  EXPECT_DOUBLE_EQ(p.phase(12.0), 1.5);
  EXPECT_DOUBLE_EQ(p.phase(20.0), 0.5);
  EXPECT_DOUBLE_EQ(p.phase(25.0), -0.5);
  EXPECT_DOUBLE_EQ(p.phase(100.0), -0.5);
  EXPECT_DOUBLE_EQ(p.omega_at(12.0), 0.0);
  EXPECT_DOUBLE_EQ(p.omega_at(100.0), 0.0);
  EXPECT_DOUBLE_EQ(p.max_omega(), 0.2);
}

TEST(PumpProgram, Validation) {
  EXPECT_THROW((qcp::PumpProgram{{}, 0.0}).validate(), qcp::ParameterError);
  EXPECT_THROW((qcp::PumpProgram{{{-1.0, 0.1}}, 0.0}).validate(), qcp::ParameterError);
  EXPECT_THROW((qcp::PumpProgram{{{1.0, std::nan("")}}, 0.0}).validate(), qcp::ParameterError);
}

TEST(PumpProgram, ShortHoldsAfterDrivenSegmentsWarn) {
  WarningCounter w;
  qcp::PumpProgram p{{{10.0, 0.1}, {2.0, 0.0}, {10.0, 0.1}, {6.0, 0.0}}, 0.0};
  const auto issues = p.check_min_hold(5.0);
  EXPECT_EQ(issues.size(), 1u);
  EXPECT_EQ(w.count, 1);
  qcp::PumpProgram lead{{{2.0, 0.0}, {10.0, 0.1}}, 0.0};
  EXPECT_TRUE(lead.check_min_hold(5.0).empty());
}

TEST(AahSchedule, ValuesAtTheOrigin) {
  const auto s = schedule();
  EXPECT_NEAR(s.hop(2, 0.0), 0.0, 1e-15);
  EXPECT_NEAR(s.onsite(1, 0.0), 5.0, 1e-12);  // -eta0 / 2
  EXPECT_NEAR(s.hop(3, 0.0), std::sin(4 * pi / 3), 1e-12);
  EXPECT_NEAR(s.onsite(2, 0.0), -10.0, 1e-12);
}

TEST(AahSchedule, PeriodThreeIsExact) {
  const auto s = schedule();
  for (double t : {0.0, 13.7, 101.3, 250.0}) {
    for (int m = 1; m <= 27; ++m) {
      EXPECT_EQ(s.hop(m, t), s.hop(m + 3, t));
      EXPECT_EQ(s.onsite(m, t), s.onsite(m + 3, t));
    }
  }
}

TEST(AahSchedule, DomainParametersFollowTheSchedule) {
  const auto s = schedule();
  const auto d = s.domain_parameters(7, 40.0);
  ASSERT_EQ(d.hop.size(), 6u);
  for (int m = 2; m <= 7; ++m) EXPECT_EQ(d.hop[static_cast<std::size_t>(m - 2)], s.hop(m, 40.0));
  for (int m = 1; m <= 7; ++m) EXPECT_EQ(d.onsite[static_cast<std::size_t>(m - 1)], s.onsite(m, 40.0));
}

TEST(AahSchedule, WeakModulationWarns) {
  WarningCounter w;
  qcp::aah_schedule(1.0, -2.0, qcp::PumpProgram::constant(0.02, 10.0));
  EXPECT_EQ(w.count, 1);
  qcp::aah_schedule(1.0, -10.0, qcp::PumpProgram::constant(0.02, 10.0));
  EXPECT_EQ(w.count, 1);
}

TEST(RydbergPump, DetuningsAreOnsiteDifferences) {
  const auto s = schedule(0.037, 400.0, 0.3);
  const auto det = qcp::rydberg_pump_detunings(s);
  for (int k = 0; k < 1000; ++k) {
    const double t = 0.4 * k;
    EXPECT_EQ(det.delta(1, t), 0.0);
    for (int j = 2; j <= 30; ++j) {
      ASSERT_NEAR(det.delta(j, t), s.onsite(j, t) - s.onsite(j - 1, t), 1e-12) << "j = " << j << ", t = " << t;
    }
  }
  EXPECT_NEAR(det.delta(2, 0.0 + 0.0), -std::sqrt(3.0) * -10.0 * std::sin(0.3 + 8 * pi / 3 + 2 * pi / 3), 1e-12);
}

TEST(RydbergPump, DetuningScale) {
  const auto det = qcp::rydberg_pump_detunings(schedule());
  EXPECT_NEAR(det.delta_max, 17.320508075688775, 1e-12);
  EXPECT_NEAR(det.min_offset, 173.20508075688775, 1e-10);
  EXPECT_NEAR(qcp::rydberg_pump_detunings(schedule()).delta(2, 0.0), -15.0, 1e-12);
}

TEST(RydbergPump, SmallOffsetWarns) {
  WarningCounter w;
  qcp::rydberg_pump_parameters(schedule(), 6, -500.0);
  EXPECT_EQ(w.count, 0);
  qcp::rydberg_pump_parameters(schedule(), 6, -22.0);
  EXPECT_EQ(w.count, 1);
}

TEST(RydbergPump, ParametersRealizeFacilitation) {
  const auto p = qcp::rydberg_pump_parameters(schedule(), 6, -500.0);
  EXPECT_EQ(p.v_nn, 500.0);
  EXPECT_TRUE(p.facilitation_mode);
  EXPECT_NO_THROW(p.validate());
  const auto lam = p.lambda_at(31.0);
  const auto det = p.detuning_at(31.0);
  EXPECT_EQ(lam[0], 0.0);
  EXPECT_EQ(det[0], 0.0);
  const auto s = schedule();
  for (int j = 2; j <= 6; ++j) {
    EXPECT_NEAR(lam[static_cast<std::size_t>(j - 1)], s.hop(j, 31.0), 1e-15);
    EXPECT_NEAR(det[static_cast<std::size_t>(j - 1)], -500.0 + s.onsite(j, 31.0) - s.onsite(j - 1, 31.0), 1e-12);
  }
}

TEST(RydbergPump, IncrementalAssemblyMatchesDirectBuild) {
  const auto s = schedule();
  const int n = 6;
  const auto gen = qcp::rydberg_pump_generator(s, n, -500.0);
  const auto params = qcp::rydberg_pump_parameters(s, n, -500.0);
  for (double t : {0.0, 1.3, 57.0, 200.5, 314.0}) {
    const auto a = gen.at(t).to_dense();
    const auto b = qcp::build_rydberg_hamiltonian(params, t).to_dense();
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12) << "t = " << t;
    const auto lam = params.lambda_at(t);
    const auto det = params.detuning_at(t);
    const auto dense = oracle::rydberg(n, lam, det, params.v_nn);
    EXPECT_LT((a - dense).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(RydbergPump, StepNormBoundsTheDrivenPart) {
  const auto s = schedule();
  const int n = 5;
  const auto gen = qcp::rydberg_pump_generator(s, n, -500.0);
  const auto det = qcp::rydberg_pump_detunings(s);
  for (double t : {0.0, 20.0, 77.0, 150.0}) {
    std::vector<double> lam(n, 0.0);
    std::vector<double> delta(n, 0.0);
    for (int j = 2; j <= n; ++j) {
      lam[static_cast<std::size_t>(j - 1)] = s.hop(j, t);
      delta[static_cast<std::size_t>(j - 1)] = det.delta(j, t);
    }
    const auto driven = oracle::rydberg(n, lam, delta, 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(driven);
    const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
    EXPECT_GE(gen.step_norm(t), norm - 1e-12);
    EXPECT_LE(gen.step_norm(t), norm + 1e-9);  // the bound is the exact norm
  }
}

TEST(DomainPump, GeneratorMatchesSchedule) {
  const auto s = schedule();
  const auto gen = qcp::domain_pump_generator(s, 9);
  EXPECT_FALSE(gen.is_static());
  EXPECT_DOUBLE_EQ(gen.omega(), 0.02);
  const auto d = s.domain_parameters(9, 12.5);
  EXPECT_LT((gen.at(12.5).to_dense() - oracle::chain(d.hop, d.onsite)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Bloch, MatchesPeriodicChainSpectrum) {
  // A ring of 3L sites has eigenvalues equal to the Bloch bands at k = 2 pi q / L.
  const int cells = 8;
  const int n = 3 * cells;
  const double phi = 0.37;
  const auto s = schedule();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (int m = 1; m <= n; ++m) h(m - 1, m - 1) = s.onsite_at_phase(m, phi);
  for (int m = 2; m <= n + 1; ++m) {
    const int a = (m - 2) % n;
    const int b = (m - 1) % n;
    h(a, b) = h(b, a) = s.hop_at_phase(m, phi);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  std::vector<double> bands;
  for (int q = 0; q < cells; ++q) {
    const auto e = qcp::aah_bloch_bands(1.0, -10.0, phi, 2 * pi * q / cells);
    bands.insert(bands.end(), e.data(), e.data() + 3);
  }
  std::sort(bands.begin(), bands.end());
  for (int i = 0; i < n; ++i) EXPECT_NEAR(es.eigenvalues()(i), bands[static_cast<std::size_t>(i)], 1e-10);
}

TEST(Adiabaticity, ReferenceRateIsAdiabatic) {
  const auto r = qcp::adiabaticity_check(schedule(0.02));
  EXPECT_TRUE(r.pass);
  EXPECT_FALSE(r.gap_closed);
  EXPECT_NEAR(r.min_gap, 1.72, 0.02);
  EXPECT_NEAR(r.ratio, 0.02 / r.min_gap, 1e-15);
}

TEST(Adiabaticity, FastDriveFails) {
  const auto r = qcp::adiabaticity_check(schedule(1.0, 10.0));
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.ratio, 0.1);
}

TEST(Adiabaticity, StaticScheduleIsTriviallyAdiabatic) {
  const auto r = qcp::adiabaticity_check(schedule(0.0, 10.0));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.ratio, 0.0);
}

TEST(DomainPump, DispersionIsSuppressed) {
  // Full period at the reference rate: the domain stays on at most two
  // sites and sits on one site at every plateau phase pi/3 + k 2pi/3.
  const double period = 2 * pi / 0.02;
  const auto s = schedule(0.02, 7 * period / 6);
  const auto grid = qcp::uniform_grid(7 * period / 6, 421);
  const auto rec = qcp::evolve(qcp::domain_pump_generator(s, 12), qcp::QuantumState::seed(qcp::BasisKind::domain, 12), grid);
  double spread = 0.0;
  for (std::size_t k = 0; k < rec.rows.size(); ++k) {
    const auto& p = rec.rows[k].domain_populations;
    const double top = *std::max_element(p.begin(), p.end());
    spread = std::max(spread, 1.0 - top);
    if (k >= 60 && (k - 60) % 120 == 0) {
      EXPECT_GT(top, 0.95) << "plateau at t = " << rec.rows[k].t;
    }
  }
  EXPECT_LT(spread, 0.5);
}
