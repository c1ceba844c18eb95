#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qcp/domain.hpp"
#include "qcp/error.hpp"
#include "qcp/evolution.hpp"
#include "qcp/topology.hpp"

using qcp::BasisKind;
using qcp::Complex;

namespace {

qcp::HamiltonianGenerator domain_generator(const std::vector<double>& hop, const std::vector<double>& onsite) {
  return qcp::HamiltonianGenerator::constant(
      qcp::build_domain_hamiltonian({static_cast<int>(onsite.size()), hop, onsite}));
}

qcp::EvolveOptions with_tol(double tol) {
  qcp::EvolveOptions o;
  o.tol = tol;
  return o;
}

}  // namespace

TEST(Evolution, NullGeneratorLeavesStateUntouched) {
  const auto gen = domain_generator({0, 0, 0}, {0, 0, 0, 0});
  const auto psi0 = qcp::QuantumState::seed(BasisKind::domain, 4);
  const auto grid = qcp::uniform_grid(10.0, 11);
  const auto rec = qcp::evolve(gen, psi0, grid);
  for (const auto& row : rec.rows) {
    EXPECT_EQ(row.fidelity_left, 1.0);
    EXPECT_EQ(row.domain_populations[1], 0.0);
  }
}

TEST(Evolution, TwoSiteRabi) {
  const double lambda = 0.7;
  const auto gen = domain_generator({lambda}, {0, 0});
  const auto psi0 = qcp::QuantumState::seed(BasisKind::domain, 2);
  const auto grid = qcp::uniform_grid(std::numbers::pi / (2 * lambda), 9);
  const auto rec = qcp::evolve(gen, psi0, grid, with_tol(1e-10));
  for (const auto& row : rec.rows) {
    EXPECT_NEAR(row.domain_populations[1], std::pow(std::sin(lambda * row.t), 2), 1e-9);
  }
  EXPECT_NEAR(rec.rows.back().fidelity_right, 1.0, 1e-9);
}

TEST(Evolution, OutputTimesAreExact) {
  const auto gen = domain_generator({1.0, 2.0}, {0, 0.5, 0});
  const std::vector<double> grid{0.0, 0.1, 0.35, 1.0 / 3.0 + 1.0, 7.25};
  const auto rec = qcp::evolve(gen, qcp::QuantumState::seed(BasisKind::domain, 3), grid);
  EXPECT_EQ(rec.times(), grid);
}

TEST(Evolution, StaticMatchesDenseExponential) {
  const std::vector<double> hop{1.0, 10.0, 1.0, 10.0, 1.0};
  const std::vector<double> on{0.0, 0.3, -0.2, 0.1, 0.0, 0.4};
  const auto gen = domain_generator(hop, on);
  const auto grid = qcp::uniform_grid(20.0, 41);
  const auto rec = qcp::evolve(gen, qcp::QuantumState::seed(BasisKind::domain, 6), grid);
  const auto h = oracle::chain(hop, on);
  for (const auto& row : rec.rows) {
    const Eigen::VectorXcd ref = oracle::expm(h, row.t).col(0);
    for (int m = 0; m < 6; ++m) EXPECT_NEAR(row.domain_populations[m], std::norm(ref(m)), 1e-8);
  }
  EXPECT_LT(rec.max_norm_drift, 1e-10);
  EXPECT_LT(rec.max_energy_drift, 1e-10);
}

TEST(Evolution, SpinAndDomainPicturesAgree) {
  const int n = 5;
  qcp::QxpParameters q{n, {0, 1, 3, 1, 3}, {0, 0.2, -0.1, 0.3, 0.0}, true};
  const auto grid = qcp::uniform_grid(10.0, 21);
  const auto spin = qcp::evolve(qcp::HamiltonianGenerator::constant(qcp::build_qxp_hamiltonian(q)),
                                qcp::QuantumState::seed(BasisKind::spin, n), grid);
  const auto dom = qcp::evolve(
      qcp::HamiltonianGenerator::constant(qcp::build_domain_hamiltonian(qcp::DomainParameters::from_qxp(q))),
      qcp::QuantumState::seed(BasisKind::domain, n), grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    for (int m = 0; m < n; ++m) {
      EXPECT_NEAR(spin.rows[k].domain_populations[m], dom.rows[k].domain_populations[m], 1e-8);
      EXPECT_NEAR(spin.rows[k].site_populations[m], dom.rows[k].site_populations[m], 1e-8);
    }
    EXPECT_LT(spin.rows[k].leakage, 1e-10);
  }
}

TEST(Evolution, EdgeTransferPeriodNearClosedForm) {
  const int n = 4;
  const auto hop = qcp::ssh_couplings(n, 1.0, 10.0);
  const auto gen = domain_generator(hop, std::vector<double>(n, 0.0));
  const double t_hyb = qcp::hybridization(n, 1.0, 10.0).t_hyb;
  const auto grid = qcp::uniform_grid(1.5 * t_hyb, 3001);
  const auto rec = qcp::evolve(gen, qcp::QuantumState::seed(BasisKind::domain, n), grid);
  const auto fr = rec.fidelity_right();
  const auto peak = std::max_element(fr.begin(), fr.end()) - fr.begin();
  const double period = 2.0 * grid[static_cast<std::size_t>(peak)];
  EXPECT_GT(fr[static_cast<std::size_t>(peak)], 0.95);
  EXPECT_NEAR(period, t_hyb, 0.1 * t_hyb);
}

TEST(Evolution, TimeDependentMatchesFineDenseMidpoint) {
  const std::vector<double> hop{1.0, 0.8, 1.2};
  const double omega = 0.9;
  auto onsite = [&](double t) {
    return std::vector<double>{0.0, std::cos(omega * t), -0.5 * std::sin(omega * t), 0.3};
  };
  auto gen = qcp::HamiltonianGenerator::time_dependent(
      [&](double t) { return qcp::build_domain_hamiltonian({4, hop, onsite(t)}); }, omega);
  const auto grid = qcp::uniform_grid(6.0, 7);
  const auto rec = qcp::evolve(gen, qcp::QuantumState::seed(BasisKind::domain, 4), grid, with_tol(1e-9));

  // Reference: dense exponential midpoint rule with a much finer step.
  Eigen::VectorXcd psi = oracle::basis_vector(4, 0);
  const int fine = 24000;
  const double dt = 6.0 / fine;
  std::size_t next = 1;
  for (int i = 0; i < fine; ++i) {
    psi = oracle::expm(oracle::chain(hop, onsite((i + 0.5) * dt)), dt) * psi;
    if ((i + 1) % (fine / 6) == 0) {
      for (int m = 0; m < 4; ++m) EXPECT_NEAR(rec.rows[next].domain_populations[m], std::norm(psi(m)), 1e-6);
      ++next;
    }
  }
  EXPECT_EQ(next, grid.size());
  EXPECT_FALSE(rec.rows.back().energy.has_value());
}

TEST(Measure, Examples) {
  const int n = 4;
  const auto left = qcp::measure(qcp::QuantumState::seed(BasisKind::spin, n));
  EXPECT_EQ(left.fidelity_left, 1.0);
  EXPECT_EQ(left.fidelity_right, 0.0);
  EXPECT_EQ(*left.center_of_mass, 1.0);
  EXPECT_EQ(left.site_populations, (std::vector<double>{1, 0, 0, 0}));

  std::vector<Complex> amps(16, 0.0);
  amps[0b0001] = amps[0b1111] = 1.0 / std::sqrt(2.0);
  const auto cat = qcp::measure(qcp::QuantumState(BasisKind::spin, n, amps));
  EXPECT_NEAR(cat.fidelity_left, 0.5, 1e-15);
  EXPECT_NEAR(cat.fidelity_right, 0.5, 1e-15);
  EXPECT_NEAR(*cat.center_of_mass, 2.5, 1e-15);
  EXPECT_NEAR(cat.site_populations[1], 0.5, 1e-15);

  const auto off = qcp::measure(qcp::QuantumState::basis_state(qcp::SpinConfiguration(0b0010, n)));
  EXPECT_FALSE(off.center_of_mass.has_value());
  EXPECT_NEAR(off.leakage, 1.0, 1e-15);

  const auto dom = qcp::measure(qcp::QuantumState::domain_state(BasisKind::domain, n, 3));
  EXPECT_EQ(dom.site_populations, (std::vector<double>{1, 1, 1, 0}));
  EXPECT_EQ(*dom.center_of_mass, 3.0);
}

TEST(Evolution, Validation) {
  const auto gen = domain_generator({1.0}, {0, 0});
  const auto psi0 = qcp::QuantumState::seed(BasisKind::domain, 2);
  const std::vector<double> late{0.5, 1.0};
  const std::vector<double> repeat{0.0, 1.0, 1.0};
  const std::vector<double> ok{0.0, 1.0};
  EXPECT_THROW(qcp::evolve(gen, psi0, late), qcp::ParameterError);
  EXPECT_THROW(qcp::evolve(gen, psi0, repeat), qcp::ParameterError);
  EXPECT_THROW(qcp::evolve(gen, psi0, ok, with_tol(1e-3)), qcp::ParameterError);
  EXPECT_THROW(qcp::evolve(gen, psi0, ok, with_tol(1e-13)), qcp::ParameterError);
  EXPECT_THROW(qcp::evolve(gen, psi0, ok, [] {
    qcp::EvolveOptions o;
    o.max_dim = 1;
    return o;
  }()), qcp::CapacityError);
  EXPECT_THROW(qcp::evolve(gen, qcp::QuantumState::seed(BasisKind::domain, 3), ok), qcp::ParameterError);
  EXPECT_THROW(qcp::uniform_grid(0.0, 5), qcp::ParameterError);
  EXPECT_THROW(qcp::uniform_grid(1.0, 1), qcp::ParameterError);
}

TEST(Evolution, ObserverSeesEveryOutputTime) {
  const auto gen = domain_generator({1.0}, {0, 0});
  std::vector<double> seen;
  qcp::EvolveOptions opt;
  opt.observer = [&](double t, std::span<const Complex> v) {
    seen.push_back(t);
    EXPECT_EQ(v.size(), 2u);
  };
  const auto grid = qcp::uniform_grid(1.0, 5);
  qcp::evolve(gen, qcp::QuantumState::seed(BasisKind::domain, 2), grid, opt);
  EXPECT_EQ(seen, grid);
}
