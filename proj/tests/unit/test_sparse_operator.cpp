#include <gtest/gtest.h>

#include <complex>
#include <random>

#include "qcp/error.hpp"
#include "qcp/sparse_operator.hpp"

using qcp::Complex;
using qcp::SparseOperator;

namespace {

SparseOperator random_hermitian(std::size_t dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<qcp::Triplet> t;
  for (std::size_t r = 0; r < dim; ++r) {
    t.push_back({r, r, {u(rng), 0.0}});
    for (std::size_t c = r + 1; c < dim; ++c) {
      if (u(rng) > 0.3) continue;
      const Complex v{u(rng), u(rng)};
      t.push_back({r, c, v});
      t.push_back({c, r, std::conj(v)});
    }
  }
  return SparseOperator::from_triplets(dim, t);
}

}  // namespace

TEST(SparseOperator, TripletsAreSortedAndDuplicatesSummed) {
  auto op = SparseOperator::from_triplets(3, {{2, 0, 1.0}, {0, 1, 2.0}, {0, 1, 3.0}, {1, 1, 0.0}, {0, 0, 4.0}});
  EXPECT_EQ(op.nnz(), 4u);
  EXPECT_EQ(op.at(0, 1), Complex(5.0));
  EXPECT_EQ(op.at(0, 0), Complex(4.0));
  EXPECT_EQ(op.at(1, 1), Complex(0.0));
  EXPECT_EQ(op.at(2, 0), Complex(1.0));
  EXPECT_EQ(op.at(2, 2), Complex(0.0));
  const auto cols = op.cols();
  EXPECT_EQ(cols[0], 0u);
  EXPECT_EQ(cols[1], 1u);
}

TEST(SparseOperator, RejectsOutOfRangeAndNonFinite) {
  EXPECT_THROW(SparseOperator::from_triplets(2, {{2, 0, 1.0}}), qcp::ParameterError);
  EXPECT_THROW(SparseOperator::from_triplets(2, {{0, 0, std::nan("")}}), qcp::ParameterError);
  EXPECT_THROW(SparseOperator::from_csr(2, {0, 2, 2}, {1, 0}, {1.0, 1.0}), qcp::ParameterError);
  EXPECT_THROW(SparseOperator::from_csr(2, {0, 1}, {0}, {1.0}), qcp::ParameterError);
}

TEST(SparseOperator, ApplyMatchesDenseProduct) {
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const auto op = random_hermitian(17, seed);
    const Eigen::MatrixXcd dense = op.to_dense();
    Eigen::VectorXcd x = Eigen::VectorXcd::Random(17);
    const auto y = op.apply(std::span<const Complex>(x.data(), 17));
    const Eigen::VectorXcd ref = dense * x;
    for (int i = 0; i < 17; ++i) EXPECT_LT(std::abs(y[static_cast<std::size_t>(i)] - ref(i)), 1e-13);
  }
}

TEST(SparseOperator, RealFastPathAgreesWithComplexPath) {
  auto real_op = SparseOperator::from_triplets(3, {{0, 1, 2.0}, {1, 0, 2.0}, {2, 2, -1.0}});
  Eigen::VectorXcd x(3);
  x << Complex(1, 2), Complex(-0.5, 0.25), Complex(0, 1);
  const auto y = real_op.apply(std::span<const Complex>(x.data(), 3));
  const Eigen::VectorXcd ref = real_op.to_dense() * x;
  for (int i = 0; i < 3; ++i) EXPECT_LT(std::abs(y[static_cast<std::size_t>(i)] - ref(i)), 1e-15);
}

TEST(SparseOperator, WithValuesKeepsPattern) {
  const auto op = SparseOperator::from_triplets(2, {{0, 1, 1.0}, {1, 0, 1.0}});
  const auto re = op.with_values({Complex(0, 1), Complex(0, -1)});
  EXPECT_EQ(re.at(0, 1), Complex(0, 1));
  EXPECT_EQ(re.at(1, 0), Complex(0, -1));
  EXPECT_THROW(op.with_values({1.0}), qcp::ParameterError);
}

TEST(SparseOperator, HermiticityDefect) {
  const auto h = random_hermitian(12, 7);
  EXPECT_LT(h.hermiticity_defect(), 1e-15);
  EXPECT_NO_THROW(qcp::verify_hermitian(h));
  const auto bad = SparseOperator::from_triplets(2, {{0, 1, 1.0}}, false);
  EXPECT_DOUBLE_EQ(bad.hermiticity_defect(), 1.0);
  EXPECT_THROW(qcp::verify_hermitian(bad), qcp::NumericalError);
}

TEST(SparseOperator, NormsAndExpectation) {
  const auto h = random_hermitian(9, 3);
  const Eigen::MatrixXcd d = h.to_dense();
  EXPECT_NEAR(h.max_abs_entry(), d.cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_NEAR(h.row_sum_norm(), d.cwiseAbs().rowwise().sum().maxCoeff(), 1e-13);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d);
  EXPECT_LE(es.eigenvalues().cwiseAbs().maxCoeff(), h.row_sum_norm() + 1e-12);
  Eigen::VectorXcd x = Eigen::VectorXcd::Random(9).normalized();
  const double ref = (x.adjoint() * d * x)(0, 0).real();
  EXPECT_NEAR(h.expectation(std::span<const Complex>(x.data(), 9)), ref, 1e-13);
}

TEST(SparseOperator, TripletRoundTrip) {
  const auto h = random_hermitian(10, 11);
  const auto again = SparseOperator::from_triplets(h.dim(), h.triplets());
  ASSERT_EQ(again.nnz(), h.nnz());
  for (std::size_t k = 0; k < h.nnz(); ++k) {
    EXPECT_EQ(again.cols()[k], h.cols()[k]);
    EXPECT_EQ(again.values()[k], h.values()[k]);
  }
}
