#include "qcp/krylov.hpp"

#include <algorithm>
#include <cmath>

#include "qcp/error.hpp"

namespace qcp {
namespace {

constexpr int kLocalOrthogonality = 6;

struct TridiagonalExp {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;

  void factor(const std::vector<double>& alpha, const std::vector<double>& beta, int k) {
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(alpha.data(), k);
    Eigen::VectorXd e = k > 1 ? Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(beta.data(), k - 1))
                              : Eigen::VectorXd();
    solver.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) throw NumericalError("tridiagonal eigensolver failed");
  }

  // exp(-i tau T) e_1
  Eigen::VectorXcd first_column(double tau) const {
    const auto& q = solver.eigenvectors();
    const auto& lam = solver.eigenvalues();
    Eigen::VectorXcd c(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      c(i) = std::exp(Complex(0.0, -tau * lam(i))) * q(0, i);
    }
    return q.cast<Complex>() * c;
  }
};

}  // namespace

KrylovPropagator::KrylovPropagator(int max_subspace) : max_subspace_(max_subspace) {
  if (max_subspace < 1) throw ParameterError("Krylov subspace dimension must be positive");
}

void KrylovPropagator::propagate(const SparseOperator& h, std::span<Complex> v, double tau, double tol) {
  const auto dim = static_cast<Eigen::Index>(h.dim());
  if (static_cast<Eigen::Index>(v.size()) != dim) throw ParameterError("operator/vector dimension mismatch");
  if (!std::isfinite(tau)) throw ParameterError("propagation time is not finite");
  if (tau == 0.0 || dim == 0) return;

  const int m_max = static_cast<int>(std::min<Eigen::Index>(max_subspace_, dim));
  if (basis_.rows() != dim || basis_.cols() < m_max + 1) basis_.resize(dim, m_max + 1);
  work_.resize(dim);

  Eigen::Map<Eigen::VectorXcd> w(v.data(), dim);
  const double direction = tau > 0.0 ? 1.0 : -1.0;
  const double total = std::abs(tau);
  double remaining = total;
  std::vector<double> alpha;
  std::vector<double> beta;
  TridiagonalExp texp;

  while (remaining > 0.0) {
    const double beta0 = w.norm();
    if (!std::isfinite(beta0)) throw NumericalError("non-finite amplitudes during Krylov propagation");
    if (beta0 == 0.0) return;
    basis_.col(0) = w / beta0;
    alpha.clear();
    beta.clear();

    double step = remaining;
    double scale = 0.0;
    int k = 0;
    Eigen::VectorXcd y;
    for (int j = 0; j < m_max; ++j) {
      h.apply(std::span<const Complex>(basis_.col(j).data(), static_cast<std::size_t>(dim)),
              std::span<Complex>(work_.data(), static_cast<std::size_t>(dim)));
      ++stats_.matvecs;
      const double a = basis_.col(j).dot(work_).real();
      work_ -= a * basis_.col(j);
      if (j > 0) work_ -= beta[static_cast<std::size_t>(j - 1)] * basis_.col(j - 1);
      // Short recurrences stay orthogonal to rounding; longer ones are
      // reorthogonalized against the whole basis.
      if (j >= kLocalOrthogonality) work_ -= basis_.leftCols(j + 1) * (basis_.leftCols(j + 1).adjoint() * work_);
      const double b = work_.norm();
      alpha.push_back(a);
      k = j + 1;
      scale = std::max({scale, std::abs(a), b});

      texp.factor(alpha, beta, k);
      const bool invariant = b <= 1e-13 * scale || k == dim;
      y = texp.first_column(direction * step);
      double err = invariant ? 0.0 : beta0 * b * std::abs(y(k - 1));
      const double budget = tol * step / total;
      if (err <= budget) {
        stats_.max_error_estimate = std::max(stats_.max_error_estimate, err);
        break;
      }
      if (k < m_max) {
        beta.push_back(b);
        basis_.col(k) = work_ / b;
        continue;
      }
      // Subspace exhausted: shorten the step until the estimate is met.
      int halvings = 0;
      while (err > tol * step / total) {
        if (++halvings > 80) throw NumericalError("Krylov step control failed to converge");
        step *= 0.5;
        y = texp.first_column(direction * step);
        err = beta0 * b * std::abs(y(k - 1));
      }
      stats_.max_error_estimate = std::max(stats_.max_error_estimate, err);
      break;
    }
    // exp(-i tau T) e_1 has unit norm; drop the rounding of the small
    // eigendecomposition so it does not accumulate over many steps.
    y /= y.norm();
    w = beta0 * (basis_.leftCols(k) * y);
    remaining = step >= remaining ? 0.0 : remaining - step;
    ++stats_.substeps;
    stats_.max_subspace = std::max(stats_.max_subspace, k);
  }
}

std::vector<Complex> krylov_expmv(const SparseOperator& h, std::span<const Complex> v, double tau,
                                  double tol, KrylovStats* stats) {
  std::vector<Complex> out(v.begin(), v.end());
  KrylovPropagator prop;
  prop.propagate(h, out, tau, tol);
  if (stats) *stats = prop.stats();
  return out;
}

}  // namespace qcp
