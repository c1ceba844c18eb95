#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qcp/sparse_operator.hpp"

namespace qcp {

inline constexpr int kMaxKrylovDim = 30;

struct KrylovStats {
  long matvecs = 0;
  long substeps = 0;
  int max_subspace = 0;
  double max_error_estimate = 0.0;
};

// Lanczos approximation of exp(-i tau H) v for Hermitian H. The subspace
// grows until the a-posteriori error estimate beta_0 beta_k |e_k^T
// exp(-i tau T_k) e_1| drops below tol (scaled by the fraction of tau
// covered); if the cap is reached the step is split and the basis rebuilt.
// Beyond the first few vectors the basis is reorthogonalized, so the result
// keeps unit norm to rounding. The workspace is reused between calls.
class KrylovPropagator {
 public:
  explicit KrylovPropagator(int max_subspace = kMaxKrylovDim);

  // v <- exp(-i tau H) v
  void propagate(const SparseOperator& h, std::span<Complex> v, double tau, double tol);

  const KrylovStats& stats() const noexcept { return stats_; }
  void reset_stats() noexcept { stats_ = {}; }

 private:
  int max_subspace_;
  Eigen::MatrixXcd basis_;
  Eigen::VectorXcd work_;
  KrylovStats stats_;
};

std::vector<Complex> krylov_expmv(const SparseOperator& h, std::span<const Complex> v, double tau,
                                  double tol, KrylovStats* stats = nullptr);

}  // namespace qcp
