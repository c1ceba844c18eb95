#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qcp {

using Complex = std::complex<double>;

struct Triplet {
  std::size_t row;
  std::size_t col;
  Complex value;
};

// Immutable compressed-row operator over a basis of dimension dim().
// Rows are stored with strictly increasing column indices, so two
// operators built from the same entries are identical element by element.
class SparseOperator {
 public:
  SparseOperator() = default;

  // Coordinate-list construction. Duplicate (row, col) entries are summed,
  // exact zeros are kept (they carry the sparsity pattern of a parametric
  // family) and the result is sorted row-major.
  static SparseOperator from_triplets(std::size_t dim, std::vector<Triplet> entries,
                                      bool hermitian = true);

  // Adopts compressed-row arrays. Column indices must be strictly
  // increasing within each row; throws ParameterError otherwise.
  static SparseOperator from_csr(std::size_t dim, std::vector<std::size_t> row_ptr,
                                 std::vector<std::size_t> cols, std::vector<Complex> values,
                                 bool hermitian = true);

  // Same sparsity pattern with new values, stored in pattern order.
  SparseOperator with_values(std::vector<Complex> values) const;

  std::size_t dim() const noexcept { return dim_; }
  std::size_t nnz() const noexcept { return values_.size(); }
  bool hermitian() const noexcept { return hermitian_; }

  Complex at(std::size_t row, std::size_t col) const;

  // out = H * in. Both spans must have length dim().
  void apply(std::span<const Complex> in, std::span<Complex> out) const;
  std::vector<Complex> apply(std::span<const Complex> in) const;

  // <psi|H|psi> (real part for Hermitian operators).
  double expectation(std::span<const Complex> psi) const;

  // max |H_rc|
  double max_abs_entry() const;
  // max_r sum_c |H_rc|; an upper bound on the spectral norm.
  double row_sum_norm() const;
  // max |H_rc - conj(H_cr)| over all stored and implied entries.
  double hermiticity_defect() const;

  std::vector<Triplet> triplets() const;
  Eigen::MatrixXcd to_dense() const;

  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::size_t> cols() const noexcept { return cols_; }
  std::span<const Complex> values() const noexcept { return values_; }

 private:
  std::size_t dim_ = 0;
  bool hermitian_ = true;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> cols_;
  std::vector<Complex> values_;
  // Every entry is real; selects the real-coefficient product in apply().
  bool real_ = false;

  void detect_real();
};

// Throws NumericalError when hermiticity_defect() >= tolerance.
void verify_hermitian(const SparseOperator& op, double tolerance = 1e-12);

}  // namespace qcp
