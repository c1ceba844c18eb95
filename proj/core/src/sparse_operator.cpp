#include "qcp/sparse_operator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qcp/error.hpp"

namespace qcp {

SparseOperator SparseOperator::from_triplets(std::size_t dim, std::vector<Triplet> entries,
                                             bool hermitian) {
  for (const auto& e : entries) {
    if (e.row >= dim || e.col >= dim) {
      throw ParameterError("sparse entry index out of range");
    }
    if (!std::isfinite(e.value.real()) || !std::isfinite(e.value.imag())) {
      throw ParameterError("sparse entry is not finite");
    }
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });

  SparseOperator op;
  op.dim_ = dim;
  op.hermitian_ = hermitian;
  op.row_ptr_.assign(dim + 1, 0);
  op.cols_.reserve(entries.size());
  op.values_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size();) {
    const std::size_t r = entries[i].row;
    const std::size_t c = entries[i].col;
    Complex sum{};
    while (i < entries.size() && entries[i].row == r && entries[i].col == c) {
      sum += entries[i].value;
      ++i;
    }
    op.cols_.push_back(c);
    op.values_.push_back(sum);
    ++op.row_ptr_[r + 1];
  }
  for (std::size_t r = 0; r < dim; ++r) op.row_ptr_[r + 1] += op.row_ptr_[r];
  op.detect_real();
  return op;
}

SparseOperator SparseOperator::from_csr(std::size_t dim, std::vector<std::size_t> row_ptr,
                                        std::vector<std::size_t> cols,
                                        std::vector<Complex> values, bool hermitian) {
  if (row_ptr.size() != dim + 1 || row_ptr.front() != 0 || row_ptr.back() != cols.size() ||
      cols.size() != values.size()) {
    throw ParameterError("inconsistent compressed-row arrays");
  }
  for (std::size_t r = 0; r < dim; ++r) {
    if (row_ptr[r] > row_ptr[r + 1]) throw ParameterError("row pointers not monotone");
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      if (cols[k] >= dim) throw ParameterError("column index out of range");
      if (k > row_ptr[r] && cols[k] <= cols[k - 1]) {
        throw ParameterError("columns not strictly increasing within a row");
      }
    }
  }
  SparseOperator op;
  op.dim_ = dim;
  op.hermitian_ = hermitian;
  op.row_ptr_ = std::move(row_ptr);
  op.cols_ = std::move(cols);
  op.values_ = std::move(values);
  op.detect_real();
  return op;
}

SparseOperator SparseOperator::with_values(std::vector<Complex> values) const {
  if (values.size() != values_.size()) throw ParameterError("value count does not match the sparsity pattern");
  for (const auto& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw ParameterError("non-finite matrix element");
  }
  SparseOperator op;
  op.dim_ = dim_;
  op.hermitian_ = hermitian_;
  op.row_ptr_ = row_ptr_;
  op.cols_ = cols_;
  op.values_ = std::move(values);
  op.detect_real();
  return op;
}

void SparseOperator::detect_real() {
  real_ = std::all_of(values_.begin(), values_.end(), [](const Complex& v) { return v.imag() == 0.0; });
}

Complex SparseOperator::at(std::size_t row, std::size_t col) const {
  if (row >= dim_ || col >= dim_) throw ParameterError("matrix element index out of range");
  const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
  const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
  const auto it = std::lower_bound(first, last, col);
  if (it == last || *it != col) return {};
  return values_[static_cast<std::size_t>(it - cols_.begin())];
}

void SparseOperator::apply(std::span<const Complex> in, std::span<Complex> out) const {
  if (in.size() != dim_ || out.size() != dim_) {
    throw ParameterError("operator/vector dimension mismatch");
  }
  if (real_) {
    for (std::size_t r = 0; r < dim_; ++r) {
      double re = 0.0;
      double im = 0.0;
      for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
        const Complex x = in[cols_[k]];
        const double a = values_[k].real();
        re += a * x.real();
        im += a * x.imag();
      }
      out[r] = {re, im};
    }
    return;
  }
  for (std::size_t r = 0; r < dim_; ++r) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const Complex a = values_[k];
      const Complex x = in[cols_[k]];
      re += a.real() * x.real() - a.imag() * x.imag();
      im += a.real() * x.imag() + a.imag() * x.real();
    }
    out[r] = {re, im};
  }
}

std::vector<Complex> SparseOperator::apply(std::span<const Complex> in) const {
  std::vector<Complex> out(dim_);
  apply(in, out);
  return out;
}

double SparseOperator::expectation(std::span<const Complex> psi) const {
  const auto h_psi = apply(psi);
  Complex acc{};
  for (std::size_t i = 0; i < dim_; ++i) acc += std::conj(psi[i]) * h_psi[i];
  return acc.real();
}

double SparseOperator::max_abs_entry() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

double SparseOperator::row_sum_norm() const {
  double m = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    double s = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) s += std::abs(values_[k]);
    m = std::max(m, s);
  }
  return m;
}

double SparseOperator::hermiticity_defect() const {
  double defect = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const Complex mirror = at(cols_[k], r);
      defect = std::max(defect, std::abs(values_[k] - std::conj(mirror)));
    }
  }
  return defect;
}

std::vector<Triplet> SparseOperator::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) out.push_back({r, cols_[k], values_[k]});
  }
  return out;
}

Eigen::MatrixXcd SparseOperator::to_dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_),
                                              static_cast<Eigen::Index>(dim_));
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(cols_[k])) = values_[k];
    }
  }
  return m;
}

void verify_hermitian(const SparseOperator& op, double tolerance) {
  const double defect = op.hermiticity_defect();
  if (!(defect < tolerance)) {
    std::ostringstream os;
    os << "operator is not Hermitian: max |H - H^dagger| = " << defect;
    throw NumericalError(os.str());
  }
}

}  // namespace qcp
