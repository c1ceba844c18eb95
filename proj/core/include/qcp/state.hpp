#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qcp/model.hpp"
#include "qcp/sparse_operator.hpp"

namespace qcp {

// Spin space has dimension 2^n; domain space has dimension n (domain size m = 1..n).
enum class BasisKind { spin, domain };

const char* to_string(BasisKind kind) noexcept;
std::size_t basis_dimension(BasisKind kind, int n_sites);

inline constexpr double kNormTolerance = 1e-10;

// Normalized amplitude vector over a declared basis.
class QuantumState {
 public:
  // Throws NormalizationError unless | ||amps|| - 1 | <= 1e-10.
  QuantumState(BasisKind basis, int n_sites, std::vector<Complex> amplitudes);

  // |•∘...∘> in spin space, |m = 1> in domain space.
  static QuantumState seed(BasisKind basis, int n_sites);
  // Prefix domain of size m (spin) or domain site m.
  static QuantumState domain_state(BasisKind basis, int n_sites, int m);
  static QuantumState basis_state(const SpinConfiguration& config);

  BasisKind basis() const noexcept { return basis_; }
  int n_sites() const noexcept { return n_sites_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  double norm() const;

 private:
  BasisKind basis_;
  int n_sites_;
  std::vector<Complex> amps_;
};

double norm_of(std::span<const Complex> v);
// Throws NormalizationError if | ||v|| - 1 | > tolerance.
void require_normalized(std::span<const Complex> v, double tolerance = kNormTolerance);

}  // namespace qcp
