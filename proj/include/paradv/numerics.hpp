#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace paradv {

using Complex = std::complex<double>;

/// Tolerance used by every numerical assertion in the library.
inline constexpr double kAssertTolerance = 1e-9;

/// Tolerance for flagging an AmplitudeVector as normalized.
inline constexpr double kNormTolerance = 1e-12;

/// Dense real symmetric matrix, row-major storage.
///
/// Symmetry is exact: set() writes both triangles, and from_rows() rejects
/// any input where a[i][j] != a[j][i] bit-for-bit.
class SymMatrix {
 public:
  explicit SymMatrix(std::size_t dim);

  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, double value);

  std::span<const double> data() const noexcept { return a_; }

  bool is_zero() const noexcept;
  bool is_nonnegative() const noexcept;

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t dim_;
  std::vector<double> a_;
};

class AmplitudeVector {
 public:
  explicit AmplitudeVector(std::size_t dim);
  explicit AmplitudeVector(std::vector<Complex> entries);

  static AmplitudeVector basis(std::size_t dim, std::size_t k);

  std::size_t dim() const noexcept { return v_.size(); }
  Complex& operator[](std::size_t k) noexcept { return v_[k]; }
  const Complex& operator[](std::size_t k) const noexcept { return v_[k]; }

  std::span<Complex> entries() noexcept { return v_; }
  std::span<const Complex> entries() const noexcept { return v_; }

  double norm() const noexcept;
  bool is_normalized() const noexcept;

 private:
  std::vector<Complex> v_;
};

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t dim);

  static ComplexMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  Complex& operator()(std::size_t i, std::size_t j) noexcept { return a_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return a_[i * dim_ + j]; }
  std::span<const Complex> data() const noexcept { return a_; }

  /// max_ij |(U^dagger U - I)_ij|
  double unitarity_defect() const;

 private:
  std::size_t dim_;
  std::vector<Complex> a_;
};

/// Full eigendecomposition of a SymMatrix. Eigenvalues ascend; eigenvector k
/// occupies vectors[k * dim ... (k + 1) * dim).
struct Eigensystem {
  std::size_t dim = 0;
  std::vector<double> values;
  std::vector<double> vectors;

  std::span<const double> vector(std::size_t k) const {
    return std::span<const double>(vectors).subspan(k * dim, dim);
  }
};

/// Householder tridiagonalization followed by implicit QL with Wilkinson
/// shifts. Deterministic: identical input gives bit-identical output.
Eigensystem symmetric_eigensystem(const SymMatrix& m);

/// Eigenvalues only; skips eigenvector accumulation.
std::vector<double> symmetric_eigenvalues(const SymMatrix& m);

/// max |eigenvalue|.
double spectral_norm(const SymMatrix& m);

struct Eigenpair {
  double lambda = 0.0;
  std::vector<double> delta;
};

/// Perron eigenpair of an entrywise nonnegative symmetric matrix.
///
/// For such a matrix the largest eigenvalue equals the spectral radius, and
/// if v spans part of its eigenspace then so does |v|. The returned vector is
/// |v| for the solver's top eigenvector, renormalized; this lies in the
/// nonnegative orthant of the eigenspace even when the eigenspace is
/// degenerate (e.g. a disconnected bipartite support).
///
/// Throws Error(ZeroMatrix) for the zero matrix and Error(InvalidArgument)
/// for a matrix with a negative entry.
Eigenpair principal_eigenpair(const SymMatrix& m);

/// <u|v>, conjugate-linear in u. Throws Error(DimMismatch).
Complex overlap(const AmplitudeVector& u, const AmplitudeVector& v);

/// ||m x - lambda x||_2
double eigen_residual(const SymMatrix& m, double lambda, std::span<const double> x);

}  // namespace paradv
