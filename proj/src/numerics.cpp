#include "paradv/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "paradv/error.hpp"

namespace paradv {

SymMatrix::SymMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, 0.0) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "SymMatrix dimension must be >= 1");
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  SymMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw Error(ErrorCode::DimMismatch, "row " + std::to_string(i) + " has wrong length");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[i][j] != rows[j][i])
        throw Error(ErrorCode::InvalidArgument,
                    "matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      m.a_[i * m.dim_ + j] = rows[i][j];
    }
  }
  return m;
}

void SymMatrix::set(std::size_t i, std::size_t j, double value) {
  if (i >= dim_ || j >= dim_) throw Error(ErrorCode::IndexOutOfRange, "SymMatrix::set");
  a_[i * dim_ + j] = value;
  a_[j * dim_ + i] = value;
}

bool SymMatrix::is_zero() const noexcept {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return v == 0.0; });
}

bool SymMatrix::is_nonnegative() const noexcept {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return v >= 0.0; });
}

AmplitudeVector::AmplitudeVector(std::size_t dim) : v_(dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "AmplitudeVector dimension must be >= 1");
}

AmplitudeVector::AmplitudeVector(std::vector<Complex> entries) : v_(std::move(entries)) {
  if (v_.empty()) throw Error(ErrorCode::InvalidArgument, "AmplitudeVector dimension must be >= 1");
}

AmplitudeVector AmplitudeVector::basis(std::size_t dim, std::size_t k) {
  if (k >= dim) throw Error(ErrorCode::IndexOutOfRange, "basis index");
  AmplitudeVector v(dim);
  v[k] = 1.0;
  return v;
}

double AmplitudeVector::norm() const noexcept {
  double s = 0.0;
  for (const auto& a : v_) s += std::norm(a);
  return std::sqrt(s);
}

bool AmplitudeVector::is_normalized() const noexcept {
  return std::abs(norm() - 1.0) <= kNormTolerance;
}

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "ComplexMatrix dimension must be >= 1");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

double ComplexMatrix::unitarity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) s += std::conj((*this)(k, i)) * (*this)(k, j);
      if (i == j) s -= 1.0;
      worst = std::max(worst, std::abs(s));
    }
  }
  return worst;
}

namespace {

// Householder reduction to tridiagonal form (EISPACK tred2 lineage). On exit
// d holds the diagonal, e the subdiagonal in e[1..n-1], and z the accumulated
// orthogonal transform when want_vectors is set.
void tridiagonalize(std::vector<double>& z, std::size_t n, std::vector<double>& d,
                    std::vector<double>& e, bool want_vectors) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return z[i * n + j]; };
  for (std::size_t j = 0; j < n; ++j) d[j] = at(n - 1, j);

  for (std::size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (std::size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (std::size_t j = 0; j < i; ++j) {
        d[j] = at(i - 1, j);
        at(i, j) = 0.0;
        at(j, i) = 0.0;
      }
    } else {
      for (std::size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        at(j, i) = f;
        g = e[j] + at(j, j) * f;
        for (std::size_t k = j + 1; k < i; ++k) {
          g += at(k, j) * d[k];
          e[k] += at(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (std::size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      double hh = f / (h + h);
      for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (std::size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (std::size_t k = j; k < i; ++k) at(k, j) -= (f * e[k] + g * d[k]);
        d[j] = at(i - 1, j);
        at(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    at(n - 1, i) = at(i, i);
    if (want_vectors) {
      at(i, i) = 1.0;
      double h = d[i + 1];
      if (h != 0.0) {
        for (std::size_t k = 0; k <= i; ++k) d[k] = at(k, i + 1) / h;
        for (std::size_t j = 0; j <= i; ++j) {
          double g = 0.0;
          for (std::size_t k = 0; k <= i; ++k) g += at(k, i + 1) * at(k, j);
          for (std::size_t k = 0; k <= i; ++k) at(k, j) -= g * d[k];
        }
      }
      for (std::size_t k = 0; k <= i; ++k) at(k, i + 1) = 0.0;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    d[j] = at(n - 1, j);
    at(n - 1, j) = 0.0;
  }
  at(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicit QL on the tridiagonal (d, e). Deflation test at machine precision.
void tridiagonal_ql(std::vector<double>& z, std::size_t n, std::vector<double>& d,
                    std::vector<double>& e, bool want_vectors) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return z[i * n + j]; };
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    std::size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m == n) m = n - 1;

    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 100) throw Error(ErrorCode::InvalidArgument, "eigensolver failed to converge");
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        double dl1 = d[l + 1];
        double h = g - d[l];
        for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = c, c3 = c;
        double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (std::size_t ii = m; ii-- > l;) {
          const std::size_t i = ii;
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (want_vectors) {
            for (std::size_t k = 0; k < n; ++k) {
              h = at(k, i + 1);
              at(k, i + 1) = s * at(k, i) + c * h;
              at(k, i) = c * at(k, i) - s * h;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
}

Eigensystem solve(const SymMatrix& m, bool want_vectors) {
  const std::size_t n = m.dim();
  Eigensystem out;
  out.dim = n;
  std::vector<double> z(m.data().begin(), m.data().end());
  std::vector<double> d(n), e(n);
  if (n == 1) {
    out.values = {z[0]};
    if (want_vectors) out.vectors = {1.0};
    return out;
  }
  tridiagonalize(z, n, d, e, want_vectors);
  tridiagonal_ql(z, n, d, e, want_vectors);

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = d[order[k]];
  if (want_vectors) {
    out.vectors.resize(n * n);
    // z holds eigenvectors as columns.
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) out.vectors[k * n + i] = z[i * n + order[k]];
  }
  return out;
}

}  // namespace

Eigensystem symmetric_eigensystem(const SymMatrix& m) { return solve(m, true); }

std::vector<double> symmetric_eigenvalues(const SymMatrix& m) { return solve(m, false).values; }

double spectral_norm(const SymMatrix& m) {
  if (m.is_zero()) return 0.0;
  const auto values = symmetric_eigenvalues(m);
  return std::max(std::abs(values.front()), std::abs(values.back()));
}

Eigenpair principal_eigenpair(const SymMatrix& m) {
  if (m.is_zero()) throw Error(ErrorCode::ZeroMatrix, "principal_eigenpair of the zero matrix");
  if (!m.is_nonnegative())
    throw Error(ErrorCode::InvalidArgument, "principal_eigenpair requires an entrywise nonnegative matrix");

  const auto sys = symmetric_eigensystem(m);
  const std::size_t n = m.dim();
  Eigenpair out;
  out.lambda = sys.values.back();
  out.delta.resize(n);
  const auto top = sys.vector(n - 1);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.delta[i] = std::abs(top[i]);
    norm2 += out.delta[i] * out.delta[i];
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& v : out.delta) v *= inv;
  return out;
}

Complex overlap(const AmplitudeVector& u, const AmplitudeVector& v) {
  if (u.dim() != v.dim())
    throw Error(ErrorCode::DimMismatch,
                "overlap of vectors with dims " + std::to_string(u.dim()) + " and " + std::to_string(v.dim()));
  Complex s = 0.0;
  for (std::size_t k = 0; k < u.dim(); ++k) s += std::conj(u[k]) * v[k];
  return s;
}

double eigen_residual(const SymMatrix& m, double lambda, std::span<const double> x) {
  const std::size_t n = m.dim();
  if (x.size() != n) throw Error(ErrorCode::DimMismatch, "eigen_residual");
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = -lambda * x[i];
    for (std::size_t j = 0; j < n; ++j) r += m(i, j) * x[j];
    s += r * r;
  }
  return std::sqrt(s);
}

}  // namespace paradv
