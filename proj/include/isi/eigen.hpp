#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace isi {

class CorrelationMatrix;

/// Small dense square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
  Matrix(std::size_t n, std::vector<double> row_major);

  static Matrix identity(std::size_t n);

  std::size_t order() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  double frobenius_norm() const;
  /// Max absolute row sum.
  double inf_norm() const;
  bool is_symmetric(double rel_tol = 1e-12) const;
  Matrix leading(std::size_t k) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;
  /// Number of eigenvalues within 1e-8 * lambda_max of `value`.
  int multiplicity = 1;
  /// Distance to the next distinct eigenvalue divided by lambda_max
  /// (0 for a 1x1 matrix or a fully degenerate spectrum).
  double relative_gap = 0.0;
};

struct Spectrum {
  std::vector<double> values;                ///< ascending
  std::vector<std::vector<double>> vectors;  ///< vectors[k] pairs with values[k]
  int sweeps = 0;
};

inline constexpr double kMultiplicityGap = 1e-8;

/// Full symmetric eigendecomposition by cyclic Jacobi rotations, iterated
/// until the off-diagonal Frobenius norm is <= 1e-13 ||A||_F.
/// Throws InputError for a non-symmetric or empty matrix.
Spectrum eigen_all(const Matrix& A);
Spectrum eigen_all(const CorrelationMatrix& A);

/// Smallest eigenpair, vector sign-normalized so its first nonzero entry is
/// positive. Repeated minima return the first vector in rotation order.
EigenPair eigen_min(const Matrix& A);
EigenPair eigen_min(const CorrelationMatrix& A);

struct InterlacingReport {
  bool ok = false;
  /// min over k of min(mu_k - lambda_k, lambda_{k+1} - mu_k); negative when
  /// interlacing is violated.
  double worst_margin = 0.0;
  std::vector<double> container;  ///< eigenvalues of A
  std::vector<double> submatrix;  ///< eigenvalues of the leading (n-1) block
};

inline constexpr double kInterlacingTolerance = 1e-9;

/// Cauchy interlacing of A against its leading principal submatrix.
/// Throws InputError for order < 2.
InterlacingReport interlacing_check(const Matrix& A);
InterlacingReport interlacing_check(const CorrelationMatrix& A);

}  // namespace isi
