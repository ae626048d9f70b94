#include "isi/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "isi/corrmat.hpp"
#include "isi/error.hpp"

namespace isi {

Matrix::Matrix(std::size_t n, std::vector<double> row_major) : n_(n), a_(std::move(row_major)) {
  if (a_.size() != n * n) throw InputError("matrix data does not match order");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double x : a_) s += x * x;
  return std::sqrt(s);
}

double Matrix::inf_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n_; ++j) row += std::abs((*this)(i, j));
    best = std::max(best, row);
  }
  return best;
}

bool Matrix::is_symmetric(double rel_tol) const {
  const double scale = std::max(inf_norm(), 1.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > rel_tol * scale) return false;
  return true;
}

Matrix Matrix::leading(std::size_t k) const {
  if (k > n_) throw InputError("leading block larger than matrix");
  Matrix m(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m(i, j) = (*this)(i, j);
  return m;
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-13;

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  const auto n = a.order();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

Spectrum eigen_all(const Matrix& input) {
  const std::size_t n = input.order();
  if (n == 0) throw InputError("eigen_all: empty matrix");
  if (!std::isfinite(input.frobenius_norm())) throw InputError("eigen_all: non-finite entry");
  if (!input.is_symmetric()) throw InputError("eigen_all: matrix is not symmetric");

  Matrix a = input;
  Matrix v = Matrix::identity(n);
  const double target = kOffDiagonalTolerance * input.frobenius_norm();

  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rotation zeroing a(p,q): t = tan(phi), smaller root of t^2 + 2 theta t - 1 = 0.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
          a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  Spectrum out;
  out.sweeps = sweep;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (std::size_t k : order) {
    out.values.push_back(a(k, k));
    std::vector<double> col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = v(r, k);
    out.vectors.push_back(std::move(col));
  }
  return out;
}

Spectrum eigen_all(const CorrelationMatrix& A) { return eigen_all(A.dense()); }

EigenPair eigen_min(const Matrix& A) {
  Spectrum s = eigen_all(A);
  EigenPair out;
  out.value = s.values.front();
  out.vector = std::move(s.vectors.front());

  double peak = 0.0;
  for (double x : out.vector) peak = std::max(peak, std::abs(x));
  for (double x : out.vector) {
    if (std::abs(x) > 1e-12 * peak) {
      if (x < 0)
        for (double& y : out.vector) y = -y;
      break;
    }
  }

  const double scale = std::max(std::abs(s.values.back()), std::abs(s.values.front()));
  out.multiplicity = 1;
  for (std::size_t k = 1; k < s.values.size(); ++k) {
    const double gap = s.values[k] - out.value;
    if (gap <= kMultiplicityGap * scale) {
      ++out.multiplicity;
    } else {
      out.relative_gap = scale > 0 ? gap / scale : 0.0;
      break;
    }
  }
  return out;
}

EigenPair eigen_min(const CorrelationMatrix& A) { return eigen_min(A.dense()); }

InterlacingReport interlacing_check(const Matrix& A) {
  const std::size_t n = A.order();
  if (n < 2) throw InputError("interlacing_check needs order >= 2");
  InterlacingReport rep;
  rep.container = eigen_all(A).values;
  rep.submatrix = eigen_all(A.leading(n - 1)).values;
  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    margin = std::min(margin, rep.submatrix[k] - rep.container[k]);
    margin = std::min(margin, rep.container[k + 1] - rep.submatrix[k]);
  }
  rep.worst_margin = margin;
  rep.ok = margin >= -kInterlacingTolerance;
  return rep;
}

InterlacingReport interlacing_check(const CorrelationMatrix& A) {
  return interlacing_check(A.dense());
}

}  // namespace isi
