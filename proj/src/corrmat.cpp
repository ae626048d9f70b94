#include "isi/corrmat.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#include "isi/eigen.hpp"
#include "isi/error.hpp"

namespace isi {

Autocorrelation::Autocorrelation(std::vector<std::int64_t> beta) : beta_(std::move(beta)) {
  if (beta_.empty()) throw InputError("autocorrelation needs at least one lag");
}

Autocorrelation autocorrelation(std::span<const int> raw, int lags) {
  if (lags < 1) throw InputError("lags must be >= 1, got " + std::to_string(lags));
  const std::size_t n = raw.size();
  std::vector<std::int64_t> beta(static_cast<std::size_t>(lags), 0);
  for (std::size_t m = 0; m < beta.size() && m < n; ++m) {
    std::int64_t acc = 0;
    for (std::size_t k = 0; k + m < n; ++k) acc += std::int64_t{raw[k]} * raw[k + m];
    beta[m] = acc;
  }
  return Autocorrelation(std::move(beta));
}

Autocorrelation autocorrelation(const ErrorEvent& event, int lags) {
  return autocorrelation(std::span<const int>(event.symbols()), lags);
}

CorrelationMatrix::CorrelationMatrix(std::vector<std::int64_t> first_row)
    : row_(std::move(first_row)) {
  if (row_.empty()) throw InputError("correlation matrix order must be >= 1");
}

Matrix CorrelationMatrix::dense() const {
  const auto n = row_.size();
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = static_cast<double>(row_[i > j ? i - j : j - i]);
  return m;
}

CorrelationMatrix CorrelationMatrix::leading(int k) const {
  if (k < 1 || k > order()) throw InputError("leading block order out of range");
  return CorrelationMatrix(std::vector<std::int64_t>(row_.begin(), row_.begin() + k));
}

double CorrelationMatrix::gershgorin_lower_bound() const {
  const int n = order();
  std::int64_t worst = std::numeric_limits<std::int64_t>::max();
  for (int i = 0; i < n; ++i) {
    std::int64_t radius = 0;
    for (int j = 0; j < n; ++j)
      if (j != i) radius += std::llabs(entry(i, j));
    worst = std::min(worst, row_[0] - radius);
  }
  return static_cast<double>(worst);
}

CorrelationMatrix build_matrix(const Autocorrelation& acf, int L) {
  if (L < 1) throw InputError("matrix order L must be >= 1, got " + std::to_string(L));
  std::vector<std::int64_t> row(static_cast<std::size_t>(L));
  for (std::size_t m = 0; m < row.size(); ++m) row[m] = acf[m];
  return CorrelationMatrix(std::move(row));
}

double quadratic_form(const CorrelationMatrix& A, std::span<const double> f) {
  const int n = A.order();
  if (static_cast<int>(f.size()) != n)
    throw InputError("channel length " + std::to_string(f.size()) +
                     " does not match matrix order " + std::to_string(n));
  const auto& beta = A.first_row();
  double diag = 0.0;
  for (double x : f) diag += x * x;
  double acc = static_cast<double>(beta[0]) * diag;
  for (int m = 1; m < n; ++m) {
    if (beta[m] == 0) continue;
    double lag = 0.0;
    for (int i = 0; i + m < n; ++i) lag += f[i] * f[i + m];
    acc += 2.0 * static_cast<double>(beta[m]) * lag;
  }
  return acc;
}

}  // namespace isi
