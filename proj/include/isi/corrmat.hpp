#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "isi/events.hpp"

namespace isi {

class Matrix;

/// Lag autocorrelation beta_m = sum_k e_k e_{k+m} of an error event.
class Autocorrelation {
 public:
  explicit Autocorrelation(std::vector<std::int64_t> beta);

  /// beta_m, zero for lags beyond the stored range.
  std::int64_t operator[](std::size_t m) const {
    return m < beta_.size() ? beta_[m] : 0;
  }
  std::size_t lags() const { return beta_.size(); }
  const std::vector<std::int64_t>& beta() const { return beta_; }

 private:
  std::vector<std::int64_t> beta_;
};

Autocorrelation autocorrelation(const ErrorEvent& event, int lags);
Autocorrelation autocorrelation(std::span<const int> raw, int lags);

/// Symmetric Toeplitz matrix with entry (i, j) = beta_{|i-j|}, held by its
/// first row in exact integer form.
class CorrelationMatrix {
 public:
  CorrelationMatrix(std::vector<std::int64_t> first_row);

  int order() const { return static_cast<int>(row_.size()); }
  std::int64_t entry(int i, int j) const { return row_[i > j ? i - j : j - i]; }
  const std::vector<std::int64_t>& first_row() const { return row_; }

  Matrix dense() const;

  /// Leading principal submatrix of order k.
  CorrelationMatrix leading(int k) const;

  /// min_i (beta_0 - sum_{j != i} |beta_{|i-j|}|); a lower bound on every
  /// eigenvalue (Gershgorin).
  double gershgorin_lower_bound() const;

  friend bool operator==(const CorrelationMatrix&, const CorrelationMatrix&) = default;

 private:
  std::vector<std::int64_t> row_;
};

/// L x L matrix from the first L lags (zero-extended). Throws InputError for L < 1.
CorrelationMatrix build_matrix(const Autocorrelation& acf, int L);

/// f^T A f, the squared distance of the event over channel f in normalized
/// units. Throws InputError on dimension mismatch.
double quadratic_form(const CorrelationMatrix& A, std::span<const double> f);

}  // namespace isi
