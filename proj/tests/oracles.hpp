#pragma once
// Independent reference routes used only by the tests. Nothing here calls the
// library code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

/// sum_k (sum_i f_i e_{k-i})^2 over the full support of the convolution.
inline double direct_distance(std::span<const double> f, std::span<const int> e) {
  const std::size_t n = e.size() + f.size() - 1;
  double d2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double y = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (k >= i && k - i < e.size()) y += f[i] * e[k - i];
    d2 += y * y;
  }
  return d2;
}

// Sort key for a symbol: magnitude first, then positive before negative.
inline int symbol_key(int s) { return 2 * std::abs(s) + (s < 0 ? 1 : 0); }

inline std::vector<int> keyed(const std::vector<int>& v) {
  std::vector<int> k(v.size());
  std::transform(v.begin(), v.end(), k.begin(), symbol_key);
  return k;
}

/// Orbit minimum under {id, negation, reversal, negated reversal}.
inline std::vector<int> orbit_min(const std::vector<int>& raw) {
  std::vector<int> neg(raw), rev(raw.rbegin(), raw.rend()), nrev;
  for (int& x : neg) x = -x;
  nrev = rev;
  for (int& x : nrev) x = -x;
  std::vector<int> best = raw;
  for (const auto* c : {&neg, &rev, &nrev})
    if (keyed(*c) < keyed(best)) best = *c;
  return best;
}

/// Every raw sequence with nonzero borders over {-(M-1)..M-1}, length
/// <= max_len, internal zero runs <= max_zero_run, reduced to orbit minima.
/// Ordered by length then keyed lexicographic order.
inline std::vector<std::vector<int>> brute_force_events(int M, int max_len, int max_zero_run) {
  const int q = M - 1;
  const int base = 2 * q + 1;
  auto cmp = [](const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return keyed(a) < keyed(b);
  };
  std::set<std::vector<int>, decltype(cmp)> found(cmp);
  for (int n = 1; n <= max_len; ++n) {
    std::int64_t total = 1;
    for (int i = 0; i < n; ++i) total *= base;
    std::vector<int> seq(static_cast<std::size_t>(n));
    for (std::int64_t code = 0; code < total; ++code) {
      std::int64_t c = code;
      for (int i = 0; i < n; ++i) {
        seq[static_cast<std::size_t>(i)] = static_cast<int>(c % base) - q;
        c /= base;
      }
      if (seq.front() == 0 || seq.back() == 0) continue;
      int run = 0, worst = 0;
      for (int s : seq) {
        run = s == 0 ? run + 1 : 0;
        worst = std::max(worst, run);
      }
      if (worst > max_zero_run) continue;
      found.insert(orbit_min(seq));
    }
  }
  return {found.begin(), found.end()};
}

/// Eigenvalues (ascending) of the L x L Toeplitz matrix built from raw lags,
/// computed with Eigen's self-adjoint solver.
inline std::vector<double> toeplitz_eigenvalues(const std::vector<long long>& row) {
  const auto n = static_cast<Eigen::Index>(row.size());
  Eigen::MatrixXd A(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) A(i, j) = static_cast<double>(row[static_cast<std::size_t>(std::abs(i - j))]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  const auto& v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

/// Exhaustive ML over all M^n level sequences in ascending lexicographic order;
/// the first strict minimum wins ties.
inline std::vector<int> exhaustive_ml(std::span<const double> f, std::span<const double> z, int M) {
  const std::size_t n = z.size();
  std::vector<int> idx(n, 0), best;
  double best_metric = std::numeric_limits<double>::infinity();
  for (;;) {
    double m = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double y = 0.0;
      for (std::size_t i = 0; i < f.size() && i <= k; ++i) y += f[i] * (2 * idx[k - i] - (M - 1));
      const double e = z[k] - y;
      m += e * e;
    }
    if (m < best_metric) {
      best_metric = m;
      best.resize(n);
      for (std::size_t k = 0; k < n; ++k) best[k] = 2 * idx[k] - (M - 1);
    }
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < M) break;
      idx[pos] = 0;
      if (pos == 0) return best;
    }
    if (n == 0) return best;
  }
}

}  // namespace oracle
