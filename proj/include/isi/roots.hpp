#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace isi {

struct PolynomialRoots {
  std::vector<std::complex<double>> roots;
  bool converged = true;
  int iterations = 0;
  std::string method;  ///< "aberth", "durand-kerner" or "trivial"
  /// max_k |p(z_k)| / sum_i |a_i| |z_k|^i
  double max_residual = 0.0;
};

/// Roots of a_0 z^n + a_1 z^{n-1} + ... + a_n (leading coefficient first) by
/// Aberth-Ehrlich simultaneous iteration, falling back to Durand-Kerner.
/// Leading zero coefficients are dropped.
PolynomialRoots polynomial_roots(std::span<const double> coeffs, double tol = 1e-12);

struct RootCheck {
  std::vector<std::complex<double>> roots;
  std::vector<double> moduli;  ///< ascending
  double max_deviation = 0.0;  ///< max | |z| - 1 |
  bool pass = true;
  bool converged = true;
  std::string method;
};

/// Zeros of f_0 + f_1 z^-1 + ... + f_{L-1} z^-(L-1) and whether all lie on the
/// unit circle within tol. Leading and trailing taps below 1e-12 max|f| are
/// treated as delay / shorter support. A degree-0 channel passes vacuously.
RootCheck root_check(std::span<const double> taps, double tol = 1e-6);

}  // namespace isi
