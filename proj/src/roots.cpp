#include "isi/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace isi {

namespace {

using cd = std::complex<double>;

// Horner evaluation of p and p' for coefficients in descending powers.
void horner(std::span<const double> a, cd z, cd& p, cd& dp) {
  p = a[0];
  dp = 0.0;
  for (std::size_t i = 1; i < a.size(); ++i) {
    dp = dp * z + p;
    p = p * z + a[i];
  }
}

// |p(z)| relative to the magnitude of the terms it sums.
double relative_residual(std::span<const double> a, cd z) {
  cd p, dp;
  horner(a, z, p, dp);
  double scale = 0.0;
  const double r = std::abs(z);
  for (double c : a) scale = scale * r + std::abs(c);
  return scale > 0 ? std::abs(p) / scale : 0.0;
}

std::vector<cd> initial_guesses(std::span<const double> a) {
  const std::size_t n = a.size() - 1;
  // Cauchy-style radius from the coefficient magnitudes.
  double radius = 0.0;
  for (std::size_t i = 1; i <= n; ++i)
    radius = std::max(radius, std::pow(std::abs(a[i] / a[0]), 1.0 / static_cast<double>(i)));
  if (radius == 0.0) radius = 1.0;
  std::vector<cd> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius, angle);
  }
  return z;
}

double max_residual(std::span<const double> a, const std::vector<cd>& z) {
  double worst = 0.0;
  for (const cd& x : z) worst = std::max(worst, relative_residual(a, x));
  return worst;
}

bool aberth(std::span<const double> a, std::vector<cd>& z, double tol, int& iters) {
  const std::size_t n = z.size();
  for (iters = 0; iters < 500; ++iters) {
    bool moved = false;
    for (std::size_t k = 0; k < n; ++k) {
      cd p, dp;
      horner(a, z[k], p, dp);
      if (p == 0.0) continue;
      const cd ratio = p / dp;
      cd repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      const cd step = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      z[k] -= step;
      if (std::abs(step) > 1e-15 * std::max(1.0, std::abs(z[k]))) moved = true;
    }
    if (max_residual(a, z) <= tol || !moved) return max_residual(a, z) <= tol;
  }
  return max_residual(a, z) <= tol;
}

bool durand_kerner(std::span<const double> a, std::vector<cd>& z, double tol, int& iters) {
  const std::size_t n = z.size();
  for (iters = 0; iters < 5000; ++iters) {
    for (std::size_t k = 0; k < n; ++k) {
      cd p, dp;
      horner(a, z[k], p, dp);
      cd denom = a[0];
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) denom *= z[k] - z[j];
      if (denom != 0.0) z[k] -= p / denom;
    }
    if (max_residual(a, z) <= tol) return true;
  }
  return false;
}

}  // namespace

PolynomialRoots polynomial_roots(std::span<const double> coeffs, double tol) {
  std::size_t first = 0;
  while (first < coeffs.size() && coeffs[first] == 0.0) ++first;
  std::vector<double> a(coeffs.begin() + static_cast<std::ptrdiff_t>(first), coeffs.end());

  PolynomialRoots out;
  if (a.size() <= 1) {
    out.method = "trivial";
    return out;
  }
  if (a.size() == 2) {
    out.method = "trivial";
    out.roots = {cd(-a[1] / a[0], 0.0)};
    return out;
  }

  std::vector<cd> z = initial_guesses(a);
  out.method = "aberth";
  out.converged = aberth(a, z, tol, out.iterations);
  if (!out.converged) {
    std::vector<cd> alt = initial_guesses(a);
    int it = 0;
    if (durand_kerner(a, alt, tol, it) || max_residual(a, alt) < max_residual(a, z)) {
      z = std::move(alt);
      out.method = "durand-kerner";
      out.iterations += it;
    }
    out.converged = max_residual(a, z) <= tol;
  }
  out.max_residual = max_residual(a, z);
  std::sort(z.begin(), z.end(), [](const cd& x, const cd& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  out.roots = std::move(z);
  return out;
}

RootCheck root_check(std::span<const double> taps, double tol) {
  double peak = 0.0;
  for (double t : taps) peak = std::max(peak, std::abs(t));
  const double floor = 1e-12 * peak;
  std::size_t lo = 0, hi = taps.size();
  while (lo < hi && std::abs(taps[lo]) <= floor) ++lo;
  while (hi > lo && std::abs(taps[hi - 1]) <= floor) --hi;

  RootCheck out;
  // f_0 + f_1 z^-1 + ... vanishes where f_0 z^n + f_1 z^{n-1} + ... + f_n does.
  PolynomialRoots pr = polynomial_roots(taps.subspan(lo, hi - lo), 1e-12);
  out.roots = std::move(pr.roots);
  out.converged = pr.converged;
  out.method = pr.method;
  for (const auto& z : out.roots) {
    const double m = std::abs(z);
    out.moduli.push_back(m);
    out.max_deviation = std::max(out.max_deviation, std::abs(m - 1.0));
  }
  std::sort(out.moduli.begin(), out.moduli.end());
  out.pass = out.max_deviation <= tol;
  return out;
}

}  // namespace isi
