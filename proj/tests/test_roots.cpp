#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "isi/roots.hpp"

using namespace isi;

TEST_CASE("roots of known polynomials") {
  // z^2 - 3z + 2
  const auto r = polynomial_roots(std::vector<double>{1, -3, 2});
  REQUIRE(r.roots.size() == 2);
  CHECK(r.converged);
  std::vector<double> re{r.roots[0].real(), r.roots[1].real()};
  std::sort(re.begin(), re.end());
  CHECK(re[0] == doctest::Approx(1.0));
  CHECK(re[1] == doctest::Approx(2.0));

  const auto c = polynomial_roots(std::vector<double>{1, 0, 1});
  for (const auto& z : c.roots) CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
}

TEST_CASE("degree one and constant") {
  const auto r = polynomial_roots(std::vector<double>{2, -1});
  REQUIRE(r.roots.size() == 1);
  CHECK(r.roots[0].real() == doctest::Approx(0.5));
  CHECK(r.method == "trivial");
  CHECK(polynomial_roots(std::vector<double>{3}).roots.empty());
}

TEST_CASE("random polynomials have small residuals") {
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  for (int t = 0; t < 100; ++t) {
    std::vector<double> c(static_cast<std::size_t>(2 + t % 12));
    for (auto& x : c) x = g(rng);
    const auto r = polynomial_roots(c);
    CHECK(r.converged);
    CHECK(r.roots.size() == c.size() - 1);
    CHECK(r.max_residual < 1e-9);
  }
}

TEST_CASE("symmetric taps put roots on the unit circle") {
  const double h = std::sqrt(0.5);
  const auto rc = root_check(std::vector<double>{0.5, -h, 0.5});
  CHECK(rc.pass);
  CHECK(rc.max_deviation < 1e-9);
  CHECK(rc.moduli.size() == 2);

  const auto off = root_check(std::vector<double>{0.8, 0.6});
  CHECK_FALSE(off.pass);
  CHECK(off.moduli[0] == doctest::Approx(0.75));
}

TEST_CASE("trimmed taps and single tap") {
  const auto single = root_check(std::vector<double>{1.0});
  CHECK(single.pass);
  CHECK(single.roots.empty());
  const auto padded = root_check(std::vector<double>{0.0, 0.6, 0.8, 0.0});
  CHECK(padded.roots.size() == 1);
}
