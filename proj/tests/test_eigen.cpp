#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "isi/corrmat.hpp"
#include "isi/eigen.hpp"
#include "isi/error.hpp"
#include "oracles.hpp"

using namespace isi;

namespace {
Matrix random_event_matrix(std::mt19937& rng, int M, int max_len, int L) {
  std::uniform_int_distribution<int> len_dist(1, max_len), sym(-(M - 1), M - 1);
  std::vector<int> e(static_cast<std::size_t>(len_dist(rng)));
  for (auto& x : e) x = sym(rng);
  if (e.front() == 0) e.front() = 1;
  if (e.back() == 0) e.back() = 1;
  return build_matrix(autocorrelation(e, L), L).dense();
}
}  // namespace

TEST_CASE("closed forms") {
  const auto two = eigen_all(Matrix(2, {2, -1, -1, 2}));
  CHECK(std::abs(two.values[0] - 1.0) <= 1e-12);
  CHECK(std::abs(two.values[1] - 3.0) <= 1e-12);

  const auto three = eigen_all(CorrelationMatrix({3, -2, 1}));
  const double s = std::sqrt(33.0);
  CHECK(std::abs(three.values[0] - (7 - s) / 2) <= 1e-12);
  CHECK(std::abs(three.values[1] - 2.0) <= 1e-12);
  CHECK(std::abs(three.values[2] - (7 + s) / 2) <= 1e-12);
}

TEST_CASE("minimum pair of the identity") {
  const auto p = eigen_min(Matrix::identity(2));
  CHECK(p.value == doctest::Approx(1.0));
  CHECK(p.multiplicity == 2);
  CHECK(p.relative_gap == 0.0);
  CHECK(p.vector[0] == doctest::Approx(1.0));
  CHECK(p.vector[1] == doctest::Approx(0.0));
}

TEST_CASE("minimum pair sign convention and unit norm") {
  const auto p = eigen_min(CorrelationMatrix({2, -1}));
  CHECK(p.value == doctest::Approx(1.0));
  CHECK(p.multiplicity == 1);
  CHECK(p.vector[0] > 0);
  CHECK(p.vector[0] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(p.vector[1] == doctest::Approx(1 / std::sqrt(2.0)));
}

TEST_CASE("1x1 matrix") {
  const auto p = eigen_min(CorrelationMatrix({4}));
  CHECK(p.value == 4.0);
  CHECK(p.vector == std::vector<double>{1.0});
}

TEST_CASE("reconstruction, orthonormality and agreement with a reference solver") {
  std::mt19937 rng(99);
  for (int t = 0; t < 200; ++t) {
    const int L = 1 + t % 8;
    const int M = t % 2 ? 4 : 2;
    const Matrix A = random_event_matrix(rng, M, 10, L);
    const auto sp = eigen_all(A);
    const double scale = std::max(1.0, A.frobenius_norm());

    std::vector<long long> row(static_cast<std::size_t>(L));
    for (int j = 0; j < L; ++j) row[static_cast<std::size_t>(j)] = static_cast<long long>(A(0, static_cast<std::size_t>(j)));
    const auto ref = oracle::toeplitz_eigenvalues(row);
    for (int k = 0; k < L; ++k) CHECK(std::abs(sp.values[static_cast<std::size_t>(k)] - ref[static_cast<std::size_t>(k)]) <= 1e-10 * scale);

    const auto n = static_cast<std::size_t>(L);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += sp.vectors[a][i] * sp.vectors[b][i];
        CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) <= 1e-10);
      }
      for (std::size_t i = 0; i < n; ++i) {
        double av = 0.0;
        for (std::size_t j = 0; j < n; ++j) av += A(i, j) * sp.vectors[a][j];
        CHECK(std::abs(av - sp.values[a] * sp.vectors[a][i]) <= 1e-10 * scale);
      }
    }
  }
}

TEST_CASE("Cauchy interlacing on random correlation matrices") {
  std::mt19937 rng(5);
  for (int t = 0; t < 300; ++t) {
    const int L = 2 + t % 7;
    const auto r = interlacing_check(random_event_matrix(rng, t % 2 ? 4 : 2, 10, L));
    CHECK(r.ok);
    CHECK(r.container.size() == static_cast<std::size_t>(L));
    CHECK(r.submatrix.size() == static_cast<std::size_t>(L - 1));
  }
}

TEST_CASE("bordering never raises the minimum eigenvalue") {
  std::mt19937 rng(17);
  for (int t = 0; t < 200; ++t) {
    const Matrix A = random_event_matrix(rng, 2, 10, 8);
    double prev = eigen_min(A.leading(1)).value;
    for (std::size_t k = 2; k <= 8; ++k) {
      const double cur = eigen_min(A.leading(k)).value;
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(eigen_all(Matrix(2, {1, 2, 3, 4})), InputError);
  CHECK_THROWS_AS(eigen_all(Matrix(0)), InputError);
  CHECK_THROWS_AS(eigen_all(Matrix(2, {1, std::nan(""), std::nan(""), 1})), InputError);
  CHECK_THROWS_AS(interlacing_check(Matrix::identity(1)), InputError);
}
