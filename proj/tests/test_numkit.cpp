#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstring>
#include <random>

#include "numkit.hpp"
#include "oracles.hpp"

using namespace lhac;

TEST_CASE("dot basics") {
  DenseVector a{1.0, 1.0};
  DenseVector b{1.0, 1.0};
  CHECK(dot(a, b) == 2.0);

  DenseVector z{0.0, 0.0};
  DenseVector c{3.0, 4.0};
  CHECK(dot(z, c) == 0.0);

  CHECK_THROWS_AS(dot(a, std::span<const double>(c.data(), 1)), std::invalid_argument);
}

TEST_CASE("dot agrees with long-double reference") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    const auto a = oracles::random_vector(rng, 100);
    const auto b = oracles::random_vector(rng, 100);
    const double got = dot(a, b);
    const double want = oracles::naive_dot(a, b);
    CHECK(std::fabs(got - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
  }
}

TEST_CASE("dot is bit-deterministic") {
  std::mt19937_64 rng(8);
  const auto a = oracles::random_vector(rng, 257);
  const auto b = oracles::random_vector(rng, 257);
  const double first = dot(a, b);
  const double second = dot(a, b);
  CHECK(std::memcmp(&first, &second, sizeof first) == 0);
}

TEST_CASE("small_solve identity and diagonal") {
  SmallSquareMatrix eye = SmallSquareMatrix::identity(2);
  std::vector<double> b{5.0, -3.0, 2.0, 0.5};  // 2 x 2 rhs
  auto x = small_solve(eye, b, 2);
  REQUIRE(x.has_value());
  for (std::size_t i = 0; i < b.size(); ++i) CHECK((*x)[i] == b[i]);

  SmallSquareMatrix d(2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  std::vector<double> rhs{2.0, 4.0};
  auto y = small_solve(d, rhs, 1);
  REQUIRE(y.has_value());
  CHECK((*y)[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((*y)[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("small_solve flags singular systems") {
  SmallSquareMatrix a(2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 2.0;
  a(1, 1) = 4.0;
  std::vector<double> b{1.0, 2.0};
  CHECK_FALSE(small_solve(a, b, 1).has_value());
}

TEST_CASE("small_solve residuals on random instances") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int rep = 0; rep < 1000; ++rep) {
    const std::size_t n = 1 + rng() % 20;
    SmallSquareMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = normal(rng);
    // Diagonal boost keeps these instances comfortably nonsingular.
    for (std::size_t i = 0; i < n; ++i) a(i, i) += 3.0 + static_cast<double>(n) * 0.5;
    std::vector<double> b(n);
    for (auto& v : b) v = normal(rng);

    auto x = small_solve(a, b, 1);
    REQUIRE(x.has_value());
    double bmax = 0.0, rmax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double ax = 0.0;
      for (std::size_t j = 0; j < n; ++j) ax += a(i, j) * (*x)[j];
      rmax = std::max(rmax, std::fabs(ax - b[i]));
      bmax = std::max(bmax, std::fabs(b[i]));
    }
    CHECK(rmax <= 1e-8 * std::max(1.0, bmax));
  }
}

TEST_CASE("cholesky identity and a 2x2 factor") {
  auto eye = cholesky(SymmetricDense::identity(3));
  REQUIRE(eye.has_value());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(eye->at(i, j) == (i == j ? 1.0 : 0.0));

  SymmetricDense a(2);
  a.set(0, 0, 4.0);
  a.set(0, 1, 2.0);
  a.set(1, 1, 3.0);
  auto l = cholesky(a);
  REQUIRE(l.has_value());
  CHECK(l->at(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(l->at(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(l->at(1, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  // L L^T must reproduce A.
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < 2; ++k) acc += l->at(i, k) * l->at(j, k);
      CHECK(std::fabs(acc - a(i, j)) <= 1e-9 * 4.0);
    }
}

TEST_CASE("cholesky rejects indefinite input") {
  SymmetricDense a(2);
  a.set(0, 0, 1.0);
  a.set(0, 1, 2.0);
  a.set(1, 1, 1.0);
  CHECK_FALSE(cholesky(a).has_value());
}

TEST_CASE("cholesky recovers a planted factor") {
  std::mt19937_64 rng(33);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> diag(0.5, 2.0);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + rng() % 12;
    LowerTriangular planted;
    planted.order = n;
    planted.data.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) planted.at(i, j) = 0.5 * normal(rng);
      planted.at(i, i) = diag(rng);
    }
    SymmetricDense a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k <= std::min(i, j); ++k)
          acc += planted.at(i, k) * planted.at(j, k);
        a.set(i, j, acc);
      }
    auto l = cholesky(a);
    REQUIRE(l.has_value());
    double amax = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) amax = std::max(amax, std::fabs(a(i, j)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j)
        CHECK(std::fabs(l->at(i, j) - planted.at(i, j)) <= 1e-8 * std::max(1.0, amax));
  }
}

TEST_CASE("logdet_and_inverse basics") {
  auto id = logdet_and_inverse(SymmetricDense::identity(3));
  REQUIRE(id.has_value());
  CHECK(id->first == doctest::Approx(0.0).epsilon(1e-15));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(id->second(i, j) == (i == j ? 1.0 : 0.0));

  SymmetricDense d(2);
  d.set(0, 0, 2.0);
  d.set(1, 1, 2.0);
  auto got = logdet_and_inverse(d);
  REQUIRE(got.has_value());
  CHECK(got->first == doctest::Approx(std::log(4.0)).epsilon(1e-14));
  CHECK(got->second(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(got->second(1, 1) == doctest::Approx(0.5).epsilon(1e-14));

  SymmetricDense indef(2);
  indef.set(0, 0, 1.0);
  indef.set(1, 1, -1.0);
  CHECK_FALSE(logdet_and_inverse(indef).has_value());
}

TEST_CASE("logdet_and_inverse on random SPD matrices") {
  std::mt19937_64 rng(44);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 8;
    std::vector<double> g(n * n);
    for (auto& v : g) v = normal(rng);
    SymmetricDense a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        double acc = (i == j) ? 0.5 : 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += g[i * n + k] * g[j * n + k] / n;
        a.set(i, j, acc);
      }
    auto got = logdet_and_inverse(a);
    REQUIRE(got.has_value());
    // A * inv = I
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += a(i, k) * got->second(k, j);
        CHECK(std::fabs(acc - (i == j ? 1.0 : 0.0)) <= 1e-8);
      }
    // log det against the eigenvalue sum
    const auto eig = oracles::jacobi_eigenvalues(a);
    double logdet = 0.0;
    for (double e : eig) logdet += std::log(e);
    CHECK(got->first == doctest::Approx(logdet).epsilon(1e-9));
    // symmetric by construction, exact equality
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) CHECK(got->second(i, j) == got->second(j, i));
  }
}

TEST_CASE("csr validation and products") {
  // [[1, 0, 2], [0, 3, 0]]
  CsrMatrix x(2, 3, {0, 2, 3}, {0, 2, 1}, {1.0, 2.0, 3.0});
  DenseVector v{1.0, 1.0, 1.0};
  DenseVector y(2);
  x.multiply(v, y);
  CHECK(y[0] == 3.0);
  CHECK(y[1] == 3.0);

  DenseVector u{1.0, 2.0};
  DenseVector back(3, 0.0);
  x.transpose_multiply_add(u, back);
  CHECK(back[0] == 1.0);
  CHECK(back[1] == 6.0);
  CHECK(back[2] == 2.0);

  CHECK_THROWS_AS((CsrMatrix(2, 3, {0, 2, 2}, {0, 2, 1}, {1.0, 2.0, 3.0})),
                  std::invalid_argument);
  CHECK_THROWS_AS((CsrMatrix(1, 3, {0, 2}, {2, 1}, {1.0, 2.0})), std::invalid_argument);
  CHECK_THROWS_AS((CsrMatrix(1, 3, {0, 2}, {1, 3}, {1.0, 2.0})), std::invalid_argument);
}

TEST_CASE("finite guard helper") {
  DenseVector good{1.0, -2.0, 0.0};
  CHECK(all_finite(good));
  DenseVector bad{1.0, std::nan(""), 0.0};
  CHECK_FALSE(all_finite(bad));
  DenseVector inf{1.0, std::numeric_limits<double>::infinity()};
  CHECK_FALSE(all_finite(inf));
}
