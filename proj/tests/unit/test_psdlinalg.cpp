#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "sfpsd/psdlinalg.hpp"
#include "test_support.hpp"

#ifdef SFPSD_HAVE_EIGEN
#include <Eigen/Eigenvalues>
#endif

using namespace sfpsd;

namespace {

const Complex I(0.0, 1.0);

HermitianMatrix mat(const std::vector<std::vector<Complex>>& rows) {
  return HermitianMatrix::from_rows(rows);
}

double residual(const HermitianMatrix& m, const EigenResult& e) {
  const std::size_t n = m.n;
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex mv = 0.0;
      for (std::size_t k = 0; k < n; ++k) mv += m(j, k) * e.eigenvectors[i * n + k];
      r += std::norm(mv - e.eigenvalues[i] * e.eigenvectors[i * n + j]);
    }
  }
  return std::sqrt(r);
}

}  // namespace

TEST_CASE("eigenvalue examples") {
  auto e = eigenvalues_hermitian(HermitianMatrix::identity(2)).eigenvalues;
  CHECK(e == std::vector<double>{1.0, 1.0});
  e = eigenvalues_hermitian(mat({{2, 1}, {1, 2}})).eigenvalues;
  CHECK(std::abs(e[0] - 1.0) < 1e-14);
  CHECK(std::abs(e[1] - 3.0) < 1e-14);
  e = eigenvalues_hermitian(mat({{1, I}, {-I, 1}})).eigenvalues;
  CHECK(std::abs(e[0]) < 1e-14);
  CHECK(std::abs(e[1] - 2.0) < 1e-14);
}

TEST_CASE("eigen solver rejects non-Hermitian input") {
  CHECK_THROWS_AS(eigenvalues_hermitian(mat({{1, 2}, {0, 1}})), NonHermitian);
  CHECK_THROWS_AS(eigenvalues_hermitian(mat({{Complex(1, 1), 0}, {0, 1}})), NonHermitian);
}

TEST_CASE("eigen backward error, trace and determinant") {
  std::mt19937_64 rng(17);
  for (std::size_t n = 1; n <= 16; ++n) {
    const HermitianMatrix m = testing::random_hermitian(rng, n);
    const EigenResult e = eigenvalues_hermitian(m, true);
    CHECK(residual(m, e) <= 1e-9 * frobenius_norm(m));
    double tr = 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      tr += m(i, i).real();
      sum += e.eigenvalues[i];
    }
    CHECK(std::abs(tr - sum) <= 1e-10 * std::max(1.0, frobenius_norm(m)));
    CHECK(std::is_sorted(e.eigenvalues.begin(), e.eigenvalues.end()));
  }
  for (std::size_t n = 1; n <= 8; ++n) {
    const HermitianMatrix g = testing::random_gram(rng, n, n + 2);
    const auto ev = eigenvalues_hermitian(g).eigenvalues;
    double prod = 1.0;
    for (double v : ev) prod *= v;
    CHECK(std::abs(prod - hermitian_determinant(g)) <= 1e-8 * std::abs(prod));
  }
}

#ifdef SFPSD_HAVE_EIGEN
TEST_CASE("eigenvalues agree with Eigen's self-adjoint solver") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 12;
    const HermitianMatrix m = testing::random_hermitian(rng, n);
    Eigen::MatrixXcd em(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) em(j, k) = m(j, k);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em, Eigen::EigenvaluesOnly);
    const auto ours = eigenvalues_hermitian(m).eigenvalues;
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ours[i] - solver.eigenvalues()(i)) < 1e-12);
  }
}
#endif

TEST_CASE("pivoted cholesky examples") {
  auto c = pivoted_cholesky(HermitianMatrix::identity(3), 1e-8);
  CHECK(c.rank == 3);
  CHECK(c.success);
  c = pivoted_cholesky(mat({{1, 1}, {1, 1}}), 1e-8);
  CHECK(c.rank == 1);
  CHECK(c.success);
  c = pivoted_cholesky(mat({{1, 2}, {2, 1}}), 1e-8);
  CHECK_FALSE(c.success);
  // Zero diagonal with nonzero off-diagonal is indefinite.
  CHECK_FALSE(pivoted_cholesky(mat({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}), 1e-8).success);
}

TEST_CASE("psd verdict examples") {
  auto v = psd_verdict(mat({{0, 0}, {0, 1}}));
  CHECK(v.is_psd);
  CHECK(v.min_eig == doctest::Approx(0.0));
  CHECK_FALSE(psd_verdict(mat({{1, 2}, {2, 1}})).is_psd);
  HermitianMatrix ones(4);
  for (Complex& c : ones.entries) c = 1.0;
  v = psd_verdict(ones);
  CHECK(v.is_psd);
  CHECK(v.cholesky_rank == 1);
  CHECK(v.tolerance_used == doctest::Approx(1e-8 * 4.0));
}

TEST_CASE("cholesky success implies eigenvalue bound") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + t % 8;
    HermitianMatrix m = (t % 2 == 0) ? testing::random_gram(rng, n, 1 + t % 5) : testing::random_hermitian(rng, n);
    const PsdVerdict v = psd_verdict(m);
    if (v.cholesky_success) CHECK(v.min_eig >= -2.0 * v.tolerance_used);
  }
}

TEST_CASE("gram matrices are PSD") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + t % 8;
    CHECK(psd_verdict(testing::random_gram(rng, n, 1 + (t / 8) % 10)).is_psd);
  }
}

TEST_CASE("schur product") {
  std::mt19937_64 rng(37);
  const HermitianMatrix a = testing::random_gram(rng, 4, 4);
  const HermitianMatrix b = testing::random_gram(rng, 4, 2);
  const HermitianMatrix c = testing::random_gram(rng, 4, 3);
  HermitianMatrix ones(4);
  for (Complex& x : ones.entries) x = 1.0;
  CHECK(schur_product(a, ones).entries == a.entries);
  CHECK(schur_product(a, b).entries == schur_product(b, a).entries);
  const auto ab_c = schur_product(schur_product(a, b), c).entries;
  const auto a_bc = schur_product(a, schur_product(b, c)).entries;
  for (std::size_t i = 0; i < ab_c.size(); ++i) CHECK(std::abs(ab_c[i] - a_bc[i]) <= 1e-15 * std::abs(ab_c[i]));
  const HermitianMatrix d = schur_product(mat({{2, 0}, {0, 3}}), mat({{5, 0}, {0, 7}}));
  CHECK(d(0, 0) == Complex(10.0));
  CHECK(d(1, 1) == Complex(21.0));
  CHECK(psd_verdict(schur_product(a, b)).is_psd);
  CHECK_THROWS_AS(schur_product(a, HermitianMatrix::identity(3)), DimensionMismatch);
}

TEST_CASE("determinants and the hadamard inequality") {
  CHECK(hermitian_determinant(mat({{1, 2}, {2, 1}})) == doctest::Approx(-3.0));
  CHECK(hermitian_determinant(mat({{0, 1}, {1, 0}})) == doctest::Approx(-1.0));
  auto h = hadamard_det_check(HermitianMatrix::identity(3), HermitianMatrix::identity(3), 1e-10);
  CHECK(h.holds);
  CHECK(h.det_product == doctest::Approx(1.0));
  h = hadamard_det_check(mat({{2, 1}, {1, 2}}), mat({{3, 1}, {1, 3}}), 1e-10);
  CHECK(h.holds);
  CHECK(h.det_product == doctest::Approx(35.0));
  CHECK(h.det_a * h.det_b == doctest::Approx(24.0));
}

TEST_CASE("leading minors") {
  CHECK(leading_minors(HermitianMatrix::identity(3)) == std::vector<double>{1.0, 1.0, 1.0});
  const auto m = leading_minors(mat({{1, 1}, {1, 1}}));
  CHECK(m[0] == doctest::Approx(1.0));
  CHECK(std::abs(m[1]) < 1e-15);
  // Non-PSD inputs usually expose a negative minor.
  std::mt19937_64 rng(41);
  int failing = 0;
  int flagged = 0;
  for (int t = 0; t < 400; ++t) {
    const HermitianMatrix x = testing::random_hermitian(rng, 2 + t % 6);
    if (psd_verdict(x).is_psd) continue;
    ++failing;
    const auto minors = leading_minors(x);
    if (std::any_of(minors.begin(), minors.end(), [](double d) { return d < 0.0; })) ++flagged;
  }
  REQUIRE(failing > 0);
  MESSAGE("negative leading minor on " << flagged << " of " << failing << " non-PSD inputs");
}
