#include <cmath>
#include <numbers>

#include "doctest.h"
#include "reference_values.hpp"
#include "sfpsd/oracle.hpp"
#include "sfpsd/psdlinalg.hpp"
#include "test_support.hpp"

using namespace sfpsd;

namespace {

constexpr double kPi = std::numbers::pi;

FactorSpec factor(KernelFamily family, std::vector<Point> points) {
  FactorSpec f;
  f.family = family;
  f.points = std::move(points);
  return f;
}

MatrixSpec single(FactorSpec f) {
  MatrixSpec s;
  s.factors.push_back(std::move(f));
  return s;
}

}  // namespace

TEST_CASE("gram_discrete examples") {
  DiscreteMeasure one;
  one.atoms = {{0.0, 1.0}};
  const Complex v[] = {0.1, -0.3, 0.7};
  const HermitianMatrix g = gram_discrete(one, v);
  for (const Complex& c : g.entries) CHECK(c == Complex(1.0));

  FactorSpec th = factor(KernelFamily::THETA3, {{0.0, {}}, {0.25, {}}});
  th.shared.q = 0.1;
  DiscreteMeasure tm;
  for (int n = -10; n <= 10; ++n) tm.atoms.push_back({double(n), std::pow(0.1, n * n)});
  const Complex tv[] = {0.0, 0.25};
  CHECK(entrywise_compare(build_matrix(single(th)), gram_discrete(tm, tv), 1e-10).within);

  FactorSpec dn = factor(KernelFamily::DN, {{0.0, {}}, {0.1, {}}});
  dn.shared.q = 0.3;
  const Complex dv[] = {0.0, 0.1};
  CHECK(entrywise_compare(build_matrix(single(dn)), gram_discrete(dn_measure(0.3, 0.0), dv), 1e-9).within);
}

TEST_CASE("gram_discrete guards its truncation") {
  DiscreteMeasure m = theta3_measure(0.5, 0.0);
  const Complex wide[] = {Complex(0.0, 0.2)};
  CHECK_THROWS_AS(gram_discrete(m, wide), TailTooLarge);
  m.tail_bound = 1.0;
  const Complex real[] = {0.1};
  CHECK_THROWS_AS(gram_discrete(m, real), TailTooLarge);
  CHECK_THROWS_AS(dn_measure(0.5, 0.2), TailTooLarge);
}

TEST_CASE("gram_quadrature examples") {
  const FactorSpec g = factor(KernelFamily::GAMMA, {{0.5, {}}});
  CHECK(std::abs(gram_quadrature(weighted_line_for(g), g)(0, 0) - 1.0) < 1e-12);

  const FactorSpec zt = factor(KernelFamily::ZETA_TAIL, {{1.0, {}}, {1.5, {}}});
  CHECK(entrywise_compare(build_matrix(single(zt)), gram_quadrature(weighted_line_for(zt), zt), 1e-7).within);

  const FactorSpec be = factor(KernelFamily::BETA, {{1.0, 1.0}, {2.0, 3.0}});
  const HermitianMatrix bq = gram_quadrature(weighted_line_for(be), be);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t k = 0; k < 2; ++k) {
      const Complex p = be.points[j].first + be.points[k].first;
      const Complex q = be.points[j].second + be.points[k].second;
      CHECK(testing::rel_err(bq(j, k), beta(p, q).value) < 1e-8);
    }
  }
  CHECK_THROWS_AS(weighted_line_for(factor(KernelFamily::RIEMANN_XI, {{0.0, {}}})), SpecError);
}

TEST_CASE("kernel and oracle agree on random specs") {
  for (KernelFamily f : kAllFamilies) {
    if (!has_oracle(f)) {
      CHECK_FALSE(oracle_matrix(random_spec(f, 3, 1)).has_value());
      continue;
    }
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const MatrixSpec s = random_spec(f, is_discrete_oracle(f) ? 6 : 4, seed);
      const CompareReport c = entrywise_compare(build_matrix(s), *oracle_matrix(s), oracle_tolerance(f));
      INFO(s.label << " deviation " << c.max_deviation);
      CHECK(c.within);
    }
  }
}

TEST_CASE("oracle matrices pass the PSD verdict") {
  for (KernelFamily f : kAllFamilies) {
    if (!has_oracle(f)) continue;
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
      const MatrixSpec s = random_spec(f, 5, seed);
      INFO(s.label);
      CHECK(psd_verdict(*oracle_matrix(s)).is_psd);
    }
  }
}

TEST_CASE("meixner-pollaczek identity") {
  for (const refdata::Case& c : refdata::kMeixnerPollaczekRhs) {
    const IdentityCheck r = verify_mp_identity(c.p1, c.p2);
    CHECK(std::abs(r.rhs - c.value.real()) < 1e-13 * c.value.real());
    CHECK(r.rel_deviation < 1e-8);
  }
  CHECK(verify_mp_identity(1.0, kPi / 2.0).rhs == doctest::Approx(0.25).epsilon(1e-15));
  CHECK_THROWS_AS(verify_mp_identity(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(verify_mp_identity(1.0, 4.0), DomainError);
}

TEST_CASE("askey-wilson identity") {
  for (const refdata::AwCase& c : refdata::kAskeyWilson) {
    const std::array<double, 4> al = {c.alpha[0], c.alpha[1], c.alpha[2], c.alpha[3]};
    const IdentityCheck r = verify_aw_integral(c.q, al);
    CHECK(std::abs(r.rhs - c.value) < 1e-12 * c.value);
    CHECK(std::abs(r.lhs - c.value) < 1e-10 * c.value);
  }
}

TEST_CASE("doubling quadrature depth leaves identities inside target_eps") {
  QuadControl base;
  QuadControl deep = base;
  deep.min_levels = base.min_levels + 1;
  deep.max_levels = base.max_levels + 1;
  const IdentityCheck a = verify_mp_identity(2.5, kPi / 3.0, base);
  const IdentityCheck b = verify_mp_identity(2.5, kPi / 3.0, deep);
  CHECK(std::abs(a.lhs - b.lhs) <= base.target_eps * std::abs(a.lhs));
  const IdentityCheck c = verify_aw_integral(0.3, {0.5, 0.7, 1.1, 1.3}, base);
  const IdentityCheck d = verify_aw_integral(0.3, {0.5, 0.7, 1.1, 1.3}, deep);
  CHECK(std::abs(c.lhs - d.lhs) <= base.target_eps * std::abs(c.lhs));
}

TEST_CASE("entrywise_compare") {
  const MatrixSpec s = random_spec(KernelFamily::THETA3, 4, 8);
  const HermitianMatrix a = build_matrix(s);
  CompareReport c = entrywise_compare(a, a, 0.0);
  CHECK(c.max_deviation == 0.0);
  CHECK(c.within);
  HermitianMatrix b = a;
  b(2, 1) *= 1.0 + 1e-6;
  c = entrywise_compare(a, b, 1e-10);
  CHECK_FALSE(c.within);
  CHECK(c.worst_j == 2);
  CHECK(c.worst_k == 1);
  CHECK_THROWS_AS(entrywise_compare(a, HermitianMatrix::identity(2), 1.0), DimensionMismatch);
}
