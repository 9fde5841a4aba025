#include <doctest.h>

#include <cmath>
#include <random>

#include "divlab/fischer.hpp"

using namespace divlab;

namespace {

HomogeneousPoly random_poly(int d, int deg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  HomogeneousPoly p{d, deg, {}};
  for (const auto& q : enumerate_multi_indices(d, deg)) {
    double re = u(rng), im = u(rng);
    while (re * re + im * im > 1.0) {
      re = u(rng);
      im = u(rng);
    }
    p.add_term(q, Complex{re, im});
  }
  return p;
}

}  // namespace

TEST_CASE("inner product weights") {
  auto x1x2 = HomogeneousPoly::monomial(2, {1, 1}, Complex{1.0, 0.0});
  CHECK(mf_inner(x1x2, x1x2).real() == doctest::Approx(0.5));

  auto x1sq = HomogeneousPoly::monomial(2, {2, 0}, Complex{1.0, 0.0});
  auto x2sq = HomogeneousPoly::monomial(2, {0, 2}, Complex{1.0, 0.0});
  CHECK(std::abs(mf_inner(x1sq, x2sq)) == 0.0);
  CHECK(mf_inner(x1sq, x1sq).real() == doctest::Approx(1.0));

  CHECK_THROWS_AS((void)mf_inner(x1sq, HomogeneousPoly::monomial(2, {1, 0}, 1.0)),
                  DimensionError);
}

TEST_CASE("unitary invariance basics") {
  auto x1sq = HomogeneousPoly::monomial(2, {2, 0}, Complex{1.0, 0.0});
  auto id = ComplexMatrix::identity(2);
  auto same = apply_unitary(id, x1sq);
  CHECK(std::abs(same.coeff({2, 0}) - Complex{1.0, 0.0}) == 0.0);

  ComplexMatrix swap{2, 2, {Complex{}, Complex{1.0, 0.0}, Complex{1.0, 0.0}, Complex{}}};
  auto swapped = apply_unitary(swap, x1sq);
  CHECK(std::abs(swapped.coeff({0, 2}) - Complex{1.0, 0.0}) == 0.0);
  CHECK(mf_norm(swapped) == doctest::Approx(mf_norm(x1sq)));

  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix rot{2, 2, {Complex{s, 0}, Complex{s, 0}, Complex{-s, 0}, Complex{s, 0}}};
  auto img = apply_unitary(rot, x1sq);
  CHECK(std::abs(mf_norm(img) - mf_norm(x1sq)) < 1e-12);

  ComplexMatrix bad{2, 2, {Complex{1.0, 0}, Complex{1.0, 0}, Complex{}, Complex{1.0, 0}}};
  CHECK_THROWS_AS((void)apply_unitary(bad, x1sq), DimensionError);
}

TEST_CASE("submultiplicativity over random pairs") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> dd(1, 3), kk(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = dd(rng);
    auto p = random_poly(d, kk(rng), rng);
    auto q = random_poly(d, kk(rng), rng);
    CHECK(mf_norm(poly_mul(p, q)) <= mf_norm(p) * mf_norm(q) + 1e-12);
  }
}

TEST_CASE("unitary invariance over random unitaries") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dd(1, 3), kk(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = dd(rng);
    auto t = random_unitary(d, rng);
    CHECK(unitarity_defect(t) < 1e-12);
    auto p = random_poly(d, kk(rng), rng);
    CHECK(std::abs(mf_norm(apply_unitary(t, p)) - mf_norm(p)) < 1e-10);
    // Component rotation of a vector with d entries.
    PolyVector g;
    for (int i = 0; i < d; ++i) g.entries.push_back(random_poly(d, 3, rng));
    CHECK(std::abs(mf_norm(apply_unitary_vec(t, g)) - mf_norm(g)) < 1e-10);
  }
}

TEST_CASE("derivative family") {
  DomainSpec dom{1.0, 1.0, 2, 3};
  auto e1 = FourierTaylorSeries::monomial(dom, 0, 1, Complex{1.0, 0.0});
  auto d0 = derivative_family({e1}, 0);
  CHECK(std::abs(d0[0].at(0, 1) - Complex{1.0, 0.0}) == 0.0);
  auto d1 = derivative_family({e1}, 1);
  CHECK(std::abs(d1[0].at(0, 1) - Complex{0.0, 1.0}) < 1e-15);
  auto e2 = FourierTaylorSeries::monomial(dom, 0, 2, Complex{1.0, 0.0});
  auto d2 = derivative_family({e2}, 2);
  CHECK(std::abs(d2[0].at(0, 2) - Complex{-2.0, 0.0}) < 1e-15);
}

TEST_CASE("derivative family satisfies the strip Cauchy bound") {
  // coeff norm of (1/p!) d^p f at delta' <= coeff norm of f at delta
  // divided by (delta - delta')^p.
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  DomainSpec dom{0.9, 1.0, 1, 6};
  const double delta = 0.9, dprime = 0.4;
  for (int trial = 0; trial < 50; ++trial) {
    FourierTaylorSeries f(dom, 0);
    for (int j = -6; j <= 6; ++j) f.set(0, j, Complex{u(rng), u(rng)});
    for (int p = 1; p <= 4; ++p) {
      auto fam = derivative_family({f}, p);
      const double lhs = coeff_sup_bound(fam[0], dprime, 1.0);
      const double rhs = coeff_sup_bound(f, delta, 1.0) / std::pow(delta - dprime, p);
      CHECK(lhs <= rhs * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("gaussian identity, exact and sampled") {
  std::mt19937_64 rng(123);
  auto zero = HomogeneousPoly::zero(2, 2);
  auto z = gaussian_norm_check(zero, 1000, rng);
  CHECK(z.exact == 0.0);
  CHECK(z.estimate == 0.0);

  auto x1 = HomogeneousPoly::monomial(1, {1}, Complex{1.0, 0.0});
  auto c1 = gaussian_norm_check(x1, 200000, rng);
  CHECK(c1.exact == doctest::Approx(1.0));
  CHECK(c1.estimate == doctest::Approx(1.0).epsilon(0.05));

  auto x1x2 = HomogeneousPoly::monomial(2, {1, 1}, Complex{1.0, 0.0});
  auto c2 = gaussian_norm_check(x1x2, 1000000, rng);
  CHECK(c2.exact == doctest::Approx(0.5));
  CHECK(c2.estimate == doctest::Approx(0.5).epsilon(0.05));

  // Exact weights match the moment formula monomial by monomial.
  for (int d = 1; d <= 3; ++d) {
    for (const auto& q : enumerate_multi_indices(d, 4)) {
      auto mono = HomogeneousPoly::monomial(d, q, Complex{1.0, 0.0});
      const double want = multi_index_factorial(q) / multi_index_factorial({4});
      CHECK(mf_inner(mono, mono).real() == doctest::Approx(want));
    }
  }
}

TEST_CASE("symmetric power matrices stay unitary") {
  std::mt19937_64 rng(55);
  for (int d = 1; d <= 3; ++d) {
    for (int deg = 2; deg <= 5; ++deg) {
      auto t = random_unitary(d, rng);
      auto m = symmetric_power_matrix(t, deg);
      CHECK(unitarity_defect(m) < 1e-10);
    }
  }
}

TEST_CASE("polynomial json round trip is exact") {
  std::mt19937_64 rng(77);
  auto p = random_poly(3, 4, rng);
  p.coeffs[{1, 1, 2}] = Complex{1.0 / 3.0, -2e-17};
  auto q = poly_from_json(poly_to_json(p));
  CHECK(q.num_vars == p.num_vars);
  CHECK(q.degree == p.degree);
  REQUIRE(q.coeffs.size() == p.coeffs.size());
  for (const auto& [idx, c] : p.coeffs) CHECK(q.coeff(idx) == c);
  CHECK_THROWS_AS((void)poly_from_json("{\"d\":2,\"deg\":1,\"coeffs\":[[1,0.5,0.0]]}"),
                  DimensionError);
}
