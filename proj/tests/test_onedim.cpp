#include <doctest.h>

#include <cmath>
#include <random>

#include "divlab/onedim.hpp"

using namespace divlab;

namespace {
Multiplier golden() { return Multiplier::rotation_from_cf(std::vector<std::uint64_t>(40, 1)); }
}

TEST_CASE("trivial and quadratic germs") {
  Germ1D id;
  id.multiplier = golden();
  id.order = 8;
  auto psi = schroeder_linearize(id, 8);
  for (int n = 2; n <= 8; ++n) CHECK(std::abs(psi.coeff(n)) == 0.0);

  auto quad = Germ1D::quadratic(golden(), 8);
  auto psi2 = schroeder_linearize(quad, 8);
  const Complex lambda = golden().value();
  const Complex want = Complex{1.0, 0.0} / (lambda * lambda - lambda);
  CHECK(std::abs(psi2.coeff(2) - want) < 1e-14);
}

TEST_CASE("resonance is reported with its order") {
  auto third = Multiplier::root_of_unity(1, 3);
  auto quad = Germ1D::quadratic(third, 8);
  try {
    (void)schroeder_linearize(quad, 8);
    FAIL("expected resonance");
  } catch (const ResonanceError& e) {
    CHECK(e.taylor_level() == 4);  // lambda^3 = 1
  }
}

TEST_CASE("functional equation residual vanishes") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int trial = 0; trial < 20; ++trial) {
    Germ1D g;
    g.multiplier = golden();
    g.order = 16;
    for (int k = 0; k < 4; ++k) g.tail.push_back(Complex{u(rng), u(rng)});
    auto psi = schroeder_linearize(g, 16);
    double scale = 1.0;
    for (const Complex& c : psi.coeffs) scale = std::max(scale, std::abs(c));
    CHECK(schroeder_residual(g, psi, 16) < 1e-9 * scale);
  }
}

TEST_CASE("order doubling matches order-by-order") {
  Germ1D trivial;
  trivial.multiplier = golden();
  trivial.order = 8;
  auto id_psi = newton_linearize_1d(trivial, 3);
  for (int n = 2; n <= 8; ++n) CHECK(std::abs(id_psi.coeff(n)) == 0.0);

  auto quad = Germ1D::quadratic(golden(), 32);
  auto direct = schroeder_linearize(quad, 32);
  auto doubled = newton_linearize_1d(quad, 5);
  CHECK(doubled.achieved_order == 32);
  for (int n = 2; n <= 32; ++n) {
    const double ref = std::max(std::abs(direct.coeff(n)), 1e-30);
    CHECK(std::abs(doubled.coeff(n) - direct.coeff(n)) / ref < 1e-10);
  }

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    Germ1D g;
    g.multiplier = golden();
    g.order = 16;
    for (int k = 0; k < 3; ++k) g.tail.push_back(Complex{u(rng), u(rng)});
    auto a = schroeder_linearize(g, 16);
    auto b = newton_linearize_1d(g, 4);
    for (int n = 2; n <= 16; ++n) {
      const double ref = std::max({std::abs(a.coeff(n)), std::abs(b.coeff(n)), 1e-30});
      CHECK(std::abs(a.coeff(n) - b.coeff(n)) / ref < 1e-9);
    }
  }
}

TEST_CASE("radius estimates") {
  Linearizer1D id;
  id.coeffs = {Complex{}, Complex{1.0, 0.0}};
  id.coeffs.resize(20, Complex{});
  CHECK(std::isinf(radius_estimate(id, 2, 10)));

  Linearizer1D geo;
  geo.coeffs.assign(21, Complex{});
  geo.coeffs[1] = Complex{1.0, 0.0};
  for (int n = 2; n <= 20; ++n) geo.coeffs[n] = Complex{std::pow(2.0, n), 0.0};
  CHECK(radius_estimate(geo, 5, 20) == doctest::Approx(0.5));

  geo.coeffs[10] = Complex{std::nan(""), 0.0};
  CHECK(radius_estimate(geo, 5, 20) == 0.0);
}

TEST_CASE("divergence signal separates multipliers") {
  // Rotation number ~1e-8 from the fold: every early divisor is tiny, the
  // root test explodes far past 100 by order 150.
  auto liou = liouville_multiplier({10, 100, 10000, 100000000});
  auto quad_l = Germ1D::quadratic(liou, 150);
  auto psi_l = schroeder_linearize(quad_l, 150);
  double worst_l = 0.0;
  for (int n = 2; n <= psi_l.achieved_order; ++n) {
    const double m = std::abs(psi_l.coeff(n));
    if (m > 0.0 && std::isfinite(m)) {
      worst_l = std::max(worst_l, std::pow(m, 1.0 / n));
    }
  }
  CHECK(worst_l > 1e2);

  auto quad_g = Germ1D::quadratic(golden(), 200);
  auto psi_g = schroeder_linearize(quad_g, 200);
  double worst_g = 0.0;
  for (int n = 2; n <= 150; ++n) {
    worst_g = std::max(worst_g, std::pow(std::abs(psi_g.coeff(n)), 1.0 / n));
  }
  CHECK(worst_g < 1e2);
  // Window stability of the radius estimate for the tame multiplier.
  const double r1 = radius_estimate(psi_g, 50, 150);
  const double r2 = radius_estimate(psi_g, 100, 200);
  CHECK(std::abs(r1 - r2) / std::max(r1, r2) < 0.2);
}

TEST_CASE("golden fold within 1e-12 needs 40 entries") {
  auto m = liouville_multiplier(std::vector<std::uint64_t>(40, 1));
  const double gold = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(std::abs(m.rotation_number().convert_to<double>() - gold) < 1e-12);
  auto two = liouville_multiplier({2});
  CHECK(two.power_is_one_exact(2));
  auto liou = liouville_multiplier({10, 100, 10000, 100000000});
  double min_div = 1e9;
  for (int n = 1; n <= 200; ++n) {
    min_div = std::min(min_div, liou.power_distance_to_one(n));
  }
  CHECK(min_div < 1e-6);
}

TEST_CASE("torus equivalence for v-only germs") {
  const Complex omega{0.3, 1.0};
  auto rep0 = equivalence_with_arnold(golden(), omega, {}, 10);
  CHECK(rep0.max_relative_defect == 0.0);

  // a(v) = v^2
  auto rep1 = equivalence_with_arnold(golden(), omega, {Complex{1.0, 0.0}}, 30);
  CHECK(rep1.max_relative_defect < 1e-10);

  // a(v) = v^2 + 0.1 v^3
  auto rep2 = equivalence_with_arnold(golden(), omega,
                                      {Complex{1.0, 0.0}, Complex{0.1, 0.0}}, 20);
  CHECK(rep2.max_relative_defect < 1e-10);
}
