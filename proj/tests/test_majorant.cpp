#include <doctest.h>

#include <cmath>
#include <vector>

#include "divlab/majorant.hpp"

using namespace divlab;

#include "majorant_replay.hpp"

using divlab_testing::replay_defect_full;
using divlab_testing::replay_defect_vertical;


TEST_CASE("eta recursion closed forms") {
  // K = 1 everywhere keeps eta at 1.
  auto flat = eta_sequence(std::vector<double>(19, 1.0), 20);
  for (int m = 1; m <= 20; ++m) CHECK(flat.at(m) == 1.0);

  // K = 2: eta_m = 2^{m-1} exactly.
  auto twos = eta_sequence(std::vector<double>(19, 2.0), 20);
  for (int m = 1; m <= 20; ++m) CHECK(twos.at(m) == std::pow(2.0, m - 1));

  // K_m = m: factorial growth once eta dominates the slack branch.
  std::vector<double> lin;
  for (int m = 2; m <= 6; ++m) lin.push_back(m);
  auto fact = eta_sequence(lin, 6);
  CHECK(fact.at(2) == 2.0);
  CHECK(fact.at(3) == 6.0);
  CHECK(fact.at(4) == 24.0);
  CHECK(fact.at(5) == 120.0);
  CHECK(fact.at(6) == 720.0);
}

TEST_CASE("eta DP equals exhaustive partition enumeration") {
  std::vector<double> ks = {0.3, 2.5, 0.9, 4.0, 1.1, 0.2, 3.3, 2.2, 0.7, 1.9, 5.0};
  auto eta = eta_sequence(ks, 12);
  for (int m = 2; m <= 12; ++m) {
    std::vector<double> prefix(eta.eta.begin(), eta.eta.begin() + (m - 1));
    const double brute = eta_partition_max_bruteforce(prefix, m);
    CHECK(eta.at(m) == doctest::Approx(ks[m - 2] * brute).epsilon(1e-14));
  }
}

TEST_CASE("growth fitting") {
  auto flat = eta_sequence(std::vector<double>(19, 1.0), 20);
  auto f1 = growth_fit(flat);
  CHECK(f1.bounded);
  CHECK(f1.l == doctest::Approx(1.0));
  CHECK(f1.l0 <= 1.0 + 1e-9);

  auto twos = eta_sequence(std::vector<double>(19, 2.0), 20);
  auto f2 = growth_fit(twos);
  CHECK(f2.bounded);
  CHECK(f2.l == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(f2.l0 <= 1.0 + 1e-9);
  for (int m = 1; m <= 20; ++m) {
    CHECK(twos.at(m) <= f2.l0 * std::pow(f2.l, m) * (1.0 + 1e-12));
  }

  std::vector<double> lin;
  for (int m = 2; m <= 20; ++m) lin.push_back(m);
  auto fact = eta_sequence(lin, 20);
  auto f3 = growth_fit(fact);
  CHECK(!f3.bounded);
}

TEST_CASE("vertical majorant fixed point") {
  MajorantParams p;  // R = M = Mt = 1, n = d = 1
  auto a0 = solve_vertical_majorant(MajorantParams{0.0, 1.0, 1.0, 1, 1, 1.0}, 20);
  for (int m = 2; m <= 20; ++m) CHECK(a0.at(m) == 0.0);

  auto a = solve_vertical_majorant(p, 50);
  CHECK(a.at(2) == doctest::Approx(1.0));  // lowest term of (1-Rt)^{-1} - Rt - 1
  for (int m = 2; m <= 50; ++m) CHECK(a.at(m) >= -1e-15);
  CHECK(replay_defect_vertical(p, a, 50) < 1e-9);

  const double r30 = [&] {
    auto t = solve_vertical_majorant(p, 30);
    return radius_lower_bound(t);
  }();
  const double r50 = radius_lower_bound(a);
  CHECK(r30 > 0.0);
  CHECK(std::abs(r30 - r50) / std::max(r30, r50) < 0.10);
}

TEST_CASE("full majorant fixed point") {
  auto a0 = solve_full_majorant(MajorantParams{0.0, 1.0, 1.0, 1, 1, 0.0}, 20);
  for (int m = 2; m <= 20; ++m) CHECK(a0.at(m) == 0.0);

  // C0 = 0, order 2: A_2 = Mt R^2 d(d+1)/2.
  for (int d = 1; d <= 3; ++d) {
    MajorantParams p{0.7, 1.3, 1.9, 2, d, 0.0};
    auto a = solve_full_majorant(p, 10);
    CHECK(a.at(2) == doctest::Approx(1.9 * 0.49 * d * (d + 1) / 2.0));
  }

  MajorantParams defaults;  // includes C0 = 1
  auto a = solve_full_majorant(defaults, 50);
  for (int m = 2; m <= 50; ++m) CHECK(a.at(m) >= -1e-15);
  CHECK(replay_defect_full(defaults, a, 50) < 1e-9);
}

TEST_CASE("majorant coefficients are monotone in the parameters") {
  const MajorantParams base{0.5, 2.0, 1.0, 2, 2, 1.0};
  auto a_base = solve_full_majorant(base, 20);
  for (double dr : {0.0, 0.25, 0.5}) {
    for (double dmt : {0.0, 0.5, 1.0}) {
      MajorantParams p = base;
      p.r += dr;
      p.m_tilde += dmt;
      auto a = solve_full_majorant(p, 20);
      for (int m = 2; m <= 20; ++m) CHECK(a.at(m) >= a_base.at(m) - 1e-12);
      MajorantParams q = p;
      q.m = base.m / 2.0;  // smaller separation can only grow the majorant
      auto aq = solve_full_majorant(q, 20);
      for (int m = 2; m <= 20; ++m) CHECK(aq.at(m) >= a.at(m) - 1e-12);
    }
  }
}

TEST_CASE("radius lower bound on explicit data") {
  MajorantSeries a;
  a.a.assign(21, 0.0);
  CHECK(std::isinf(radius_lower_bound(a)));
  for (int m = 2; m <= 20; ++m) a.a[m] = std::pow(0.25, -m);
  CHECK(radius_lower_bound(a) == doctest::Approx(0.25));
}

TEST_CASE("domination check") {
  auto eta = eta_sequence(std::vector<double>(9, 2.0), 10);
  MajorantSeries a;
  a.a.assign(11, 0.0);
  for (int m = 2; m <= 10; ++m) a.a[m] = 0.5;

  std::vector<double> zero(9, 0.0);
  CHECK(domination_check(zero, eta, a).ok);

  std::vector<double> boundary;
  for (int m = 2; m <= 10; ++m) boundary.push_back(eta.at(m) * a.at(m));
  CHECK(domination_check(boundary, eta, a).ok);

  boundary[3] *= 1.0 + 1e-9;
  auto v = domination_check(boundary, eta, a);
  CHECK(!v.ok);
  CHECK(v.first_violation == 5);
}
