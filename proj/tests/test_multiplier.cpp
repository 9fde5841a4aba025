#include <doctest.h>

#include <cmath>
#include <complex>

#include "divlab/multiplier.hpp"

using namespace divlab;

TEST_CASE("root of unity powers are exact") {
  auto half = Multiplier::root_of_unity(1, 2);  // lambda = -1
  CHECK(half.power_distance_to_one(2) == 0.0);
  CHECK(half.power_is_one_exact(2));
  CHECK(half.power_distance_to_one(1) == doctest::Approx(2.0));

  auto quarter = Multiplier::root_of_unity(1, 4);  // lambda = i
  CHECK(quarter.power_distance_to_one(2) == doctest::Approx(2.0));  // |-1 - 1|
  CHECK(quarter.power_is_one_exact(4));
  CHECK(quarter.root_of_unity_order(10).value() == 4);
}

TEST_CASE("continued fraction fold reaches the golden mean") {
  std::vector<std::uint64_t> ones(40, 1);
  auto m = Multiplier::rotation_from_cf(ones);
  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(std::abs(m.rotation_number().convert_to<double>() - golden) < 1e-12);
}

TEST_CASE("entry order matters for the fold") {
  // The fold makes the last entry the outermost quotient: a trailing large
  // entry puts the rotation number next to 0.
  auto tiny = Multiplier::rotation_from_cf({10, 100, 10000, 100000000});
  CHECK(tiny.rotation_number().convert_to<double>() < 2e-8);
  auto other = Multiplier::rotation_from_cf({100000000, 10000, 100, 10});
  CHECK(other.rotation_number().convert_to<double>() ==
        doctest::Approx(0.0999001).epsilon(1e-6));
}

TEST_CASE("reduced-argument powers agree with naive powering") {
  auto m = Multiplier::rotation_from_cf(std::vector<std::uint64_t>(40, 1));
  std::complex<double> naive{1.0, 0.0};
  const std::complex<double> lambda = m.value();
  for (int n = 1; n <= 1000; ++n) {
    naive *= lambda;
    CHECK(std::abs(m.power(n) - naive) < 1e-9);
    CHECK(std::abs(m.power_distance_to_one(n) - std::abs(naive - 1.0)) < 1e-9);
  }
}

TEST_CASE("explicit multipliers use polar reduction") {
  auto m = Multiplier::explicit_value(Complex{0.0, 1.0});
  CHECK(m.power_distance_to_one(2) == doctest::Approx(2.0));
  CHECK(std::abs(m.power(4) - Complex{1.0, 0.0}) < 1e-12);
  CHECK(!m.power_is_one_exact(4));  // no exact arithmetic for this kind
}

TEST_CASE("divisor formula") {
  auto half = Multiplier::root_of_unity(1, 2);
  CHECK(divisor(half, Complex{0.0, 1.0}, 2, 0) == 0.0);
  auto quarter = Multiplier::root_of_unity(1, 4);
  CHECK(divisor(quarter, Complex{0.0, 1.0}, 2, 0) == doctest::Approx(2.0));

  // |lambda e^{2 i omega} - 1| with omega = i/2: modulus factor e^{-1}.
  auto rot = Multiplier::rotation_from_decimal("0.38");
  const Complex lambda = rot.value();
  const Complex expect = lambda * std::exp(Complex{-1.0, 0.0}) - 1.0;
  CHECK(divisor(rot, Complex{0.0, 0.5}, 1, 1) == doctest::Approx(std::abs(expect)));

  // Negative modes blow up off the unit circle instead of cancelling.
  CHECK(divisor(rot, Complex{0.3, 1.0}, 1, -5) > std::exp(10.0) - 2.0);
}

TEST_CASE("spec strings parse") {
  auto golden = Multiplier::parse("cf:[0;1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1]");
  CHECK(golden.kind() == Multiplier::Kind::Rotation);
  auto ru = Multiplier::parse("ru:1/3");
  CHECK(ru.power_is_one_exact(3));
  auto dec = Multiplier::parse("dec:0.25");
  CHECK(dec.power_is_one_exact(4));
  auto ex = Multiplier::parse("exp:0.6,0.8");
  CHECK(std::abs(ex.value() - Complex{0.6, 0.8}) == 0.0);
  CHECK_THROWS_AS(Multiplier::parse("nope:1"), ConfigError);
  CHECK_THROWS_AS(Multiplier::parse("cf:[1;2]"), ConfigError);
}
