#pragma once

// Unit-modulus multipliers with high-precision rotation numbers. Rotation
// numbers are exact big-integer rationals (continued-fraction truncations and
// decimal literals are rational), so n*alpha mod 1 is computed exactly and
// only rounded to double at the very end; double-precision powering would
// destroy small divisors past n ~ 1e4.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "divlab/errors.hpp"

namespace divlab {

using Complex = std::complex<double>;
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

class Multiplier {
 public:
  enum class Kind { RootOfUnity, Rotation, Explicit };

  Multiplier() = default;  // explicit(1)

  static Multiplier root_of_unity(std::int64_t p, std::int64_t q);
  static Multiplier rotation(const BigRational& alpha);
  // Entries folded as x <- 1/(e + x) in the order given; [0;1,1,...] is the
  // golden mean under either convention.
  static Multiplier rotation_from_cf(const std::vector<std::uint64_t>& entries);
  static Multiplier rotation_from_decimal(const std::string& digits);
  static Multiplier explicit_value(Complex value);

  // Spec strings: "cf:[0;e1,e2,...]", "dec:0.618...", "rat:p/q", "ru:p/q",
  // "exp:re,im".
  static Multiplier parse(const std::string& spec);

  Kind kind() const { return kind_; }
  Complex value() const { return value_; }
  std::string describe() const;

  // Rotation number in [0, 1) for rotation-like kinds.
  const BigRational& rotation_number() const { return alpha_; }

  // lambda^n with exact argument reduction for rotation-like kinds.
  Complex power(std::int64_t n) const;

  // |lambda^n - 1| computed without cancellation near resonances.
  double power_distance_to_one(std::int64_t n) const;

  // Exact for rotation-like kinds (n * p = 0 mod q); false for Explicit.
  bool power_is_one_exact(std::int64_t n) const;

  // Least q >= 1 with lambda^q = 1 for rotation-like kinds, if <= max_order.
  std::optional<std::uint64_t> root_of_unity_order(std::uint64_t max_order) const;

  // |lambda^n| and arg(lambda^n) reduced into [0, 2*pi).
  double power_modulus(std::int64_t n) const;
  double power_argument(std::int64_t n) const;

 private:
  Kind kind_ = Kind::Explicit;
  BigRational alpha_{0};  // rotation number, normalized into [0, 1)
  Complex value_{1.0, 0.0};
};

// |lambda^n * e^{2 i omega j} - 1| with Im(omega) > 0; stable for j of both
// signs (the modulus factor e^{-2 Im(omega) j} leaves the unit circle fast).
double divisor(const Multiplier& lambda, Complex omega, std::int64_t n, std::int64_t j);

}  // namespace divlab
