#include "divlab/multiplier.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace divlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

BigRational normalize_mod_one(const BigRational& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);  // > 0 by normalization
  BigInt r = num % den;
  if (r < 0) r += den;
  return BigRational(r, den);
}

Complex unit_from_fraction(const BigRational& frac) {
  const double f = frac.convert_to<double>();
  return Complex{std::cos(kTwoPi * f), std::sin(kTwoPi * f)};
}

}  // namespace

Multiplier Multiplier::root_of_unity(std::int64_t p, std::int64_t q) {
  if (q == 0) throw ConfigError("root_of_unity: zero denominator");
  Multiplier m;
  m.kind_ = Kind::RootOfUnity;
  m.alpha_ = normalize_mod_one(BigRational(BigInt(p), BigInt(q)));
  m.value_ = unit_from_fraction(m.alpha_);
  return m;
}

Multiplier Multiplier::rotation(const BigRational& alpha) {
  Multiplier m;
  m.kind_ = Kind::Rotation;
  m.alpha_ = normalize_mod_one(alpha);
  m.value_ = unit_from_fraction(m.alpha_);
  return m;
}

Multiplier Multiplier::rotation_from_cf(const std::vector<std::uint64_t>& entries) {
  if (entries.empty()) throw ConfigError("continued fraction needs at least one entry");
  BigRational x{0};
  for (std::uint64_t e : entries) {
    if (e < 1) throw ConfigError("continued fraction entries must be >= 1");
    x = BigRational(1) / (BigRational(BigInt(e)) + x);
  }
  return rotation(x);
}

Multiplier Multiplier::rotation_from_decimal(const std::string& digits) {
  std::string s = digits;
  const auto dot = s.find('.');
  std::string intpart = dot == std::string::npos ? s : s.substr(0, dot);
  std::string fracpart = dot == std::string::npos ? "" : s.substr(dot + 1);
  if (intpart.empty()) intpart = "0";
  for (char c : intpart + fracpart) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ConfigError("bad decimal rotation number: " + digits);
    }
  }
  std::string digits_all = intpart + fracpart;
  const auto first = digits_all.find_first_not_of('0');
  digits_all = first == std::string::npos ? "0" : digits_all.substr(first);
  BigInt num(digits_all);
  BigInt den = 1;
  for (std::size_t i = 0; i < fracpart.size(); ++i) den *= 10;
  return rotation(BigRational(num, den));
}

Multiplier Multiplier::explicit_value(Complex value) {
  if (!(std::abs(value) > 0.0)) throw ConfigError("multiplier must be nonzero");
  Multiplier m;
  m.kind_ = Kind::Explicit;
  m.value_ = value;
  return m;
}

Multiplier Multiplier::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ConfigError("bad multiplier spec: " + spec);
  const std::string tag = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);
  if (tag == "cf") {
    // [0;e1,e2,...]
    auto lb = body.find('[');
    auto semi = body.find(';');
    auto rb = body.find(']');
    if (lb == std::string::npos || semi == std::string::npos || rb == std::string::npos ||
        body.substr(lb + 1, semi - lb - 1) != "0") {
      throw ConfigError("bad cf spec (want cf:[0;e1,e2,...]): " + spec);
    }
    std::vector<std::uint64_t> entries;
    std::stringstream ss(body.substr(semi + 1, rb - semi - 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      entries.push_back(std::stoull(tok));
    }
    return rotation_from_cf(entries);
  }
  if (tag == "dec") return rotation_from_decimal(body);
  if (tag == "rat" || tag == "ru") {
    const auto slash = body.find('/');
    if (slash == std::string::npos) throw ConfigError("bad rational spec: " + spec);
    const std::int64_t p = std::stoll(body.substr(0, slash));
    const std::int64_t q = std::stoll(body.substr(slash + 1));
    if (tag == "ru") return root_of_unity(p, q);
    return rotation(BigRational(BigInt(p), BigInt(q)));
  }
  if (tag == "exp") {
    const auto comma = body.find(',');
    if (comma == std::string::npos) throw ConfigError("bad exp spec: " + spec);
    return explicit_value(Complex{std::stod(body.substr(0, comma)),
                                  std::stod(body.substr(comma + 1))});
  }
  throw ConfigError("unknown multiplier spec tag: " + tag);
}

std::string Multiplier::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::RootOfUnity:
    case Kind::Rotation: {
      os << (kind_ == Kind::RootOfUnity ? "root_of_unity(" : "rotation(")
         << alpha_.convert_to<double>() << ")";
      break;
    }
    case Kind::Explicit:
      os << "explicit(" << value_.real() << (value_.imag() < 0 ? "" : "+")
         << value_.imag() << "i)";
      break;
  }
  return os.str();
}

Complex Multiplier::power(std::int64_t n) const {
  if (kind_ == Kind::Explicit) {
    const double mod = power_modulus(n);
    const double arg = power_argument(n);
    return Complex{mod * std::cos(arg), mod * std::sin(arg)};
  }
  return unit_from_fraction(normalize_mod_one(BigRational(BigInt(n)) * alpha_));
}

double Multiplier::power_modulus(std::int64_t n) const {
  if (kind_ != Kind::Explicit) return 1.0;
  return std::exp(static_cast<double>(n) * std::log(std::abs(value_)));
}

double Multiplier::power_argument(std::int64_t n) const {
  if (kind_ == Kind::Explicit) {
    const long double arg =
        static_cast<long double>(n) * static_cast<long double>(std::arg(value_));
    long double r = std::fmod(arg, static_cast<long double>(kTwoPi));
    if (r < 0) r += static_cast<long double>(kTwoPi);
    return static_cast<double>(r);
  }
  const BigRational f = normalize_mod_one(BigRational(BigInt(n)) * alpha_);
  return kTwoPi * f.convert_to<double>();
}

double Multiplier::power_distance_to_one(std::int64_t n) const {
  if (kind_ == Kind::Explicit) {
    const double m = power_modulus(n);
    const double half = 0.5 * power_argument(n);
    const double s = std::sin(half);
    return std::sqrt((m - 1.0) * (m - 1.0) + 4.0 * m * s * s);
  }
  if (power_is_one_exact(n)) return 0.0;
  // |e^{i 2 pi f} - 1| = 2 sin(pi min(f, 1-f)); exact fraction first.
  const BigRational f = normalize_mod_one(BigRational(BigInt(n)) * alpha_);
  double fd = f.convert_to<double>();
  fd = std::min(fd, 1.0 - fd);
  return 2.0 * std::sin(std::numbers::pi * fd);
}

bool Multiplier::power_is_one_exact(std::int64_t n) const {
  if (kind_ == Kind::Explicit) return false;
  const BigInt num = boost::multiprecision::numerator(alpha_);
  const BigInt den = boost::multiprecision::denominator(alpha_);
  return (BigInt(n) * num) % den == 0;
}

std::optional<std::uint64_t> Multiplier::root_of_unity_order(
    std::uint64_t max_order) const {
  if (kind_ == Kind::Explicit) return std::nullopt;
  const BigInt den = boost::multiprecision::denominator(alpha_);
  if (den <= BigInt(max_order)) return den.convert_to<std::uint64_t>();
  return std::nullopt;
}

double divisor(const Multiplier& lambda, Complex omega, std::int64_t n, std::int64_t j) {
  if (n < 1) throw OrderError("divisor: n must be >= 1");
  if (j == 0) return lambda.power_distance_to_one(n);
  // lambda^n e^{2 i omega j} = M e^{i phi},
  // M = |lambda^n| e^{-2 Im(omega) j}, phi = arg(lambda^n) + 2 Re(omega) j.
  const double m = lambda.power_modulus(n) *
                   std::exp(-2.0 * omega.imag() * static_cast<double>(j));
  double phi = lambda.power_argument(n) + 2.0 * omega.real() * static_cast<double>(j);
  phi = std::fmod(phi, kTwoPi);
  const double s = std::sin(0.5 * phi);
  return std::sqrt((m - 1.0) * (m - 1.0) + 4.0 * m * s * s);
}

}  // namespace divlab
