#include "divlab/small_divisors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace divlab {

SmallDivisorTable SmallDivisorTable::build(const Multiplier& lambda, Complex omega,
                                           int max_n, int max_j) {
  if (!(omega.imag() > 0.0)) throw DimensionError("Im(omega) must be > 0");
  if (max_n < 1 || max_j < 0) throw DimensionError("bad divisor table extents");
  SmallDivisorTable t;
  t.lambda = lambda;
  t.omega = omega;
  t.max_n = max_n;
  t.max_j = max_j;
  t.entries.resize(static_cast<std::size_t>(max_n) * (2 * max_j + 1));
  for (int n = 1; n <= max_n; ++n) {
    for (int j = -max_j; j <= max_j; ++j) {
      t.entries[static_cast<std::size_t>(n - 1) * (2 * max_j + 1) + (j + max_j)] =
          divisor(lambda, omega, n, j);
    }
  }
  return t;
}

double SmallDivisorTable::at(int n, int j) const {
  if (n < 1 || n > max_n || j < -max_j || j > max_j) {
    throw DimensionError("divisor table index out of range");
  }
  return entries[static_cast<std::size_t>(n - 1) * (2 * max_j + 1) + (j + max_j)];
}

void SmallDivisorTable::to_csv(std::ostream& os) const {
  os << "n,j,divisor\n";
  for (int n = 1; n <= max_n; ++n) {
    for (int j = -max_j; j <= max_j; ++j) {
      os << n << "," << j << "," << at(n, j) << "\n";
    }
  }
}

DstarSequence DstarSequence::from_table(std::vector<double> values_from_m2, double tau) {
  DstarSequence d;
  d.tau_ = tau;
  d.table_ = std::move(values_from_m2);
  double running = 1.0;
  for (double& v : d.table_) {
    if (!(v >= 1.0)) v = 1.0;
    running = std::max(running, v);
    v = running;
  }
  return d;
}

DstarSequence DstarSequence::from_function(std::function<double(std::uint64_t)> fn,
                                           double tau) {
  DstarSequence d;
  d.tau_ = tau;
  d.fn_ = std::move(fn);
  double prev = 0.0;
  for (int k = 1; k <= 60; ++k) {
    const double v = d.fn_(std::uint64_t{1} << k);
    if (!(v >= 1.0) || v + 1e-12 * std::abs(v) < prev) {
      throw ScheduleError("D* closure must be >= 1 and nondecreasing");
    }
    prev = v;
  }
  return d;
}

DstarSequence DstarSequence::siegel_type(double tau) {
  return from_function(
      [tau](std::uint64_t m) {
        const double md = static_cast<double>(m);
        return std::max(md, std::pow(md, tau));
      },
      tau);
}

double DstarSequence::at(std::uint64_t m) const {
  if (m < 2) return 1.0;
  if (!table_.empty()) {
    const std::size_t i = static_cast<std::size_t>(m - 2);
    if (i >= table_.size()) return table_.back();
    return table_[i];
  }
  if (!fn_) return 1.0;
  return fn_(m);
}

std::vector<double> min_divisor_profile(const Multiplier& lambda, int m_max) {
  if (m_max < 2) throw OrderError("min_divisor_profile: m_max must be >= 2");
  std::vector<double> out;
  out.reserve(m_max - 1);
  double running = std::numeric_limits<double>::infinity();
  for (int i = 2; i <= m_max; ++i) {
    running = std::min(running, lambda.power_distance_to_one(i));
    out.push_back(running);
  }
  return out;
}

SiegelReport siegel_check(const Multiplier& lambda, double c, double tau,
                          std::int64_t n_max) {
  if (!(c > 0.0) || tau < 0.0) throw ConfigError("siegel_check needs C > 0, tau >= 0");
  SiegelReport rep;
  rep.holds = true;
  rep.worst_ratio = std::numeric_limits<double>::infinity();
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const double d = lambda.power_distance_to_one(n);
    if (lambda.power_is_one_exact(n) || d == 0.0) {
      rep.holds = false;
      rep.exact_resonance = true;
      rep.worst_n = n;
      rep.worst_ratio = 0.0;
      return rep;
    }
    const double bound = c * std::pow(static_cast<double>(n), -tau);
    const double ratio = d / bound;
    if (ratio < rep.worst_ratio) {
      rep.worst_ratio = ratio;
      rep.worst_n = n;
    }
  }
  rep.holds = rep.worst_ratio >= 1.0;
  return rep;
}

std::vector<double> bruno_partial_sums(const Multiplier& lambda, int k_max) {
  std::vector<double> sums;
  double acc = 0.0;
  double worst_inv = 0.0;  // max over i <= 2^k of |lambda^i - 1|^{-1}
  std::int64_t i = 2;
  for (int k = 1; k <= k_max; ++k) {
    const std::int64_t up = std::int64_t{1} << k;
    for (; i <= up; ++i) {
      if (lambda.power_is_one_exact(i)) {
        throw ResonanceError("multiplier is a root of unity of order " +
                                 std::to_string(i),
                             i, 0, 0.0);
      }
      worst_inv = std::max(worst_inv, 1.0 / lambda.power_distance_to_one(i));
    }
    acc += std::log(worst_inv) / std::pow(2.0, k);
    sums.push_back(acc);
  }
  return sums;
}

DoninSumResult donin_bruno_sum(const DstarSequence& dstar, int k_max) {
  DoninSumResult res;
  double acc = 0.0;
  std::vector<double> terms;
  for (int k = 1; k <= k_max; ++k) {
    // 2^{k+1} saturates at the largest representable dyadic point.
    const int shift = std::min(k + 1, 62);
    const double term =
        std::log(dstar.at(std::uint64_t{1} << shift)) / std::pow(2.0, k);
    terms.push_back(term);
    acc += term;
    res.partial_sums.push_back(acc);
  }
  // Certified tail: if the last terms decrease by a uniform factor q < 1,
  // remainder <= last * q / (1 - q).
  res.tail_bound = std::numeric_limits<double>::infinity();
  const int window = std::min<int>(8, static_cast<int>(terms.size()) - 1);
  if (window >= 2) {
    double q = 0.0;
    bool decreasing = true;
    for (int k = static_cast<int>(terms.size()) - window;
         k < static_cast<int>(terms.size()); ++k) {
      if (terms[k - 1] <= 0.0) continue;
      const double ratio = terms[k] / terms[k - 1];
      q = std::max(q, ratio);
      if (ratio >= 1.0) decreasing = false;
    }
    if (decreasing && q < 1.0) {
      res.tail_bound = terms.back() * q / (1.0 - q);
    }
  }
  res.converged = !terms.empty() &&
                  (terms.back() < 1e-12 || res.tail_bound < 1e-12);
  return res;
}

ComparabilityReport arnold_comparability(const Multiplier& lambda, Complex omega,
                                         double c, int n_max, int j_max) {
  if (!(c > 0.0)) throw ConfigError("arnold_comparability needs c > 0");
  if (!(omega.imag() > 0.0)) throw DimensionError("Im(omega) must be > 0");
  ComparabilityReport rep;
  rep.worst_ratio = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= n_max; ++n) {
    const double base = lambda.power_distance_to_one(n);
    if (base == 0.0) continue;  // RHS zero: inequality trivially holds
    for (int j = -j_max; j <= j_max; ++j) {
      const double d = divisor(lambda, omega, n, j);
      const double ratio = d / base;
      if (ratio < rep.worst_ratio) {
        rep.worst_ratio = ratio;
        rep.worst_n = n;
        rep.worst_j = j;
      }
    }
  }
  rep.c_effective = rep.worst_ratio;
  rep.holds = rep.worst_ratio >= c;
  return rep;
}

ArnoldConstants build_arnold_constants(const SmallDivisorTable& table, double c_const,
                                       double coupling_c) {
  ArnoldConstants out;
  const int max_n = table.max_n;
  out.k_sequence.reserve(max_n);
  for (int n = 1; n <= max_n; ++n) {
    const double d = table.at(n, 0);
    if (d == 0.0 || table.lambda.power_is_one_exact(n)) {
      throw ResonanceError("resonance at n = " + std::to_string(n), n, 0, d);
    }
    out.k_sequence.push_back(c_const / d);
  }
  // D*(m) for m >= 2, from the same divisor data, then monotonized.
  std::vector<double> dstar_vals;
  dstar_vals.reserve(max_n - 1);
  double running_max = 0.0;
  for (int m = 2; m <= max_n; ++m) {
    const double d_m = c_const / table.at(m, 0);
    const double k_prev = out.k_sequence[m - 2];  // K_{m-1}
    running_max = std::max(running_max, (1.0 + coupling_c * k_prev) * d_m);
    dstar_vals.push_back(1.0 + running_max);
  }
  out.dstar = DstarSequence::from_table(std::move(dstar_vals), 0.0);
  return out;
}

}  // namespace divlab
