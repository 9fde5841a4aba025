#pragma once

// Majorant machinery: the eta recursion over partition maxima, exponential
// growth fitting, and the implicit functional equations for the dominating
// series A(t), solved as explicit order-by-order fixed points.

#include <optional>
#include <vector>

#include "divlab/errors.hpp"

namespace divlab {

struct EtaSequence {
  std::vector<double> k;    // k[m-1] = K_m input (k[0] unused, = 0)
  std::vector<double> eta;  // eta[m-1] = eta_m, eta[0] = 1
  int length = 0;

  double at(int m) const { return eta.at(m - 1); }
};

// eta_1 = 1; eta_m = K_m * max over multisets {m_i} with 1 <= m_i < m and
// sum m_i <= m (slack allowed, empty product = 1) of prod eta_{m_i}.
// K_m is a single pre-folded input: when two operator-norm families compete,
// fold their max before calling.
EtaSequence eta_sequence(const std::vector<double>& k_from_m2, int length);

// Exhaustive partition enumeration of the same maximum (test oracle).
double eta_partition_max_bruteforce(const std::vector<double>& eta_prefix, int m);

struct GrowthFit {
  bool bounded = false;      // false means superexponential verdict
  double l0 = 0.0;           // eta_m <= l0 * l^m certified over the range
  double l = 0.0;
};

// Least-squares fit of log eta_m over the tail half, with l0 inflated so the
// bound holds over the full range; superexponential verdict when the log
// increments keep growing across the tail.
GrowthFit growth_fit(const EtaSequence& eta);

struct MajorantParams {
  double r = 1.0;        // coefficient bound R
  double m = 1.0;        // chart separation M
  double m_tilde = 1.0;  // covering constant
  int n = 1;             // base dimension
  int d = 1;             // fiber dimension
  double c0 = 1.0;       // max |phi_kj| (full equation only)

  void validate() const;
};

struct MajorantSeries {
  std::vector<double> a;  // a[m] = A_m, a[0] = a[1] = 0

  double at(int m) const { return m >= 0 && m < static_cast<int>(a.size()) ? a[m] : 0.0; }
  int length() const { return static_cast<int>(a.size()) - 1; }
};

// A = Mt * (g + A ((M/(M-g))^n - 1)),
// g = (1 - R(t+A))^{-d} - d R (t+A) - 1.
MajorantSeries solve_vertical_majorant(const MajorantParams& p, int order);

// A = Mt * (C0 [(1-A/M)^{-n} - 1 - nA/M]
//           + (1-A/M)^{-n} ((1-(Rt+RA))^{-d} - 1 - d(Rt+RA))).
MajorantSeries solve_full_majorant(const MajorantParams& p, int order);

// 1 / max over the tail half of A_m^{1/m}; +inf when the tail vanishes.
double radius_lower_bound(const MajorantSeries& a);

struct DominationVerdict {
  bool ok = false;
  int first_violation = -1;  // m of the first failing level, or -1
};

// f_norms[m-2] <= eta_m * A_m for every m covered by all three inputs.
DominationVerdict domination_check(const std::vector<double>& f_norms_from_m2,
                                   const EtaSequence& eta, const MajorantSeries& a);

}  // namespace divlab
