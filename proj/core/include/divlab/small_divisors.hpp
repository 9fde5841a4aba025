#pragma once

// Small-divisor tables and arithmetic conditions: Siegel bounds, Bruno-type
// partial sums, the Donin-type D* sequence and the torus comparability bound.

#include <cstdint>
#include <functional>
#include <vector>

#include "divlab/multiplier.hpp"

namespace divlab {

struct SmallDivisorTable {
  Multiplier lambda;
  Complex omega{0.0, 1.0};  // Im(omega) > 0
  int max_n = 0;
  int max_j = 0;
  // entries[(n-1) * (2*max_j+1) + (j+max_j)] = |lambda^n e^{2 i omega j} - 1|
  std::vector<double> entries;

  static SmallDivisorTable build(const Multiplier& lambda, Complex omega, int max_n,
                                 int max_j);
  double at(int n, int j) const;
  void to_csv(std::ostream& os) const;
};

// Nondecreasing sequence m -> D*(m) >= 1 with a Donin exponent tau. Backed by
// a table (eagerly monotonized) or by a closure (assumed monotone; spot
// checked on dyadic points, since schedules query m ~ 2^40 and beyond).
class DstarSequence {
 public:
  DstarSequence() = default;
  static DstarSequence from_table(std::vector<double> values_from_m2, double tau);
  static DstarSequence from_function(std::function<double(std::uint64_t)> fn, double tau);
  // D*(m) = max(m, m^tau), the Siegel-type floor.
  static DstarSequence siegel_type(double tau);

  double tau() const { return tau_; }
  double at(std::uint64_t m) const;
  bool table_backed() const { return !table_.empty(); }
  std::uint64_t table_limit() const { return table_.size() + 1; }

 private:
  double tau_ = 0.0;
  std::vector<double> table_;  // index 0 -> m = 2
  std::function<double(std::uint64_t)> fn_;
};

// min_{2<=i<=m} |lambda^i - 1| for m = 2..m_max; nonincreasing by construction.
std::vector<double> min_divisor_profile(const Multiplier& lambda, int m_max);

struct SiegelReport {
  bool holds = false;
  bool exact_resonance = false;
  std::int64_t worst_n = 0;
  double worst_ratio = 0.0;  // min over n of |lambda^n - 1| / (C n^-tau)
};

// |lambda^n - 1| >= C n^{-tau} for all 1 <= n <= n_max.
SiegelReport siegel_check(const Multiplier& lambda, double c, double tau,
                          std::int64_t n_max);

// Partial sums S_K = sum_{k=1..K} 2^{-k} log max_{2<=i<=2^k} |lambda^i - 1|^{-1}.
// Throws ResonanceError when a root of unity of order <= 2^K is hit.
std::vector<double> bruno_partial_sums(const Multiplier& lambda, int k_max);

struct DoninSumResult {
  std::vector<double> partial_sums;  // index k-1 -> sum up to k
  bool converged = false;            // last increment < 1e-12
  double tail_bound = 0.0;           // certified bound on the remainder, or inf
};

// Partial sums of sum_{k>=1} log D*(2^{k+1}) / 2^k with a certified tail bound
// when the terms are eventually decreasing by a uniform geometric factor.
DoninSumResult donin_bruno_sum(const DstarSequence& dstar, int k_max);

struct ComparabilityReport {
  bool holds = false;
  std::int64_t worst_n = 0;
  std::int64_t worst_j = 0;
  double worst_ratio = 0.0;  // min over scanned (n,j) of divisor / |lambda^n - 1|
  double c_effective = 0.0;  // largest c that would pass on this range
};

// |lambda^n e^{2 i omega j} - 1| >= c |lambda^n - 1| over 1<=n<=n_max, |j|<=j_max.
// Pairs with |lambda^n - 1| = 0 are trivially satisfied and skipped.
ComparabilityReport arnold_comparability(const Multiplier& lambda, Complex omega,
                                         double c, int n_max, int j_max);

struct ArnoldConstants {
  std::vector<double> k_sequence;  // index n-1 -> K_n = C / |lambda^n - 1|
  DstarSequence dstar;
};

// K_n := C/|lambda^n - 1| and D*(2m) := 1 + max_{2<=l<=2m} (1 + c K_{l-1}) D_l
// with D_l = C/|lambda^l - 1|, monotonized; resonances in range throw.
ArnoldConstants build_arnold_constants(const SmallDivisorTable& table, double c_const,
                                       double coupling_c = 1.0);

}  // namespace divlab
