#pragma once

// Classical one-dimensional linearization: the Schroeder functional equation
// phi(psi(w)) = psi(lambda w) solved order by order, a quadratic
// order-doubling variant, and root-test divergence diagnostics.

#include <complex>
#include <cstdint>
#include <vector>

#include "divlab/multiplier.hpp"

namespace divlab {

// phi(v) = lambda v + sum_{n>=2} a_n v^n, coefficients stored for n = 2..order.
struct Germ1D {
  Multiplier multiplier;
  std::vector<Complex> tail;  // tail[i] = a_{i+2}
  int order = 2;

  Complex coeff(int n) const;  // full map coefficient, n >= 1
  static Germ1D quadratic(const Multiplier& lambda, int order);  // lambda v + v^2
};

// psi(w) = w + sum_{n>=2} psi_n w^n; coeffs[n] = psi_n (coeffs[0] = 0,
// coeffs[1] = 1). achieved_order < requested order when a coefficient went
// nonfinite (divergence is data, the loop halts gracefully).
struct Linearizer1D {
  std::vector<Complex> coeffs;
  std::vector<double> divisors_used;  // |lambda^n - lambda| per solved order
  int achieved_order = 1;

  Complex coeff(int n) const {
    return n >= 0 && n < static_cast<int>(coeffs.size()) ? coeffs[n] : Complex{};
  }
};

// Unique psi tangent to the identity with phi o psi = psi o (lambda .)
// through order N; psi_n carries denominator lambda^n - lambda.
Linearizer1D schroeder_linearize(const Germ1D& phi, int order);

// Quadratic scheme: pass p kills jets (2^{p-1}, 2^p] of the conjugated germ
// from its frozen residual, then recomposes; achieved order 2^passes.
Linearizer1D newton_linearize_1d(const Germ1D& phi, int passes);

// max_n |[phi o psi - psi o (lambda .)]_n| over 2 <= n <= order.
double schroeder_residual(const Germ1D& phi, const Linearizer1D& psi, int order);

// 1 / max_{n in [n0, n1]} |psi_n|^{1/n}; +inf when the window is all zero,
// 0 when any windowed coefficient is nonfinite.
double radius_estimate(const Linearizer1D& psi, int n0, int n1);

// e^{2 pi i alpha} with alpha built by folding x <- 1/(e + x) over the given
// entries (exact rational arithmetic).
Multiplier liouville_multiplier(const std::vector<std::uint64_t>& cf_entries);

struct EquivalenceReport {
  double max_relative_defect = 0.0;
  std::vector<Complex> schroeder_psi;   // psi_n, index = degree
  std::vector<Complex> torus_vertical;  // vertical part of the torus change
};

// Runs the torus vertical linearization on the v-only neighborhood generated
// by phi(v) = lambda v + a(v) and compares its vertical part against the 1-D
// Schroeder series, coefficient by coefficient.
EquivalenceReport equivalence_with_arnold(const Multiplier& lambda, Complex omega,
                                          const std::vector<Complex>& a_tail,
                                          int order);

}  // namespace divlab
