#pragma once

// The concrete torus neighborhood: transition maps generated by one germ
//   f(h, v) = (h + 2*omega + vb(h,v), lambda v (1 + va(h,v))),
// its four-chart covering, Fourier-mode cohomological solving, and
// order-by-order / order-doubling conjugation to the linear model
//   f_hat(h, v) = (h + 2*omega, lambda v).

#include <complex>
#include <string>
#include <vector>

#include "divlab/multiplier.hpp"
#include "divlab/series.hpp"
#include "divlab/small_divisors.hpp"

namespace divlab {

struct TorusNeighborhood {
  Multiplier lambda;
  Complex omega{0.0, 1.0};  // Im(omega) > 0
  FourierTaylorSeries va;   // the v*a(h,v) factor, min_order >= 1
  FourierTaylorSeries vb;   // the v*b(h,v) factor, min_order >= 1
  DomainSpec domain;
  bool vertical_is_v_only = false;  // va h-independent and vb = 0

  static TorusNeighborhood build(const Multiplier& lambda, Complex omega,
                                 const FourierTaylorSeries& va,
                                 const FourierTaylorSeries& vb);

  MapGerm transition_germ() const;  // f
  MapGerm linear_germ() const;      // f_hat

  // Largest occupied Fourier mode of the generators.
  int generator_band() const;
};

// The ten overlap pieces of the four-chart covering; subscript-0 pieces and
// the {14}, {23} overlaps carry the identity, subscript-1 pieces carry f.
enum class OverlapLabel {
  Phi12_0,
  Phi12_1,
  Phi43_0,
  Phi43_1,
  Phi14,
  Phi23,
  Phi13_0,
  Phi13_1,
  Phi42_0,
  Phi42_1,
};

std::string to_string(OverlapLabel label);

struct CoveringTransition {
  OverlapLabel label;
  MapGerm map;
};

std::vector<CoveringTransition> make_covering(const TorusNeighborhood& nbhd);

struct CocycleReport {
  double max_defect = 0.0;
  std::string worst_identity;
};

// Checks the triple-overlap identities of the covering through the given
// order; generated coverings give defect exactly 0.
CocycleReport verify_cocycle(const std::vector<CoveringTransition>& covering,
                             int order);
CocycleReport verify_cocycle(const TorusNeighborhood& nbhd, int order);

// Modewise solve of  lambda^n X(h + 2 omega) - X(h) = rhs(h)  per Fourier
// mode: X_j = rhs_j / (lambda^n e^{2 i omega j} - 1). The Taylor rows of rhs
// are preserved; n only selects the divisor family. Divisors below
// threshold * scale abort with the offending (n, j).
FourierTaylorSeries solve_cohomological_level(const TorusNeighborhood& nbhd, int n,
                                              const FourierTaylorSeries& rhs,
                                              double resonance_threshold = 1e-13);

// Both components at once, matching the decoupled level equations.
std::pair<FourierTaylorSeries, FourierTaylorSeries> solve_level(
    const TorusNeighborhood& nbhd, int n, const FourierTaylorSeries& rhs_a,
    const FourierTaylorSeries& rhs_b, double resonance_threshold = 1e-13);

enum class LinearizeMode { Vertical, Full };
enum class Scheme { OrderByOrder, NewtonDoubling };

struct LevelData {
  int n = 0;
  FourierTaylorSeries a;  // vertical correction, at Taylor row n+1
  FourierTaylorSeries b;  // horizontal correction, at Taylor row n (Full only)
  double min_divisor = 0.0;
  double max_divisor = 0.0;
  double rhs_norm = 0.0;  // coefficient norm of the level input at delta
};

struct LinearizationResult {
  LinearizeMode mode = LinearizeMode::Vertical;
  MapGerm g;           // accumulated coordinate change, tangent to identity
  MapGerm conjugated;  // g^{-1} o f o g
  FourierTaylorSeries residual_h;  // conjugated minus the linear model
  FourierTaylorSeries residual_v;
  int order_achieved = 0;
  std::vector<LevelData> per_level;
};

// Conjugates f toward f_hat through the given order. Vertical mode kills only
// the fiber component (the horizontal residual is reported untouched); Full
// mode kills both. Throws ResonanceError / BandOverflowError.
LinearizationResult vertical_linearize(const TorusNeighborhood& nbhd, int order,
                                       double resonance_threshold = 1e-13);
LinearizationResult full_linearize(const TorusNeighborhood& nbhd, int order,
                                   Scheme scheme,
                                   double resonance_threshold = 1e-13);

// Largest m such that the designated residual components vanish through
// degree m (|coeff| < tol * scale); vertical mode looks at the fiber
// component only.
int residual_order(const LinearizationResult& result, double tol = 1e-9);

struct FoliationReport {
  bool foliated = false;
  std::vector<std::pair<int, int>> offending;  // (n, j) above tolerance
  std::vector<Complex> holonomy;  // v |-> sum holonomy[k] v^k, holonomy[1]=lambda
};

// After vertical linearization, checks that the conjugated fiber component
// depends on v only and extracts the leaf holonomy germ.
FoliationReport foliation_extract(const LinearizationResult& result,
                                  double tol = 1e-9);

struct LevelDecay {
  int n = 0;
  double c_fit = 0.0;   // max_j |A_{n,j}| e^{|j| delta_prime}
  int worst_j = 0;
  double bound = 0.0;   // (C/|lambda^n - 1|) * input level norm
  bool ok = false;
};

struct DecayReport {
  std::vector<LevelDecay> levels;
  bool all_ok = false;
};

// Mode-decay certificates |A_{n,j}| <= C_fit e^{-|j| delta_prime} per level.
DecayReport decay_check(const LinearizationResult& result,
                        const TorusNeighborhood& nbhd, double delta,
                        double delta_prime, double c_const);

}  // namespace divlab
