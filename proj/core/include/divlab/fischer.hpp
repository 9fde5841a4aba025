#pragma once

// Modified Fischer inner product on homogeneous polynomials: monomial x^Q
// carries weight Q!/|Q|!, which makes the norm invariant under unitary
// changes of variables and under unitary rotation of component vectors.

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "divlab/errors.hpp"
#include "divlab/series.hpp"

namespace divlab {

using MultiIndex = std::vector<int>;

int multi_index_total(const MultiIndex& q);
double multi_index_factorial(const MultiIndex& q);  // Q!
// All Q with |Q| = degree in num_vars variables, lexicographic.
std::vector<MultiIndex> enumerate_multi_indices(int num_vars, int degree);

struct HomogeneousPoly {
  int num_vars = 1;
  int degree = 0;
  std::map<MultiIndex, Complex> coeffs;

  static HomogeneousPoly zero(int num_vars, int degree) {
    return HomogeneousPoly{num_vars, degree, {}};
  }
  static HomogeneousPoly monomial(int num_vars, MultiIndex q, Complex c);
  void validate() const;
  Complex coeff(const MultiIndex& q) const;
  void add_term(const MultiIndex& q, Complex c);
};

struct PolyVector {
  std::vector<HomogeneousPoly> entries;  // uniform arity and degree
  void validate() const;
};

// Product of homogeneous polynomials (degrees add).
HomogeneousPoly poly_mul(const HomogeneousPoly& a, const HomogeneousPoly& b);

// sum_Q p_Q conj(q_Q) Q!/|Q|!
Complex mf_inner(const HomogeneousPoly& p, const HomogeneousPoly& q);
double mf_norm(const HomogeneousPoly& p);
double mf_norm(const PolyVector& g);

// Dense d x d complex matrix, row major.
struct ComplexMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Complex> a;

  static ComplexMatrix identity(int d);
  Complex& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  Complex at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

ComplexMatrix mat_mul(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix mat_adjoint(const ComplexMatrix& x);
double unitarity_defect(const ComplexMatrix& x);  // max |(X X* - I)_{rc}|

// Gram-Schmidt orthonormalization of a Gaussian matrix; deterministic in rng.
ComplexMatrix random_unitary(int d, std::mt19937_64& rng);

// Variable substitution x -> T x (T unitary within tol).
HomogeneousPoly apply_unitary(const ComplexMatrix& t, const HomogeneousPoly& p,
                              double tol = 1e-12);
// Left multiplication of the component vector by T.
PolyVector apply_unitary_vec(const ComplexMatrix& t, const PolyVector& g,
                             double tol = 1e-12);

// (1/p!) d_h^p applied to each coefficient function, exact per Fourier mode.
std::vector<FourierTaylorSeries> derivative_family(
    const std::vector<FourierTaylorSeries>& coeff_functions, int p);

struct GaussianCheck {
  double exact = 0.0;      // mf norm squared
  double estimate = 0.0;   // Monte-Carlo Gaussian integral / (pi^d m!)
};

// Monte-Carlo check of |p|_mf^2 = (1/(pi^d m!)) Int |p|^2 e^{-|x|^2} dV.
GaussianCheck gaussian_norm_check(const HomogeneousPoly& p, std::int64_t samples,
                                  std::mt19937_64& rng);

// Matrix of x -> T x acting on degree-L polynomials in the orthonormal basis
// e*_Q = sqrt(|Q|!/Q!) x^Q; unitary when T is.
ComplexMatrix symmetric_power_matrix(const ComplexMatrix& t, int degree);

// {"d":int,"deg":int,"coeffs":[[q_1,...,q_d,re,im],...]} sorted by Q;
// exact for finite doubles.
std::string poly_to_json(const HomogeneousPoly& p, int indent = -1);
HomogeneousPoly poly_from_json(const std::string& text);

}  // namespace divlab
