#pragma once

// Truncated Fourier-Taylor series on a strip x disc domain:
//   u(h, v) = sum_{n=0..N} sum_{|j|<=J} c[n][j] v^n e^{i j h}
// with h in the strip |Im h| < delta and v in the disc |v| < rho.
// This is the carrier type for transition maps, cochains and coordinate
// changes; all operations are pure and return new values.

#include <complex>
#include <cstdint>
#include <vector>

#include "divlab/errors.hpp"

namespace divlab {

using Complex = std::complex<double>;

struct DomainSpec {
  double strip_halfwidth = 1.0;  // delta > 0
  double disc_radius = 1.0;      // rho > 0
  int taylor_order = 1;          // N >= 1
  int fourier_band = 0;          // J >= 0

  void validate() const;
  bool operator==(const DomainSpec&) const = default;
};

enum class JetMode { ExactDegree, UpTo, Above };

class FourierTaylorSeries {
 public:
  FourierTaylorSeries() = default;
  explicit FourierTaylorSeries(const DomainSpec& domain, int min_order = 0);

  static FourierTaylorSeries monomial(const DomainSpec& domain, int n, int j,
                                      Complex value);

  const DomainSpec& domain() const { return domain_; }
  int taylor_order() const { return domain_.taylor_order; }
  int fourier_band() const { return domain_.fourier_band; }
  int min_order() const { return min_order_; }
  void set_min_order(int m);

  Complex at(int n, int j) const;        // requires in-range indices
  Complex coeff_or_zero(int n, int j) const;
  void set(int n, int j, Complex value); // requires in-range indices

  // Raw row access; row n has 2J+1 entries, index j+J.
  const Complex* row(int n) const { return coeffs_.data() + idx(n, -domain_.fourier_band); }
  Complex* row(int n) { return coeffs_.data() + idx(n, -domain_.fourier_band); }

  bool is_zero(double tol = 0.0) const;
  double max_abs_coeff() const;

  // Largest coefficient magnitude at Taylor degree n.
  double level_max_abs(int n) const;

  // True if every declared vanishing order holds: |c[n][j]| <= tol for n < min_order.
  bool min_order_consistent(double tol = 1e-300) const;

  // Recompute min_order from stored coefficients (|c| <= tol counts as zero).
  void tighten_min_order(double tol = 1e-300);

 private:
  std::size_t idx(int n, int j) const {
    return static_cast<std::size_t>(n) * (2 * domain_.fourier_band + 1) +
           static_cast<std::size_t>(j + domain_.fourier_band);
  }

  DomainSpec domain_{};
  int min_order_ = 0;
  std::vector<Complex> coeffs_;
};

// ---- arithmetic -----------------------------------------------------------

FourierTaylorSeries fts_add(const FourierTaylorSeries& a, const FourierTaylorSeries& b);
FourierTaylorSeries fts_sub(const FourierTaylorSeries& a, const FourierTaylorSeries& b);
FourierTaylorSeries fts_scale(const FourierTaylorSeries& a, Complex factor);

// Cauchy product in v, convolution in the Fourier index, truncated to
// out_order and to the band J; modes beyond J are dropped, never wrapped.
FourierTaylorSeries fts_mul(const FourierTaylorSeries& a, const FourierTaylorSeries& b,
                            int out_order);

// Jets [u]^m, u^{<=m}, u^{>m}.
FourierTaylorSeries jet(const FourierTaylorSeries& u, int m, JetMode mode);

// d/dh acts on mode j as multiplication by (i j); exact.
FourierTaylorSeries deriv_h(const FourierTaylorSeries& u);

// u(h + shift, v) for a constant shift: mode j picks up e^{i j shift}.
FourierTaylorSeries shift_h(const FourierTaylorSeries& u, Complex shift);

// u(h, factor * v): row n scales by factor^n.
FourierTaylorSeries scale_v(const FourierTaylorSeries& u, Complex factor);

// u(h, w(h,v)) truncated to out_order; w must have min_order >= 1.
FourierTaylorSeries subst_v(const FourierTaylorSeries& u, const FourierTaylorSeries& w,
                            int out_order);

// outer(h + h_sub(h,v), v_sub(h,v)), expanded by the finite Taylor formula in
// the h shift; terminates because h_sub = O(v). h_sub needs min_order >= 1
// (pass a zero series for pure v substitution), v_sub needs min_order >= 1.
FourierTaylorSeries compose_into(const FourierTaylorSeries& outer,
                                 const FourierTaylorSeries& h_sub,
                                 const FourierTaylorSeries& v_sub, int out_order);

// Coefficient majorant sum_{n,j} |c| e^{|j| delta} rho^n; an upper bound for
// the sup over {|Im h| < delta} x {|v| < rho}.
double coeff_sup_bound(const FourierTaylorSeries& u, double delta, double rho);

// ---- map germs ------------------------------------------------------------

// (h, v) -> (h + horizontal_shift + h_perturbation(h,v),
//            multiplier * v + v_perturbation(h,v))
// fixing {v = 0} pointwise; h_perturbation = O(v), v_perturbation = O(v^2).
struct MapGerm {
  Complex horizontal_shift{0.0, 0.0};
  Complex multiplier{1.0, 0.0};
  FourierTaylorSeries h_perturbation;
  FourierTaylorSeries v_perturbation;

  static MapGerm identity(const DomainSpec& domain);
  void validate() const;
  const DomainSpec& domain() const { return h_perturbation.domain(); }
};

// F after G, truncated to the common Taylor order.
MapGerm germ_compose(const MapGerm& f, const MapGerm& g);

// Inverse germ through the domain's Taylor order (multiplier must be nonzero).
MapGerm germ_inverse(const MapGerm& f);

// Largest coefficient defect between two germs with identical linear parts.
double germ_max_defect(const MapGerm& a, const MapGerm& b);

// ---- vertical vector fields and flows --------------------------------------

// Y = Y_h d/dh + Y_v d/dv with both components vanishing to order >= 2 in v.
struct VerticalVectorField {
  FourierTaylorSeries h_component;
  FourierTaylorSeries v_component;

  void validate() const;
  const DomainSpec& domain() const { return h_component.domain(); }
};

// Time-1 map of Y as a formal series (Lie-exponential, order by order).
MapGerm flow_time_one(const VerticalVectorField& y, int out_order);

// Inverse of flow_time_one for germs tangent to the identity
// (multiplier 1, zero horizontal shift).
VerticalVectorField log_of_map(const MapGerm& f);

// ---- serialization ---------------------------------------------------------

// {"N":int,"J":int,"min_order":int,"delta":x,"rho":x,
//  "coeffs":[[n,j,re,im],...]} sorted by (n,j); exact for finite doubles.
std::string series_to_json(const FourierTaylorSeries& u, int indent = -1);
FourierTaylorSeries series_from_json(const std::string& text);

}  // namespace divlab
