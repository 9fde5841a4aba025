#include "divlab/onedim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "divlab/arnold.hpp"

namespace divlab {

namespace {

using Poly = std::vector<Complex>;  // index = degree

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

// f(g(w)) truncated to order n, g(0) = 0.
Poly compose1d(const Poly& f, const Poly& g, int order) {
  Poly res(order + 1, Complex{});
  // Horner from the top degree down.
  for (int k = static_cast<int>(f.size()) - 1; k >= 0; --k) {
    if (k > order) continue;
    // res = res * g + f_k
    Poly next(order + 1, Complex{});
    for (int i = 0; i <= order; ++i) {
      if (res[i] == Complex{}) continue;
      for (int j = 1; j < static_cast<int>(g.size()) && i + j <= order; ++j) {
        next[i + j] += res[i] * g[j];
      }
    }
    next[0] += f[k];
    res = std::move(next);
  }
  return res;
}

// Functional inverse of q(w) = w + O(w^2) through the given order.
Poly invert1d(const Poly& q, int order) {
  Poly inv(order + 1, Complex{});
  if (order >= 1) inv[1] = Complex{1.0, 0.0};
  for (int pass = 0; pass < order; ++pass) {
    Poly comp = compose1d(q, inv, order);  // want identity
    bool clean = true;
    for (int n = 2; n <= order; ++n) {
      if (comp[n] != Complex{}) {
        clean = false;
        inv[n] -= comp[n];
      }
    }
    if (clean) break;
  }
  return inv;
}

Complex multiplier_divisor(const Multiplier& lambda, int n) {
  // lambda^n - lambda = lambda (lambda^{n-1} - 1), phase-exact via reduction.
  return lambda.value() * (lambda.power(n - 1) - Complex{1.0, 0.0});
}

}  // namespace

Complex Germ1D::coeff(int n) const {
  if (n == 1) return multiplier.value();
  const int i = n - 2;
  if (i < 0 || i >= static_cast<int>(tail.size())) return Complex{};
  return tail[i];
}

Germ1D Germ1D::quadratic(const Multiplier& lambda, int order) {
  Germ1D g;
  g.multiplier = lambda;
  g.order = order;
  g.tail.assign(1, Complex{1.0, 0.0});
  return g;
}

Linearizer1D schroeder_linearize(const Germ1D& phi, int order) {
  if (order < 1) throw OrderError("order must be >= 1");
  Linearizer1D out;
  out.coeffs.assign(order + 1, Complex{});
  out.coeffs[1] = Complex{1.0, 0.0};
  out.achieved_order = order;

  // Highest germ coefficient index that can matter at this order.
  const int top_k = std::min<int>(static_cast<int>(phi.tail.size()) + 1, order);
  // pw[k][m] = [psi^k]_m, filled column by column as psi becomes known;
  // [psi^k]_m only involves psi_i with i <= m - k + 1.
  std::vector<Poly> pw(std::max(top_k + 1, 2), Poly(order + 1, Complex{}));
  pw[1][1] = Complex{1.0, 0.0};

  for (int n = 2; n <= order; ++n) {
    if (phi.multiplier.power_is_one_exact(n - 1)) {
      throw ResonanceError("resonant multiplier power at order " + std::to_string(n),
                           n, 0, 0.0);
    }
    pw[1][n - 1] = out.coeffs[n - 1];
    for (int k = 2; k <= top_k; ++k) {
      for (int m = k; m <= n; ++m) {
        if (pw[k][m] != Complex{} && m < n) continue;  // already filled
        Complex s{};
        for (int i = k - 1; i <= m - 1; ++i) s += pw[k - 1][i] * out.coeffs[m - i];
        pw[k][m] = s;
      }
    }
    Complex rhs{};
    for (int k = 2; k <= top_k; ++k) {
      const Complex a_k = phi.coeff(k);
      if (a_k != Complex{}) rhs += a_k * pw[k][n];
    }
    const Complex den = multiplier_divisor(phi.multiplier, n);
    out.divisors_used.push_back(std::abs(den));
    const Complex value = rhs / den;
    if (!finite(value)) {
      out.achieved_order = n - 1;
      break;
    }
    out.coeffs[n] = value;
  }
  return out;
}

Linearizer1D newton_linearize_1d(const Germ1D& phi, int passes) {
  if (passes < 0) throw OrderError("passes must be >= 0");
  const int order = 1 << passes;
  Linearizer1D out;
  out.coeffs.assign(order + 1, Complex{});
  out.coeffs[1] = Complex{1.0, 0.0};
  out.achieved_order = order;

  Poly phi_cur(order + 1, Complex{});
  phi_cur[1] = phi.multiplier.value();
  for (int n = 2; n <= order; ++n) phi_cur[n] = phi.coeff(n);
  Poly psi_acc = out.coeffs;

  int s = 1;
  for (int pass = 0; pass < passes; ++pass) {
    const int top = std::min(2 * s, order);
    Poly q(order + 1, Complex{});
    q[1] = Complex{1.0, 0.0};
    for (int n = s + 1; n <= top; ++n) {
      if (phi.multiplier.power_is_one_exact(n - 1)) {
        throw ResonanceError("resonant multiplier power at order " + std::to_string(n),
                             n, 0, 0.0);
      }
      const Complex den = multiplier_divisor(phi.multiplier, n);
      out.divisors_used.push_back(std::abs(den));
      q[n] = phi_cur[n] / den;
    }
    psi_acc = compose1d(psi_acc, q, order);
    phi_cur = compose1d(invert1d(q, order), compose1d(phi_cur, q, order), order);
    s = top;
    bool ok = true;
    for (const Complex& c : psi_acc) ok = ok && finite(c);
    if (!ok) {
      out.achieved_order = s;
      break;
    }
  }
  out.coeffs = psi_acc;
  return out;
}

double schroeder_residual(const Germ1D& phi, const Linearizer1D& psi, int order) {
  Poly phi_poly(order + 1, Complex{});
  phi_poly[1] = phi.multiplier.value();
  for (int n = 2; n <= order; ++n) phi_poly[n] = phi.coeff(n);
  Poly psi_poly(psi.coeffs.begin(),
                psi.coeffs.begin() + std::min<std::size_t>(psi.coeffs.size(),
                                                           order + 1));
  psi_poly.resize(order + 1, Complex{});
  Poly lhs = compose1d(phi_poly, psi_poly, order);
  const Complex lambda = phi.multiplier.value();
  double worst = 0.0;
  Complex lam_n = lambda;
  for (int n = 1; n <= order; ++n) {
    worst = std::max(worst, std::abs(lhs[n] - psi_poly[n] * lam_n));
    lam_n *= lambda;
  }
  return worst;
}

double radius_estimate(const Linearizer1D& psi, int n0, int n1) {
  if (n0 > n1 || n0 < 1) throw OrderError("bad radius window");
  n1 = std::min<int>(n1, static_cast<int>(psi.coeffs.size()) - 1);
  if (n1 < n0) throw OrderError("window exceeds available order");
  double worst = 0.0;
  for (int n = n0; n <= n1; ++n) {
    const Complex c = psi.coeffs[n];
    if (!finite(c)) return 0.0;
    const double mag = std::abs(c);
    if (mag > 0.0) {
      worst = std::max(worst, std::pow(mag, 1.0 / static_cast<double>(n)));
    }
  }
  if (worst == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / worst;
}

Multiplier liouville_multiplier(const std::vector<std::uint64_t>& cf_entries) {
  return Multiplier::rotation_from_cf(cf_entries);
}

EquivalenceReport equivalence_with_arnold(const Multiplier& lambda, Complex omega,
                                          const std::vector<Complex>& a_tail,
                                          int order) {
  Germ1D phi;
  phi.multiplier = lambda;
  phi.tail = a_tail;
  phi.order = order;
  Linearizer1D psi = schroeder_linearize(phi, order);

  // v-only neighborhood generated by phi: lambda v (1 + va) = lambda v + a(v)
  // forces va = a(v) / (lambda v).
  DomainSpec dom{1.0, 1.0, order, 0};
  FourierTaylorSeries va(dom, 1);
  const Complex lambda_val = lambda.value();
  for (int n = 2; n <= order; ++n) {
    const Complex a_n = phi.coeff(n);
    if (n - 1 <= dom.taylor_order && a_n != Complex{}) {
      va.set(n - 1, 0, a_n / lambda_val);
    }
  }
  va.tighten_min_order();
  if (!va.is_zero() && va.min_order() < 1) {
    throw OrderError("germ tail must start at order 2");
  }
  FourierTaylorSeries vb(dom, dom.taylor_order + 1);
  TorusNeighborhood nbhd = TorusNeighborhood::build(lambda, omega, va, vb);
  LinearizationResult lin = vertical_linearize(nbhd, order);

  EquivalenceReport rep;
  rep.schroeder_psi.assign(psi.coeffs.begin(), psi.coeffs.end());
  rep.torus_vertical.assign(order + 1, Complex{});
  rep.torus_vertical[1] = Complex{1.0, 0.0};
  for (int n = 2; n <= order; ++n) {
    rep.torus_vertical[n] = lin.g.v_perturbation.coeff_or_zero(n, 0);
  }
  for (int n = 2; n <= order; ++n) {
    const double ref =
        std::max({std::abs(rep.schroeder_psi[n]), std::abs(rep.torus_vertical[n]),
                  1e-30});
    const double defect = std::abs(rep.schroeder_psi[n] - rep.torus_vertical[n]) / ref;
    rep.max_relative_defect = std::max(rep.max_relative_defect, defect);
  }
  return rep;
}

}  // namespace divlab
