#include "divlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace divlab {

namespace {

// Inclusive support range [lo, hi] of a row, or lo > hi when empty.
struct ModeRange {
  int lo;
  int hi;
  bool empty() const { return lo > hi; }
};

ModeRange row_support(const FourierTaylorSeries& u, int n) {
  const int J = u.fourier_band();
  const Complex* r = u.row(n);
  int lo = -J;
  int hi = J;
  while (lo <= hi && r[lo + J] == Complex{}) ++lo;
  while (hi >= lo && r[hi + J] == Complex{}) --hi;
  return {lo, hi};
}

void require_compatible(const FourierTaylorSeries& a, const FourierTaylorSeries& b) {
  if (a.taylor_order() != b.taylor_order() || a.fourier_band() != b.fourier_band()) {
    throw DimensionError("series have incompatible (N, J) bounds");
  }
}

}  // namespace

void DomainSpec::validate() const {
  if (!(strip_halfwidth > 0.0)) throw DimensionError("strip_halfwidth must be > 0");
  if (!(disc_radius > 0.0)) throw DimensionError("disc_radius must be > 0");
  if (taylor_order < 1) throw DimensionError("taylor_order must be >= 1");
  if (fourier_band < 0) throw DimensionError("fourier_band must be >= 0");
}

FourierTaylorSeries::FourierTaylorSeries(const DomainSpec& domain, int min_order)
    : domain_(domain), min_order_(min_order) {
  domain_.validate();
  if (min_order_ < 0 || min_order_ > domain_.taylor_order + 1) {
    throw OrderError("min_order out of range");
  }
  coeffs_.assign(static_cast<std::size_t>(domain_.taylor_order + 1) *
                     (2 * domain_.fourier_band + 1),
                 Complex{});
}

FourierTaylorSeries FourierTaylorSeries::monomial(const DomainSpec& domain, int n, int j,
                                                  Complex value) {
  FourierTaylorSeries u(domain, n);
  u.set(n, j, value);
  return u;
}

void FourierTaylorSeries::set_min_order(int m) {
  if (m < 0 || m > domain_.taylor_order + 1) throw OrderError("min_order out of range");
  min_order_ = m;
}

Complex FourierTaylorSeries::at(int n, int j) const {
  if (n < 0 || n > domain_.taylor_order || j < -domain_.fourier_band ||
      j > domain_.fourier_band) {
    throw DimensionError("coefficient index out of range");
  }
  return coeffs_[idx(n, j)];
}

Complex FourierTaylorSeries::coeff_or_zero(int n, int j) const {
  if (n < 0 || n > domain_.taylor_order || j < -domain_.fourier_band ||
      j > domain_.fourier_band) {
    return Complex{};
  }
  return coeffs_[idx(n, j)];
}

void FourierTaylorSeries::set(int n, int j, Complex value) {
  if (n < 0 || n > domain_.taylor_order || j < -domain_.fourier_band ||
      j > domain_.fourier_band) {
    throw DimensionError("coefficient index out of range");
  }
  coeffs_[idx(n, j)] = value;
  if (value != Complex{} && n < min_order_) min_order_ = n;
}

bool FourierTaylorSeries::is_zero(double tol) const {
  for (const Complex& c : coeffs_) {
    if (std::abs(c) > tol) return false;
  }
  return true;
}

double FourierTaylorSeries::max_abs_coeff() const {
  double m = 0.0;
  for (const Complex& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double FourierTaylorSeries::level_max_abs(int n) const {
  if (n < 0 || n > domain_.taylor_order) return 0.0;
  double m = 0.0;
  const Complex* r = row(n);
  for (int k = 0; k < 2 * domain_.fourier_band + 1; ++k) m = std::max(m, std::abs(r[k]));
  return m;
}

bool FourierTaylorSeries::min_order_consistent(double tol) const {
  for (int n = 0; n < std::min(min_order_, domain_.taylor_order + 1); ++n) {
    if (level_max_abs(n) > tol) return false;
  }
  return true;
}

void FourierTaylorSeries::tighten_min_order(double tol) {
  int m = 0;
  while (m <= domain_.taylor_order && level_max_abs(m) <= tol) ++m;
  min_order_ = m;
}

FourierTaylorSeries fts_add(const FourierTaylorSeries& a, const FourierTaylorSeries& b) {
  require_compatible(a, b);
  FourierTaylorSeries out(a.domain(), std::min(a.min_order(), b.min_order()));
  const int N = a.taylor_order();
  const int W = 2 * a.fourier_band() + 1;
  for (int n = 0; n <= N; ++n) {
    const Complex* ra = a.row(n);
    const Complex* rb = b.row(n);
    Complex* ro = out.row(n);
    for (int k = 0; k < W; ++k) ro[k] = ra[k] + rb[k];
  }
  return out;
}

FourierTaylorSeries fts_sub(const FourierTaylorSeries& a, const FourierTaylorSeries& b) {
  return fts_add(a, fts_scale(b, Complex{-1.0, 0.0}));
}

FourierTaylorSeries fts_scale(const FourierTaylorSeries& a, Complex factor) {
  FourierTaylorSeries out(a.domain(), factor == Complex{} ? a.taylor_order() + 1
                                                          : a.min_order());
  const int N = a.taylor_order();
  const int W = 2 * a.fourier_band() + 1;
  for (int n = 0; n <= N; ++n) {
    const Complex* ra = a.row(n);
    Complex* ro = out.row(n);
    for (int k = 0; k < W; ++k) ro[k] = ra[k] * factor;
  }
  return out;
}

FourierTaylorSeries fts_mul(const FourierTaylorSeries& a, const FourierTaylorSeries& b,
                            int out_order) {
  require_compatible(a, b);
  if (out_order < 0 || out_order > a.taylor_order()) {
    throw OrderError("fts_mul: out_order out of range");
  }
  FourierTaylorSeries out(a.domain(),
                          std::min(a.min_order() + b.min_order(), out_order + 1));
  const int J = a.fourier_band();
  for (int na = a.min_order(); na <= std::min(a.taylor_order(), out_order); ++na) {
    ModeRange sa = row_support(a, na);
    if (sa.empty()) continue;
    const Complex* ra = a.row(na);
    const int nb_max = std::min(out_order - na, b.taylor_order());
    for (int nb = b.min_order(); nb <= nb_max; ++nb) {
      ModeRange sb = row_support(b, nb);
      if (sb.empty()) continue;
      const Complex* rb = b.row(nb);
      Complex* ro = out.row(na + nb);
      for (int ja = sa.lo; ja <= sa.hi; ++ja) {
        const Complex ca = ra[ja + J];
        if (ca == Complex{}) continue;
        // out mode ja + jb clipped to [-J, J]; modes beyond are dropped.
        const int jb_lo = std::max(sb.lo, -J - ja);
        const int jb_hi = std::min(sb.hi, J - ja);
        for (int jb = jb_lo; jb <= jb_hi; ++jb) {
          ro[ja + jb + J] += ca * rb[jb + J];
        }
      }
    }
  }
  return out;
}

FourierTaylorSeries jet(const FourierTaylorSeries& u, int m, JetMode mode) {
  if (m < 0 || m > u.taylor_order()) throw OrderError("jet: m out of range");
  FourierTaylorSeries out(u.domain(), 0);
  const int N = u.taylor_order();
  const int W = 2 * u.fourier_band() + 1;
  auto keep = [&](int n) {
    switch (mode) {
      case JetMode::ExactDegree: return n == m;
      case JetMode::UpTo: return n <= m;
      case JetMode::Above: return n > m;
    }
    return false;
  };
  for (int n = 0; n <= N; ++n) {
    if (!keep(n)) continue;
    const Complex* ru = u.row(n);
    Complex* ro = out.row(n);
    for (int k = 0; k < W; ++k) ro[k] = ru[k];
  }
  out.tighten_min_order();
  return out;
}

FourierTaylorSeries deriv_h(const FourierTaylorSeries& u) {
  FourierTaylorSeries out(u.domain(), u.min_order());
  const int N = u.taylor_order();
  const int J = u.fourier_band();
  for (int n = 0; n <= N; ++n) {
    const Complex* ru = u.row(n);
    Complex* ro = out.row(n);
    for (int j = -J; j <= J; ++j) {
      ro[j + J] = ru[j + J] * Complex{0.0, static_cast<double>(j)};
    }
  }
  return out;
}

FourierTaylorSeries shift_h(const FourierTaylorSeries& u, Complex shift) {
  FourierTaylorSeries out(u.domain(), u.min_order());
  const int N = u.taylor_order();
  const int J = u.fourier_band();
  std::vector<Complex> phase(2 * J + 1);
  for (int j = -J; j <= J; ++j) {
    phase[j + J] = std::exp(Complex{0.0, 1.0} * static_cast<double>(j) * shift);
  }
  for (int n = 0; n <= N; ++n) {
    const Complex* ru = u.row(n);
    Complex* ro = out.row(n);
    for (int k = 0; k < 2 * J + 1; ++k) ro[k] = ru[k] * phase[k];
  }
  return out;
}

FourierTaylorSeries scale_v(const FourierTaylorSeries& u, Complex factor) {
  FourierTaylorSeries out(u.domain(), u.min_order());
  const int N = u.taylor_order();
  const int W = 2 * u.fourier_band() + 1;
  Complex p{1.0, 0.0};
  for (int n = 0; n <= N; ++n) {
    const Complex* ru = u.row(n);
    Complex* ro = out.row(n);
    for (int k = 0; k < W; ++k) ro[k] = ru[k] * p;
    p *= factor;
  }
  return out;
}

namespace {

// (1/p!) d_v^p u: row m contributes binom(m, p) u_m at row m - p.
FourierTaylorSeries v_deriv_scaled(const FourierTaylorSeries& u, int p) {
  FourierTaylorSeries out(u.domain(), std::max(0, u.min_order() - p));
  const int N = u.taylor_order();
  const int W = 2 * u.fourier_band() + 1;
  for (int m = p; m <= N; ++m) {
    double binom = 1.0;
    for (int i = 0; i < p; ++i) binom *= static_cast<double>(m - i) / (p - i);
    const Complex* ru = u.row(m);
    Complex* ro = out.row(m - p);
    for (int k = 0; k < W; ++k) ro[k] = ru[k] * binom;
  }
  out.tighten_min_order();
  return out;
}

// u(h, lambda v + tail) with tail = O(v^2), by the finite Taylor expansion
// sum_p (1/p!) d_v^p u(h, lambda v) (tail/lambda)^p; much cheaper than the
// Horner route when the tail starts late.
FourierTaylorSeries subst_v_near_linear(const FourierTaylorSeries& u, Complex lambda,
                                        const FourierTaylorSeries& tail,
                                        int out_order) {
  FourierTaylorSeries res(u.domain(), out_order + 1);
  FourierTaylorSeries scaled = scale_v(u, lambda);
  FourierTaylorSeries tail_pow(u.domain(), 0);
  tail_pow.set(0, 0, Complex{1.0, 0.0});
  const FourierTaylorSeries tail_adj = fts_scale(tail, Complex{1.0, 0.0} / lambda);
  const int step = std::max(2, tail_adj.min_order());
  for (int p = 0; p * step <= out_order; ++p) {
    if (p > 0) {
      tail_pow = fts_mul(tail_pow, tail_adj, out_order);
      if (tail_pow.is_zero()) break;
    }
    FourierTaylorSeries term = p == 0 ? jet(scaled, out_order, JetMode::UpTo)
                                      : v_deriv_scaled(scaled, p);
    if (term.is_zero()) break;
    res = fts_add(res, p == 0 ? term : fts_mul(term, tail_pow, out_order));
  }
  res.tighten_min_order();
  return res;
}

}  // namespace

FourierTaylorSeries subst_v(const FourierTaylorSeries& u, const FourierTaylorSeries& w,
                            int out_order) {
  require_compatible(u, w);
  if (w.min_order() < 1) throw OrderError("subst_v: substituted series must be O(v)");
  if (out_order < 0 || out_order > u.taylor_order()) {
    throw OrderError("subst_v: out_order out of range");
  }
  // Fast path: w = lambda v + O(v^2) with a mode-free linear part.
  {
    const int J = w.fourier_band();
    const Complex* r1 = w.row(1);
    bool pure = true;
    for (int k = 0; k < 2 * J + 1 && pure; ++k) {
      if (k != J && r1[k] != Complex{}) pure = false;
    }
    const Complex lambda = r1[J];
    if (pure && lambda != Complex{}) {
      FourierTaylorSeries tail = w;
      tail.set(1, 0, Complex{});
      tail.tighten_min_order();
      if (tail.is_zero() || tail.min_order() >= 2) {
        return subst_v_near_linear(u, lambda, tail, out_order);
      }
    }
  }
  // Horner in w; rows above out_order cannot contribute since w = O(v).
  const int start = std::min(u.taylor_order(), out_order);
  const int W = 2 * u.fourier_band() + 1;
  FourierTaylorSeries res(u.domain(), out_order + 1);
  for (int n = start; n >= 0; --n) {
    if (!res.is_zero()) res = fts_mul(res, w, out_order);
    const Complex* ru = u.row(n);
    Complex* r0 = res.row(0);
    bool row_nonzero = false;
    for (int k = 0; k < W; ++k) {
      r0[k] += ru[k];
      row_nonzero = row_nonzero || (ru[k] != Complex{});
    }
    if (row_nonzero) res.set_min_order(0);
  }
  res.tighten_min_order();
  return res;
}

FourierTaylorSeries compose_into(const FourierTaylorSeries& outer,
                                 const FourierTaylorSeries& h_sub,
                                 const FourierTaylorSeries& v_sub, int out_order) {
  require_compatible(outer, h_sub);
  require_compatible(outer, v_sub);
  if (!h_sub.is_zero() && h_sub.min_order() < 1) {
    throw OrderError("compose_into: h_sub must be O(v)");
  }
  if (v_sub.min_order() < 1) throw OrderError("compose_into: v_sub must be O(v)");
  if (out_order < 0 || out_order > outer.taylor_order()) {
    throw OrderError("compose_into: out_order out of range");
  }

  // sum_P (1/P!) d_h^P outer |_{v -> v_sub} * h_sub^P
  FourierTaylorSeries result(outer.domain(), out_order + 1);
  FourierTaylorSeries d_term = outer;             // (1/P!) d_h^P outer
  FourierTaylorSeries h_pow(outer.domain(), 0);   // h_sub^P
  h_pow.set(0, 0, Complex{1.0, 0.0});
  const int h_step = h_sub.is_zero() ? out_order + 1 : std::max(1, h_sub.min_order());
  for (int p = 0;; ++p) {
    const int pow_order = p * h_step;
    if (pow_order > out_order) break;
    FourierTaylorSeries term = subst_v(d_term, v_sub, out_order - pow_order);
    if (!term.is_zero()) {
      result = fts_add(result, p == 0 ? term : fts_mul(term, h_pow, out_order));
    }
    if ((p + 1) * h_step > out_order) break;
    h_pow = fts_mul(h_pow, h_sub, out_order);
    if (h_pow.is_zero()) break;
    d_term = fts_scale(deriv_h(d_term), Complex{1.0 / (p + 1.0), 0.0});
    if (d_term.is_zero()) break;
  }
  result.tighten_min_order();
  return result;
}

double coeff_sup_bound(const FourierTaylorSeries& u, double delta, double rho) {
  if (delta > u.domain().strip_halfwidth || rho > u.domain().disc_radius) {
    throw DimensionError("coeff_sup_bound: (delta, rho) exceed the declared domain");
  }
  const int N = u.taylor_order();
  const int J = u.fourier_band();
  double total = 0.0;
  double rho_n = 1.0;
  for (int n = 0; n <= N; ++n) {
    const Complex* ru = u.row(n);
    double level = 0.0;
    for (int j = -J; j <= J; ++j) {
      const double m = std::abs(ru[j + J]);
      if (m != 0.0) level += m * std::exp(std::abs(j) * delta);
    }
    total += level * rho_n;
    rho_n *= rho;
  }
  return total;
}

// ---- map germs --------------------------------------------------------------

MapGerm MapGerm::identity(const DomainSpec& domain) {
  MapGerm g;
  g.h_perturbation = FourierTaylorSeries(domain, domain.taylor_order + 1);
  g.v_perturbation = FourierTaylorSeries(domain, domain.taylor_order + 1);
  return g;
}

void MapGerm::validate() const {
  if (h_perturbation.domain() != v_perturbation.domain()) {
    throw DimensionError("map germ components live on different domains");
  }
  if (!(std::abs(multiplier) > 0.0)) throw DimensionError("multiplier must be nonzero");
  if (!h_perturbation.is_zero() && h_perturbation.min_order() < 1) {
    throw OrderError("h perturbation must vanish at v = 0");
  }
  if (!v_perturbation.is_zero() && v_perturbation.min_order() < 2) {
    throw OrderError("v perturbation must vanish to order >= 2");
  }
}

MapGerm germ_compose(const MapGerm& f, const MapGerm& g) {
  if (f.domain() != g.domain()) throw DimensionError("germ domains differ");
  const int N = f.domain().taylor_order;
  // Full v component of g as a series, O(v).
  FourierTaylorSeries gv = g.v_perturbation;
  {
    FourierTaylorSeries lin(f.domain(), 1);
    lin.set(1, 0, g.multiplier);
    gv = fts_add(gv, lin);
  }
  MapGerm out;
  out.horizontal_shift = f.horizontal_shift + g.horizontal_shift;
  out.multiplier = f.multiplier * g.multiplier;
  // f.h_pert(h + shift_g + g.h_pert, gv): constant shift folded in exactly.
  FourierTaylorSeries fh = shift_h(f.h_perturbation, g.horizontal_shift);
  FourierTaylorSeries fv = shift_h(f.v_perturbation, g.horizontal_shift);
  out.h_perturbation =
      fts_add(g.h_perturbation, compose_into(fh, g.h_perturbation, gv, N));
  out.v_perturbation = fts_add(fts_scale(g.v_perturbation, f.multiplier),
                               compose_into(fv, g.h_perturbation, gv, N));
  out.h_perturbation.tighten_min_order();
  out.v_perturbation.tighten_min_order();
  return out;
}

MapGerm germ_inverse(const MapGerm& f) {
  f.validate();
  const DomainSpec& dom = f.domain();
  const int N = dom.taylor_order;
  MapGerm inv;
  inv.horizontal_shift = -f.horizontal_shift;
  inv.multiplier = Complex{1.0, 0.0} / f.multiplier;
  inv.h_perturbation = FourierTaylorSeries(dom, N + 1);
  inv.v_perturbation = FourierTaylorSeries(dom, N + 1);
  if (f.h_perturbation.is_zero() && f.v_perturbation.is_zero()) return inv;

  // inv = L^{-1} o (id - P o inv) where f = L + P. Each pass gains `step`
  // v orders, so early passes can run at a truncated order (output order m
  // only ever depends on input orders <= m).
  const Complex inv_mult = inv.multiplier;
  const int mu_h =
      f.h_perturbation.is_zero() ? N + 2 : f.h_perturbation.min_order();
  const int mu_v =
      f.v_perturbation.is_zero() ? N + 2 : f.v_perturbation.min_order();
  const int step = std::max(1, std::min(mu_h, mu_v - 1));
  const FourierTaylorSeries fh = shift_h(f.h_perturbation, inv.horizontal_shift);
  const FourierTaylorSeries fv = shift_h(f.v_perturbation, inv.horizontal_shift);
  for (int pass = 0; pass <= 2 * N + 2; ++pass) {
    const int out = std::min(N, (pass + 1) * step + 2);
    FourierTaylorSeries inv_v_full = inv.v_perturbation;
    {
      FourierTaylorSeries lin(dom, 1);
      lin.set(1, 0, inv.multiplier);
      inv_v_full = fts_add(inv_v_full, lin);
    }
    FourierTaylorSeries ph = compose_into(fh, inv.h_perturbation, inv_v_full, out);
    FourierTaylorSeries pv = compose_into(fv, inv.h_perturbation, inv_v_full, out);
    FourierTaylorSeries next_h = fts_scale(ph, Complex{-1.0, 0.0});
    FourierTaylorSeries next_v = fts_scale(pv, -inv_mult);
    const bool stable =
        out == N &&
        germ_max_defect(MapGerm{inv.horizontal_shift, inv.multiplier, next_h, next_v},
                        inv) == 0.0;
    inv.h_perturbation = std::move(next_h);
    inv.v_perturbation = std::move(next_v);
    if (stable) break;
  }
  return inv;
}

double germ_max_defect(const MapGerm& a, const MapGerm& b) {
  double m = std::abs(a.horizontal_shift - b.horizontal_shift);
  m = std::max(m, std::abs(a.multiplier - b.multiplier));
  FourierTaylorSeries dh = fts_sub(a.h_perturbation, b.h_perturbation);
  FourierTaylorSeries dv = fts_sub(a.v_perturbation, b.v_perturbation);
  m = std::max(m, dh.max_abs_coeff());
  m = std::max(m, dv.max_abs_coeff());
  return m;
}

// ---- flows ------------------------------------------------------------------

void VerticalVectorField::validate() const {
  if (h_component.domain() != v_component.domain()) {
    throw DimensionError("vector field components live on different domains");
  }
  if (!h_component.is_zero() && h_component.min_order() < 2) {
    throw OrderError("vector field h component must vanish to order >= 2");
  }
  if (!v_component.is_zero() && v_component.min_order() < 2) {
    throw OrderError("vector field v component must vanish to order >= 2");
  }
}

namespace {

// Lie derivative along Y of a coefficient series u: Y_h d_h u + Y_v d_v u.
FourierTaylorSeries lie_apply(const VerticalVectorField& y, const FourierTaylorSeries& u,
                              int out_order) {
  const DomainSpec& dom = u.domain();
  FourierTaylorSeries out(dom, out_order + 1);
  if (!y.h_component.is_zero()) {
    out = fts_add(out, fts_mul(y.h_component, deriv_h(u), out_order));
  }
  if (!y.v_component.is_zero()) {
    // d_v u: shift rows down by one with factor n.
    FourierTaylorSeries du(dom, std::max(0, u.min_order() - 1));
    const int W = 2 * dom.fourier_band + 1;
    for (int n = 1; n <= dom.taylor_order; ++n) {
      const Complex* ru = u.row(n);
      Complex* ro = du.row(n - 1);
      for (int k = 0; k < W; ++k) ro[k] = ru[k] * static_cast<double>(n);
    }
    du.tighten_min_order();
    out = fts_add(out, fts_mul(y.v_component, du, out_order));
  }
  out.tighten_min_order();
  return out;
}

}  // namespace

MapGerm flow_time_one(const VerticalVectorField& y, int out_order) {
  y.validate();
  const DomainSpec& dom = y.domain();
  if (out_order < 0 || out_order > dom.taylor_order) {
    throw OrderError("flow_time_one: out_order out of range");
  }
  // exp(L_Y) applied to the coordinate functions:
  //   h -> h + sum_{m>=1} (1/m!) L_Y^{m-1} Y_h,  v likewise.
  MapGerm out = MapGerm::identity(dom);
  FourierTaylorSeries term_h = y.h_component;
  FourierTaylorSeries term_v = y.v_component;
  FourierTaylorSeries acc_h(dom, out_order + 1);
  FourierTaylorSeries acc_v(dom, out_order + 1);
  double factorial = 1.0;
  for (int m = 1; m <= out_order + 1; ++m) {
    factorial *= m;
    const Complex w{1.0 / factorial, 0.0};
    acc_h = fts_add(acc_h, fts_scale(term_h, w));
    acc_v = fts_add(acc_v, fts_scale(term_v, w));
    if (term_h.is_zero() && term_v.is_zero()) break;
    VerticalVectorField cur{term_h, term_v};
    term_h = lie_apply(y, cur.h_component, out_order);
    term_v = lie_apply(y, cur.v_component, out_order);
  }
  acc_h = jet(acc_h, out_order, JetMode::UpTo);
  acc_v = jet(acc_v, out_order, JetMode::UpTo);
  acc_h.tighten_min_order();
  acc_v.tighten_min_order();
  out.h_perturbation = acc_h;
  out.v_perturbation = acc_v;
  return out;
}

VerticalVectorField log_of_map(const MapGerm& f) {
  f.validate();
  if (f.horizontal_shift != Complex{} || f.multiplier != Complex{1.0, 0.0}) {
    throw OrderError("log_of_map requires a germ tangent to the identity");
  }
  if (!f.h_perturbation.is_zero() && f.h_perturbation.min_order() < 2) {
    throw OrderError("log_of_map requires perturbations of order >= 2");
  }
  const DomainSpec& dom = f.domain();
  const int N = dom.taylor_order;
  VerticalVectorField y{f.h_perturbation, f.v_perturbation};
  // Fixed point Y = F - I - (exp(L_Y) - I - L_Y) id; each pass fixes one more
  // v order because the correction raises order by at least one.
  for (int pass = 0; pass < N; ++pass) {
    MapGerm flow = flow_time_one(y, N);
    FourierTaylorSeries err_h = fts_sub(f.h_perturbation, flow.h_perturbation);
    FourierTaylorSeries err_v = fts_sub(f.v_perturbation, flow.v_perturbation);
    if (err_h.is_zero() && err_v.is_zero()) break;
    y.h_component = fts_add(y.h_component, err_h);
    y.v_component = fts_add(y.v_component, err_v);
    y.h_component.tighten_min_order();
    y.v_component.tighten_min_order();
  }
  return y;
}

// ---- serialization -----------------------------------------------------------

std::string series_to_json(const FourierTaylorSeries& u, int indent) {
  nlohmann::json j;
  j["N"] = u.taylor_order();
  j["J"] = u.fourier_band();
  j["min_order"] = u.min_order();
  j["delta"] = u.domain().strip_halfwidth;
  j["rho"] = u.domain().disc_radius;
  nlohmann::json coeffs = nlohmann::json::array();
  for (int n = 0; n <= u.taylor_order(); ++n) {
    for (int q = -u.fourier_band(); q <= u.fourier_band(); ++q) {
      const Complex c = u.at(n, q);
      if (c != Complex{}) {
        coeffs.push_back({n, q, c.real(), c.imag()});
      }
    }
  }
  j["coeffs"] = std::move(coeffs);
  return indent >= 0 ? j.dump(indent) : j.dump();
}

FourierTaylorSeries series_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  DomainSpec dom;
  dom.taylor_order = j.at("N").get<int>();
  dom.fourier_band = j.at("J").get<int>();
  dom.strip_halfwidth = j.value("delta", 1.0);
  dom.disc_radius = j.value("rho", 1.0);
  FourierTaylorSeries u(dom, 0);
  for (const auto& entry : j.at("coeffs")) {
    u.set(entry.at(0).get<int>(), entry.at(1).get<int>(),
          Complex{entry.at(2).get<double>(), entry.at(3).get<double>()});
  }
  u.set_min_order(j.value("min_order", 0));
  if (!u.min_order_consistent()) u.tighten_min_order();
  return u;
}

}  // namespace divlab
