#include "divlab/arnold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace divlab {

namespace {

// Multiply by v: shift Taylor rows up by one.
FourierTaylorSeries times_v(const FourierTaylorSeries& u) {
  FourierTaylorSeries out(u.domain(), std::min(u.min_order() + 1, u.taylor_order() + 1));
  const int W = 2 * u.fourier_band() + 1;
  for (int n = 0; n < u.taylor_order(); ++n) {
    const Complex* ru = u.row(n);
    Complex* ro = out.row(n + 1);
    for (int k = 0; k < W; ++k) ro[k] = ru[k];
  }
  return out;
}

int occupied_band(const FourierTaylorSeries& u) {
  int band = 0;
  for (int n = 0; n <= u.taylor_order(); ++n) {
    const Complex* r = u.row(n);
    for (int j = -u.fourier_band(); j <= u.fourier_band(); ++j) {
      if (r[j + u.fourier_band()] != Complex{}) band = std::max(band, std::abs(j));
    }
  }
  return band;
}

double level_coeff_norm(const FourierTaylorSeries& u, int row, double delta) {
  double s = 0.0;
  const int J = u.fourier_band();
  const Complex* r = u.row(row);
  for (int j = -J; j <= J; ++j) {
    const double m = std::abs(r[j + J]);
    if (m != 0.0) s += m * std::exp(std::abs(j) * delta);
  }
  return s;
}

struct ResidualPair {
  FourierTaylorSeries h;
  FourierTaylorSeries v;
};

// Linearization defects of g, each component truncated to out_order; g must
// be tangent to the identity.
//
// Full mode measures f o g - g o f_hat componentwise. Vertical-only mode
// keeps the horizontal residual alive, and that residual would leak into the
// fiber levels through d_h g^v; its fiber defect therefore evaluates the
// change at the perturbed horizontal argument,
//   (f o g)^v - g^v((f o g)^h, lambda v),
// which has the same leading level as the conjugated map's fiber residual.
ResidualPair conjugacy_residual(const TorusNeighborhood& nbhd, const MapGerm& g,
                                int out_order, bool vertical_mode) {
  const Complex two_omega = 2.0 * nbhd.omega;
  const Complex lambda = nbhd.lambda.value();
  const DomainSpec& dom = g.domain();
  // Full v component of g, O(v).
  FourierTaylorSeries gv_full = g.v_perturbation;
  {
    FourierTaylorSeries lin(dom, 1);
    lin.set(1, 0, g.multiplier);
    gv_full = fts_add(gv_full, lin);
  }
  // f o g:
  //   h: h + g_h + 2w + vb(g)
  //   v: lambda * gv + lambda * (v a)(g) * gv
  FourierTaylorSeries vb_g =
      compose_into(nbhd.vb, g.h_perturbation, gv_full, out_order);
  FourierTaylorSeries va_g =
      compose_into(nbhd.va, g.h_perturbation, gv_full, out_order);
  FourierTaylorSeries fg_h = fts_add(g.h_perturbation, vb_g);
  FourierTaylorSeries fg_v =
      fts_add(fts_scale(g.v_perturbation, lambda),
              fts_scale(fts_mul(va_g, gv_full, out_order), lambda));
  fg_h.tighten_min_order(1e-300);
  FourierTaylorSeries gf_h = scale_v(shift_h(g.h_perturbation, two_omega), lambda);
  FourierTaylorSeries gf_v;
  if (vertical_mode) {
    FourierTaylorSeries lam_v(dom, 1);
    lam_v.set(1, 0, lambda);
    gf_v = compose_into(shift_h(g.v_perturbation, two_omega), fg_h, lam_v, out_order);
  } else {
    gf_v = scale_v(shift_h(g.v_perturbation, two_omega), lambda);
  }
  ResidualPair r;
  r.h = fts_sub(fg_h, gf_h);
  r.v = fts_sub(fg_v, gf_v);
  r.h.tighten_min_order(1e-300);
  r.v.tighten_min_order(1e-300);
  return r;
}

}  // namespace

TorusNeighborhood TorusNeighborhood::build(const Multiplier& lambda, Complex omega,
                                           const FourierTaylorSeries& va,
                                           const FourierTaylorSeries& vb) {
  if (!(omega.imag() > 0.0)) throw DimensionError("Im(omega) must be > 0");
  if (va.domain() != vb.domain()) throw DimensionError("generator domains differ");
  if (!va.is_zero() && va.min_order() < 1) {
    throw OrderError("v*a factor must vanish at v = 0");
  }
  if (!vb.is_zero() && vb.min_order() < 1) {
    throw OrderError("v*b factor must vanish at v = 0");
  }
  TorusNeighborhood n;
  n.lambda = lambda;
  n.omega = omega;
  n.va = va;
  n.vb = vb;
  n.domain = va.domain();
  bool a_v_only = true;
  for (int row = 0; row <= va.taylor_order() && a_v_only; ++row) {
    for (int j = -va.fourier_band(); j <= va.fourier_band(); ++j) {
      if (j != 0 && va.coeff_or_zero(row, j) != Complex{}) {
        a_v_only = false;
        break;
      }
    }
  }
  n.vertical_is_v_only = a_v_only && vb.is_zero();
  return n;
}

MapGerm TorusNeighborhood::transition_germ() const {
  MapGerm f;
  f.horizontal_shift = 2.0 * omega;
  f.multiplier = lambda.value();
  f.h_perturbation = vb;
  f.v_perturbation = fts_scale(times_v(va), lambda.value());
  return f;
}

MapGerm TorusNeighborhood::linear_germ() const {
  MapGerm f = MapGerm::identity(domain);
  f.horizontal_shift = 2.0 * omega;
  f.multiplier = lambda.value();
  return f;
}

int TorusNeighborhood::generator_band() const {
  return std::max(occupied_band(va), occupied_band(vb));
}

std::string to_string(OverlapLabel label) {
  switch (label) {
    case OverlapLabel::Phi12_0: return "Phi12,0";
    case OverlapLabel::Phi12_1: return "Phi12,1";
    case OverlapLabel::Phi43_0: return "Phi43,0";
    case OverlapLabel::Phi43_1: return "Phi43,1";
    case OverlapLabel::Phi14: return "Phi14";
    case OverlapLabel::Phi23: return "Phi23";
    case OverlapLabel::Phi13_0: return "Phi13,0";
    case OverlapLabel::Phi13_1: return "Phi13,1";
    case OverlapLabel::Phi42_0: return "Phi42,0";
    case OverlapLabel::Phi42_1: return "Phi42,1";
  }
  return "?";
}

std::vector<CoveringTransition> make_covering(const TorusNeighborhood& nbhd) {
  const MapGerm f = nbhd.transition_germ();
  const MapGerm id = MapGerm::identity(nbhd.domain);
  return {
      {OverlapLabel::Phi12_0, id}, {OverlapLabel::Phi12_1, f},
      {OverlapLabel::Phi43_0, id}, {OverlapLabel::Phi43_1, f},
      {OverlapLabel::Phi14, id},   {OverlapLabel::Phi23, id},
      {OverlapLabel::Phi13_0, id}, {OverlapLabel::Phi13_1, f},
      {OverlapLabel::Phi42_0, id}, {OverlapLabel::Phi42_1, f},
  };
}

namespace {

const MapGerm& covering_at(const std::vector<CoveringTransition>& covering,
                           OverlapLabel label) {
  for (const auto& t : covering) {
    if (t.label == label) return t.map;
  }
  throw DimensionError("covering is missing " + to_string(label));
}

double defect_through_order(const MapGerm& a, const MapGerm& b, int order) {
  double m = std::abs(a.horizontal_shift - b.horizontal_shift);
  m = std::max(m, std::abs(a.multiplier - b.multiplier));
  FourierTaylorSeries dh =
      jet(fts_sub(a.h_perturbation, b.h_perturbation), order, JetMode::UpTo);
  FourierTaylorSeries dv =
      jet(fts_sub(a.v_perturbation, b.v_perturbation), order, JetMode::UpTo);
  return std::max({m, dh.max_abs_coeff(), dv.max_abs_coeff()});
}

}  // namespace

CocycleReport verify_cocycle(const std::vector<CoveringTransition>& covering,
                             int order) {
  using L = OverlapLabel;
  struct Identity {
    L target;
    L outer;
    L inner;
    const char* name;
  };
  // Triple-overlap relations of the four-chart covering; everything reduces
  // to compositions with the identity pieces.
  const Identity identities[] = {
      {L::Phi13_1, L::Phi12_1, L::Phi23, "Phi13,1 = Phi12,1 o Phi23"},
      {L::Phi13_1, L::Phi14, L::Phi43_1, "Phi13,1 = Phi14 o Phi43,1"},
      {L::Phi13_0, L::Phi12_0, L::Phi23, "Phi13,0 = Phi12,0 o Phi23"},
      {L::Phi42_1, L::Phi43_1, L::Phi23, "Phi42,1 = Phi43,1 o Phi32"},
      {L::Phi42_1, L::Phi14, L::Phi12_1, "Phi42,1 = Phi41 o Phi12,1"},
      {L::Phi42_0, L::Phi43_0, L::Phi23, "Phi42,0 = Phi43,0 o Phi32"},
  };
  CocycleReport rep;
  for (const auto& id : identities) {
    const MapGerm composed =
        germ_compose(covering_at(covering, id.outer), covering_at(covering, id.inner));
    const double d = defect_through_order(composed, covering_at(covering, id.target),
                                          order);
    if (d > rep.max_defect) {
      rep.max_defect = d;
      rep.worst_identity = id.name;
    }
  }
  return rep;
}

CocycleReport verify_cocycle(const TorusNeighborhood& nbhd, int order) {
  if (order > nbhd.domain.taylor_order) throw OrderError("cocycle order exceeds domain");
  return verify_cocycle(make_covering(nbhd), order);
}

FourierTaylorSeries solve_cohomological_level(const TorusNeighborhood& nbhd, int n,
                                              const FourierTaylorSeries& rhs,
                                              double resonance_threshold) {
  if (n < 1) throw OrderError("level index must be >= 1");
  FourierTaylorSeries out(rhs.domain(), rhs.min_order());
  const int J = rhs.fourier_band();
  for (int row = 0; row <= rhs.taylor_order(); ++row) {
    const Complex* rr = rhs.row(row);
    Complex* ro = out.row(row);
    for (int j = -J; j <= J; ++j) {
      const Complex c = rr[j + J];
      if (c == Complex{}) continue;
      const Complex den = nbhd.lambda.power(n) *
                              std::exp(Complex{0.0, 1.0} * (2.0 * nbhd.omega) *
                                       static_cast<double>(j)) -
                          Complex{1.0, 0.0};
      const double mag = divisor(nbhd.lambda, nbhd.omega, n, j);
      const double scale =
          1.0 + nbhd.lambda.power_modulus(n) *
                    std::exp(-2.0 * nbhd.omega.imag() * static_cast<double>(j));
      const bool exact_hit = j == 0 && nbhd.lambda.power_is_one_exact(n);
      if (exact_hit || mag < resonance_threshold * scale) {
        throw ResonanceError("resonant divisor at level " + std::to_string(n) +
                                 ", mode " + std::to_string(j),
                             n, j, mag);
      }
      ro[j + J] = c / den;
    }
  }
  return out;
}

std::pair<FourierTaylorSeries, FourierTaylorSeries> solve_level(
    const TorusNeighborhood& nbhd, int n, const FourierTaylorSeries& rhs_a,
    const FourierTaylorSeries& rhs_b, double resonance_threshold) {
  return {solve_cohomological_level(nbhd, n, rhs_a, resonance_threshold),
          solve_cohomological_level(nbhd, n, rhs_b, resonance_threshold)};
}

namespace {

struct DivisorStats {
  double min_div = std::numeric_limits<double>::infinity();
  double max_div = 0.0;
};

DivisorStats level_divisor_stats(const TorusNeighborhood& nbhd, int n,
                                 const FourierTaylorSeries& rhs) {
  DivisorStats s;
  const int J = rhs.fourier_band();
  for (int row = 0; row <= rhs.taylor_order(); ++row) {
    const Complex* rr = rhs.row(row);
    for (int j = -J; j <= J; ++j) {
      if (rr[j + J] == Complex{}) continue;
      const double d = divisor(nbhd.lambda, nbhd.omega, n, j);
      s.min_div = std::min(s.min_div, d);
      s.max_div = std::max(s.max_div, d);
    }
  }
  if (s.max_div == 0.0) {
    s.min_div = 0.0;
  }
  return s;
}

void require_band(const TorusNeighborhood& nbhd, int order) {
  const int band = nbhd.generator_band();
  const long required = static_cast<long>(band) * order;
  if (required > nbhd.domain.fourier_band) {
    throw BandOverflowError(
        "Fourier band " + std::to_string(nbhd.domain.fourier_band) +
            " cannot hold the residual support; need " + std::to_string(required),
        static_cast<int>(required));
  }
  if (order > nbhd.domain.taylor_order) {
    throw OrderError("requested order exceeds the domain Taylor order");
  }
}

LinearizationResult finish_result(const TorusNeighborhood& nbhd, LinearizeMode mode,
                                  MapGerm g, std::vector<LevelData> per_level) {
  LinearizationResult res;
  res.mode = mode;
  res.g = std::move(g);
  const MapGerm f = nbhd.transition_germ();
  res.conjugated = germ_compose(germ_inverse(res.g), germ_compose(f, res.g));
  res.residual_h = res.conjugated.h_perturbation;
  res.residual_v = res.conjugated.v_perturbation;
  res.per_level = std::move(per_level);
  res.order_achieved = residual_order(res);
  return res;
}

}  // namespace

LinearizationResult vertical_linearize(const TorusNeighborhood& nbhd, int order,
                                       double resonance_threshold) {
  require_band(nbhd, order);
  const Complex lambda = nbhd.lambda.value();
  MapGerm g = MapGerm::identity(nbhd.domain);
  std::vector<LevelData> per_level;
  for (int n = 1; n < order; ++n) {
    ResidualPair r = conjugacy_residual(nbhd, g, n + 1, /*vertical_mode=*/true);
    FourierTaylorSeries rhs =
        fts_scale(jet(r.v, n + 1, JetMode::ExactDegree), 1.0 / lambda);
    LevelData lvl;
    lvl.n = n;
    lvl.b = FourierTaylorSeries(nbhd.domain, nbhd.domain.taylor_order + 1);
    lvl.rhs_norm = level_coeff_norm(rhs, n + 1, nbhd.domain.strip_halfwidth);
    if (rhs.is_zero()) {
      lvl.a = rhs;
      per_level.push_back(std::move(lvl));
      continue;
    }
    const DivisorStats stats = level_divisor_stats(nbhd, n, rhs);
    lvl.min_divisor = stats.min_div;
    lvl.max_divisor = stats.max_div;
    lvl.a = solve_cohomological_level(nbhd, n, rhs, resonance_threshold);
    MapGerm corrector = MapGerm::identity(nbhd.domain);
    corrector.v_perturbation = lvl.a;  // v + A_n(h) v^{n+1}
    g = germ_compose(g, corrector);
    per_level.push_back(std::move(lvl));
  }
  return finish_result(nbhd, LinearizeMode::Vertical, std::move(g),
                       std::move(per_level));
}

LinearizationResult full_linearize(const TorusNeighborhood& nbhd, int order,
                                   Scheme scheme, double resonance_threshold) {
  require_band(nbhd, order);
  const Complex lambda = nbhd.lambda.value();
  MapGerm g = MapGerm::identity(nbhd.domain);
  std::vector<LevelData> per_level;

  // Horizontal corrections run through level `order`, vertical ones through
  // `order - 1` (the degree-(order+1) fiber level sits past the truncation).
  if (scheme == Scheme::OrderByOrder) {
    for (int n = 1; n <= order; ++n) {
      const bool solve_a = n < order;
      ResidualPair r =
          conjugacy_residual(nbhd, g, std::min(n + 1, order), /*vertical_mode=*/false);
      FourierTaylorSeries rhs_a =
          solve_a ? fts_scale(jet(r.v, n + 1, JetMode::ExactDegree), 1.0 / lambda)
                  : FourierTaylorSeries(nbhd.domain, nbhd.domain.taylor_order + 1);
      FourierTaylorSeries rhs_b = jet(r.h, n, JetMode::ExactDegree);
      LevelData lvl;
      lvl.n = n;
      lvl.rhs_norm =
          level_coeff_norm(rhs_a, std::min(n + 1, nbhd.domain.taylor_order),
                           nbhd.domain.strip_halfwidth) +
          level_coeff_norm(rhs_b, n, nbhd.domain.strip_halfwidth);
      const DivisorStats stats_a = level_divisor_stats(nbhd, n, rhs_a);
      const DivisorStats stats_b = level_divisor_stats(nbhd, n, rhs_b);
      lvl.min_divisor = std::min(stats_a.min_div, stats_b.min_div);
      lvl.max_divisor = std::max(stats_a.max_div, stats_b.max_div);
      auto [a, b] = solve_level(nbhd, n, rhs_a, rhs_b, resonance_threshold);
      lvl.a = a;
      lvl.b = b;
      MapGerm corrector = MapGerm::identity(nbhd.domain);
      corrector.v_perturbation = a;
      corrector.h_perturbation = b;
      g = germ_compose(g, corrector);
      per_level.push_back(std::move(lvl));
    }
    return finish_result(nbhd, LinearizeMode::Full, std::move(g),
                         std::move(per_level));
  }

  // Order doubling: the pass at agreement s solves jets s..min(2s-1, order)
  // from the frozen residual of the current conjugated map, then recomposes.
  MapGerm current = nbhd.transition_germ();
  int s = 1;
  while (s <= order) {
    const int top = std::min(2 * s - 1, order);
    MapGerm corrector = MapGerm::identity(nbhd.domain);
    FourierTaylorSeries acc_a(nbhd.domain, nbhd.domain.taylor_order + 1);
    FourierTaylorSeries acc_b(nbhd.domain, nbhd.domain.taylor_order + 1);
    for (int l = s; l <= top; ++l) {
      const bool solve_a = l < order;
      FourierTaylorSeries rhs_a =
          solve_a ? fts_scale(jet(current.v_perturbation, l + 1, JetMode::ExactDegree),
                              1.0 / lambda)
                  : FourierTaylorSeries(nbhd.domain, nbhd.domain.taylor_order + 1);
      FourierTaylorSeries rhs_b =
          jet(current.h_perturbation, l, JetMode::ExactDegree);
      LevelData lvl;
      lvl.n = l;
      lvl.rhs_norm =
          level_coeff_norm(rhs_a, std::min(l + 1, nbhd.domain.taylor_order),
                           nbhd.domain.strip_halfwidth) +
          level_coeff_norm(rhs_b, l, nbhd.domain.strip_halfwidth);
      const DivisorStats stats_a = level_divisor_stats(nbhd, l, rhs_a);
      const DivisorStats stats_b = level_divisor_stats(nbhd, l, rhs_b);
      lvl.min_divisor = std::min(stats_a.min_div, stats_b.min_div);
      lvl.max_divisor = std::max(stats_a.max_div, stats_b.max_div);
      auto [a, b] = solve_level(nbhd, l, rhs_a, rhs_b, resonance_threshold);
      lvl.a = a;
      lvl.b = b;
      acc_a = fts_add(acc_a, a);
      acc_b = fts_add(acc_b, b);
      per_level.push_back(std::move(lvl));
    }
    corrector.v_perturbation = acc_a;
    corrector.h_perturbation = acc_b;
    g = germ_compose(g, corrector);
    current = germ_compose(germ_inverse(corrector), germ_compose(current, corrector));
    s = top + 1;
  }
  return finish_result(nbhd, LinearizeMode::Full, std::move(g), std::move(per_level));
}

int residual_order(const LinearizationResult& result, double tol) {
  const FourierTaylorSeries& v = result.residual_v;
  double scale = std::max(1.0, v.max_abs_coeff());
  scale = std::max(scale, result.residual_h.max_abs_coeff());
  const int N = v.taylor_order();
  int order = N;
  for (int n = 0; n <= N; ++n) {
    const bool v_bad = v.level_max_abs(n) >= tol * scale;
    const bool h_bad = result.mode == LinearizeMode::Full &&
                       result.residual_h.level_max_abs(n) >= tol * scale;
    if (v_bad || h_bad) {
      order = n - 1;
      break;
    }
  }
  return order;
}

FoliationReport foliation_extract(const LinearizationResult& result, double tol) {
  if (result.mode != LinearizeMode::Vertical) {
    throw OrderError("foliation extraction expects a vertical linearization result");
  }
  FoliationReport rep;
  const FourierTaylorSeries& v = result.conjugated.v_perturbation;
  const double scale = std::max(1.0, v.max_abs_coeff());
  const int N = v.taylor_order();
  const int J = v.fourier_band();
  for (int n = 0; n <= N; ++n) {
    for (int j = -J; j <= J; ++j) {
      if (j == 0) continue;
      if (std::abs(v.coeff_or_zero(n, j)) > tol * scale) rep.offending.emplace_back(n, j);
    }
  }
  rep.foliated = rep.offending.empty();
  rep.holonomy.assign(N + 1, Complex{});
  if (N >= 1) rep.holonomy[1] = result.conjugated.multiplier;
  for (int n = 2; n <= N; ++n) rep.holonomy[n] = v.coeff_or_zero(n, 0);
  return rep;
}

DecayReport decay_check(const LinearizationResult& result,
                        const TorusNeighborhood& nbhd, double delta,
                        double delta_prime, double c_const) {
  if (!(delta_prime < delta) || delta > nbhd.domain.strip_halfwidth) {
    throw DimensionError("need delta_prime < delta <= strip halfwidth");
  }
  DecayReport rep;
  rep.all_ok = true;
  for (const LevelData& lvl : result.per_level) {
    if (lvl.a.is_zero()) continue;
    LevelDecay d;
    d.n = lvl.n;
    const int row = lvl.n + 1;
    const int J = lvl.a.fourier_band();
    for (int j = -J; j <= J; ++j) {
      const double m = std::abs(lvl.a.coeff_or_zero(row, j));
      if (m == 0.0) continue;
      const double fit = m * std::exp(std::abs(j) * delta_prime);
      if (fit > d.c_fit) {
        d.c_fit = fit;
        d.worst_j = j;
      }
    }
    const double base = nbhd.lambda.power_distance_to_one(lvl.n);
    d.bound = base > 0.0 ? c_const / base * lvl.rhs_norm
                         : std::numeric_limits<double>::infinity();
    d.ok = d.c_fit <= d.bound;
    rep.all_ok = rep.all_ok && d.ok;
    rep.levels.push_back(d);
  }
  return rep;
}

}  // namespace divlab
