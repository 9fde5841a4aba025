#include "divlab/majorant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace divlab {

namespace {

using RSeries = std::vector<double>;  // real power series, index = degree

RSeries radd(const RSeries& a, const RSeries& b) {
  RSeries out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

RSeries rscale(RSeries a, double f) {
  for (double& v : a) v *= f;
  return a;
}

RSeries rmul(const RSeries& a, const RSeries& b, int order) {
  RSeries out(order + 1, 0.0);
  for (int i = 0; i <= order && i < static_cast<int>(a.size()); ++i) {
    if (a[i] == 0.0) continue;
    const int jmax = std::min<int>(order - i, static_cast<int>(b.size()) - 1);
    for (int j = 0; j <= jmax; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// (1 - x)^{-c} for x = O(t), via the logarithmic-derivative recurrence
// y' (1 - x) = c y x'.
RSeries inv_pow(const RSeries& x, double c, int order) {
  if (!x.empty() && x[0] != 0.0) throw OrderError("inv_pow needs x(0) = 0");
  RSeries y(order + 1, 0.0);
  y[0] = 1.0;
  auto xat = [&](int i) { return i < static_cast<int>(x.size()) ? x[i] : 0.0; };
  for (int m = 0; m < order; ++m) {
    // (m+1) y_{m+1} = c sum_{i=0..m} (i+1) x_{i+1} y_{m-i}
    //                 + sum_{i=0..m-1} (i+1) y_{i+1} x_{m-i}
    double s = 0.0;
    for (int i = 0; i <= m; ++i) s += c * (i + 1) * xat(i + 1) * y[m - i];
    for (int i = 0; i + 1 <= m; ++i) s += (i + 1) * y[i + 1] * xat(m - i);
    y[m + 1] = s / (m + 1);
  }
  return y;
}

void check_coefficient(double value, int m) {
  if (!std::isfinite(value)) {
    throw ConfigError("majorant coefficient overflow at order " + std::to_string(m));
  }
  if (value < -1e-15) {
    throw ConfigError("negative majorant coefficient at order " + std::to_string(m));
  }
}

}  // namespace

EtaSequence eta_sequence(const std::vector<double>& k_from_m2, int length) {
  if (length < 1) throw OrderError("eta length must be >= 1");
  if (static_cast<int>(k_from_m2.size()) < length - 1) {
    throw OrderError("need K_m for every 2 <= m <= length");
  }
  EtaSequence out;
  out.length = length;
  out.k.assign(length, 0.0);
  out.eta.assign(length, 0.0);
  out.eta[0] = 1.0;
  for (int m = 2; m <= length; ++m) {
    const double k_m = k_from_m2[m - 2];
    if (!(k_m >= 0.0)) throw OrderError("K_m must be >= 0");
    out.k[m - 1] = k_m;
    // best_j = max product of eta parts with total <= j, parts < m.
    std::vector<double> best(m + 1, 1.0);
    for (int j = 1; j <= m; ++j) {
      double b = best[j - 1];  // slack branch
      for (int i = 1; i <= std::min(j, m - 1); ++i) {
        b = std::max(b, out.eta[i - 1] * best[j - i]);
      }
      best[j] = b;
    }
    out.eta[m - 1] = k_m * best[m];
  }
  return out;
}

double eta_partition_max_bruteforce(const std::vector<double>& eta_prefix, int m) {
  // Enumerate all multisets of parts 1..m-1 with sum <= m (nonincreasing parts).
  double best = 1.0;
  std::vector<int> parts;
  auto rec = [&](auto&& self, int max_part, int remaining, double product) -> void {
    best = std::max(best, product);
    for (int p = std::min(max_part, remaining); p >= 1; --p) {
      self(self, p, remaining - p, product * eta_prefix.at(p - 1));
    }
  };
  rec(rec, m - 1, m, 1.0);
  return best;
}

GrowthFit growth_fit(const EtaSequence& eta) {
  const int n = eta.length;
  if (n < 4) throw OrderError("growth_fit needs length >= 4");
  const int start = n / 2;
  // Superexponential check: log increments keep growing across the tail half.
  bool increments_increasing = true;
  double first_inc = 0.0;
  double last_inc = 0.0;
  for (int m = start + 1; m <= n; ++m) {
    const double inc = std::log(eta.at(m)) - std::log(eta.at(m - 1));
    if (m == start + 1) {
      first_inc = inc;
    } else if (inc < last_inc - 1e-12) {
      increments_increasing = false;
    }
    last_inc = inc;
  }
  GrowthFit fit;
  if (increments_increasing && last_inc > first_inc + 1e-9) {
    fit.bounded = false;
    return fit;
  }
  // Least-squares on the tail half of log eta_m against m.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (int m = start; m <= n; ++m) {
    const double y = std::log(eta.at(m));
    sx += m;
    sy += y;
    sxx += static_cast<double>(m) * m;
    sxy += m * y;
    ++count;
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / count;
  fit.bounded = true;
  fit.l = std::exp(slope);
  fit.l0 = std::exp(intercept);
  // Inflate l0 so the bound holds over the whole range.
  for (int m = 1; m <= n; ++m) {
    fit.l0 = std::max(fit.l0, eta.at(m) / std::pow(fit.l, m));
  }
  return fit;
}

void MajorantParams::validate() const {
  if (!(r >= 0.0)) throw ConfigError("R must be >= 0");
  if (!(m > 0.0)) throw ConfigError("M must be > 0");
  if (!(m_tilde > 0.0)) throw ConfigError("Mt must be > 0");
  if (n < 1 || d < 1) throw ConfigError("dimensions must be >= 1");
  if (!(c0 >= 0.0)) throw ConfigError("C0 must be >= 0");
}

MajorantSeries solve_vertical_majorant(const MajorantParams& p, int order) {
  p.validate();
  if (order < 2) throw OrderError("majorant order must be >= 2");
  MajorantSeries out;
  out.a.assign(order + 1, 0.0);
  for (int m = 2; m <= order; ++m) {
    // s = t + A, x = R s; everything below order m is already final.
    RSeries s(m + 1, 0.0);
    s[1] = 1.0;
    for (int i = 2; i < m; ++i) s[i] = out.a[i];
    RSeries x = rscale(s, p.r);
    RSeries g = inv_pow(x, static_cast<double>(p.d), m);
    g[0] -= 1.0;
    for (int i = 1; i <= m && i < static_cast<int>(x.size()); ++i) {
      g[i] -= p.d * x[i];
    }
    RSeries g_over_m = rscale(g, 1.0 / p.m);
    RSeries w = inv_pow(g_over_m, static_cast<double>(p.n), m);
    w[0] -= 1.0;  // (M/(M-g))^n - 1
    RSeries a_cur(out.a.begin(), out.a.begin() + m);
    RSeries rhs = rscale(radd(g, rmul(a_cur, w, m)), p.m_tilde);
    const double value = m < static_cast<int>(rhs.size()) ? rhs[m] : 0.0;
    check_coefficient(value, m);
    out.a[m] = std::max(0.0, value);
  }
  return out;
}

MajorantSeries solve_full_majorant(const MajorantParams& p, int order) {
  p.validate();
  if (order < 2) throw OrderError("majorant order must be >= 2");
  MajorantSeries out;
  out.a.assign(order + 1, 0.0);
  for (int m = 2; m <= order; ++m) {
    RSeries a_cur(m + 1, 0.0);
    for (int i = 2; i < m; ++i) a_cur[i] = out.a[i];
    RSeries a_over_m = rscale(a_cur, 1.0 / p.m);
    RSeries q = inv_pow(a_over_m, static_cast<double>(p.n), m);  // (1-A/M)^{-n}
    // first bracket: q - 1 - n A / M
    RSeries bracket = q;
    bracket[0] -= 1.0;
    for (int i = 0; i <= m && i < static_cast<int>(a_over_m.size()); ++i) {
      bracket[i] -= p.n * a_over_m[i];
    }
    // second: (1 - (Rt + RA))^{-d} - 1 - d (Rt + RA)
    RSeries s(m + 1, 0.0);
    s[1] = 1.0;
    for (int i = 2; i < m; ++i) s[i] = out.a[i];
    RSeries x = rscale(s, p.r);
    RSeries inner = inv_pow(x, static_cast<double>(p.d), m);
    inner[0] -= 1.0;
    for (int i = 1; i <= m && i < static_cast<int>(x.size()); ++i) {
      inner[i] -= p.d * x[i];
    }
    RSeries rhs = rscale(
        radd(rscale(bracket, p.c0), rmul(q, inner, m)), p.m_tilde);
    const double value = m < static_cast<int>(rhs.size()) ? rhs[m] : 0.0;
    check_coefficient(value, m);
    out.a[m] = std::max(0.0, value);
  }
  return out;
}

double radius_lower_bound(const MajorantSeries& a) {
  const int n = a.length();
  if (n < 10) throw OrderError("radius_lower_bound needs length >= 10");
  double worst = 0.0;
  for (int m = n / 2; m <= n; ++m) {
    const double v = a.at(m);
    if (v > 0.0) worst = std::max(worst, std::pow(v, 1.0 / static_cast<double>(m)));
  }
  if (worst == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / worst;
}

DominationVerdict domination_check(const std::vector<double>& f_norms_from_m2,
                                   const EtaSequence& eta, const MajorantSeries& a) {
  DominationVerdict v;
  v.ok = true;
  const int top = std::min<int>({static_cast<int>(f_norms_from_m2.size()) + 1,
                                 eta.length, a.length()});
  for (int m = 2; m <= top; ++m) {
    if (f_norms_from_m2[m - 2] > eta.at(m) * a.at(m)) {
      v.ok = false;
      v.first_violation = m;
      return v;
    }
  }
  return v;
}

}  // namespace divlab
