#pragma once

// Test-side replay of the majorant functional equations, kept independent of
// the library implementation: (1-x)^{-c} is expanded from explicit binomial
// weights and plain power accumulation rather than the derivative recurrence.

#include <cmath>
#include <vector>

#include "divlab/majorant.hpp"

namespace divlab_testing {

using RS = std::vector<double>;

inline RS replay_mul(const RS& a, const RS& b, int order) {
  RS out(order + 1, 0.0);
  for (int i = 0; i <= order && i < static_cast<int>(a.size()); ++i) {
    for (int j = 0; i + j <= order && j < static_cast<int>(b.size()); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

inline RS replay_inv_pow(const RS& x, int c, int order) {
  RS out(order + 1, 0.0);
  out[0] = 1.0;
  RS xp(order + 1, 0.0);
  xp[0] = 1.0;
  double coeff = 1.0;
  for (int k = 1; k <= order; ++k) {
    xp = replay_mul(xp, x, order);
    coeff *= static_cast<double>(c + k - 1) / k;  // binom(c+k-1, k)
    bool all_zero = true;
    for (int i = 0; i <= order; ++i) {
      out[i] += coeff * xp[i];
      all_zero = all_zero && xp[i] == 0.0;
    }
    if (all_zero) break;
  }
  return out;
}

inline double replay_defect_vertical(const divlab::MajorantParams& p,
                                     const divlab::MajorantSeries& a, int order) {
  RS s(order + 1, 0.0);
  s[1] = 1.0;
  for (int i = 2; i <= order; ++i) s[i] = a.at(i);
  RS x = s;
  for (double& v : x) v *= p.r;
  RS g = replay_inv_pow(x, p.d, order);
  g[0] -= 1.0;
  for (int i = 0; i <= order; ++i) g[i] -= p.d * x[i];
  RS gm = g;
  for (double& v : gm) v /= p.m;
  RS w = replay_inv_pow(gm, p.n, order);
  w[0] -= 1.0;
  RS av(order + 1, 0.0);
  for (int i = 2; i <= order; ++i) av[i] = a.at(i);
  RS rhs = replay_mul(av, w, order);
  for (int i = 0; i <= order; ++i) rhs[i] = p.m_tilde * (g[i] + rhs[i]);
  double worst = 0.0;
  for (int m = 2; m <= order; ++m) {
    const double ref = std::max(1.0, std::abs(a.at(m)));
    worst = std::max(worst, std::abs(rhs[m] - a.at(m)) / ref);
  }
  return worst;
}

inline double replay_defect_full(const divlab::MajorantParams& p,
                                 const divlab::MajorantSeries& a, int order) {
  RS av(order + 1, 0.0);
  for (int i = 2; i <= order; ++i) av[i] = a.at(i);
  RS am = av;
  for (double& v : am) v /= p.m;
  RS q = replay_inv_pow(am, p.n, order);
  RS bracket = q;
  bracket[0] -= 1.0;
  for (int i = 0; i <= order; ++i) bracket[i] -= p.n * am[i];
  RS s(order + 1, 0.0);
  s[1] = 1.0;
  for (int i = 2; i <= order; ++i) s[i] = a.at(i);
  RS x = s;
  for (double& v : x) v *= p.r;
  RS inner = replay_inv_pow(x, p.d, order);
  inner[0] -= 1.0;
  for (int i = 0; i <= order; ++i) inner[i] -= p.d * x[i];
  RS rhs = replay_mul(q, inner, order);
  for (int i = 0; i <= order; ++i) {
    rhs[i] = p.m_tilde * (p.c0 * bracket[i] + rhs[i]);
  }
  double worst = 0.0;
  for (int m = 2; m <= order; ++m) {
    const double ref = std::max(1.0, std::abs(a.at(m)));
    worst = std::max(worst, std::abs(rhs[m] - a.at(m)) / ref);
  }
  return worst;
}

}  // namespace divlab_testing
