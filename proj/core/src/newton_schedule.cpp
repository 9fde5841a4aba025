#include "divlab/newton_schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace divlab {

double NewtonSchedule::floored_dstar(std::uint64_t k) const {
  return std::max(dstar.at(k), static_cast<double>(k));
}

NewtonSchedule make_schedule(const DstarSequence& dstar, double c_star, int l0,
                             int length) {
  if (!(c_star >= 1.0)) throw ScheduleError("C* must be >= 1");
  if (l0 < 0 || length < 1) throw ScheduleError("bad schedule extents");
  if (l0 + length + 2 > 62) throw ScheduleError("schedule exceeds 2^62 orders");
  NewtonSchedule s;
  s.c_star = c_star;
  s.tau = dstar.tau();
  s.l0 = l0;
  s.length = length;
  s.dstar = dstar;
  for (int l = 0; l <= length + 2; ++l) {
    s.m.push_back(std::uint64_t{1} << (l0 + l));
  }
  s.r.push_back(1.0);
  for (int l = 0; l < length; ++l) {
    const std::uint64_t m_l2 = s.m[l + 2];
    const double d = c_star * std::log(s.floored_dstar(m_l2)) /
                     static_cast<double>(m_l2);
    if (!(d < 1.0)) {
      throw ScheduleError("delta_" + std::to_string(l) +
                          " >= 1: l0 too small for this C* and D*");
    }
    s.delta.push_back(d);
    s.theta.push_back(1.0 - d);
    s.r.push_back(std::pow(1.0 - d, 7) * s.r.back());
  }
  return s;
}

ScheduleCertificate verify_schedule(const NewtonSchedule& s, double c2,
                                    double r_star) {
  ScheduleCertificate cert;
  auto add = [&cert](const std::string& name, bool pass, double margin) {
    cert.items.push_back({name, pass, margin});
  };

  // (i) m_{l+2} > 24 across the schedule (smallest is l = 0).
  {
    const double margin = static_cast<double>(s.m[2]) - 24.0;
    add("m_{l+2} > 24", margin > 0.0, margin);
  }
  // (ii) C* thresholds.
  add("C* > 12", s.c_star > 12.0, s.c_star - 12.0);
  add("C* > 24 tau + 12", s.c_star > 24.0 * s.tau + 12.0,
      s.c_star - (24.0 * s.tau + 12.0));

  // (iii) per-step contraction, l = 0..length-2.
  {
    double worst = -std::numeric_limits<double>::infinity();
    int worst_l = -1;
    for (int l = 0; l + 1 < s.length; ++l) {
      const double val =
          std::log(c2) + std::log(s.floored_dstar(s.m[l + 2])) +
          (2.0 * static_cast<double>(s.m[l]) - 6.0) * std::log1p(-s.delta[l]) -
          (2.0 * s.tau + 1.0) * std::log(s.delta[l + 1]);
      if (val > worst) {
        worst = val;
        worst_l = l;
      }
    }
    add("contraction log < 0 (worst at l=" + std::to_string(worst_l) + ")",
        worst < 0.0, -worst);
  }

  // (iv) product lower bound with a certified tail.
  cert.r_computed = s.r[s.length];
  {
    // Tail of sum delta_l beyond the computed range, from the Donin-sum
    // remainder: delta_l = C* t_{k}/2 with t_k the Donin term at k = l0+l+1.
    DstarSequence floored = DstarSequence::from_function(
        [&s](std::uint64_t k) { return s.floored_dstar(k); }, s.tau);
    const int k_top = 60;
    DoninSumResult donin = donin_bruno_sum(floored, k_top);
    cert.donin_sum_value = donin.partial_sums.back();
    const int k_cut = s.l0 + s.length;  // tail starts at Donin index k_cut + 1
    double tail_delta_sum;
    if (!(donin.tail_bound < std::numeric_limits<double>::infinity())) {
      tail_delta_sum = std::numeric_limits<double>::infinity();
    } else if (k_cut >= k_top) {
      tail_delta_sum = 0.5 * s.c_star * donin.tail_bound;
    } else {
      const double rest = donin.partial_sums[k_top - 1] -
                          donin.partial_sums[k_cut - 1] + donin.tail_bound;
      tail_delta_sum = 0.5 * s.c_star * rest;
    }
    // log prod_{l >= length} theta_l^7 >= -7 sum delta_l / (1 - delta_max);
    // delta decreases along the tail, so delta_{length-1} bounds it.
    const double dmax = s.delta.back();
    double log_tail = -std::numeric_limits<double>::infinity();
    if (tail_delta_sum < std::numeric_limits<double>::infinity() && dmax < 1.0) {
      log_tail = -7.0 * tail_delta_sum / (1.0 - dmax);
    }
    const double log_r_inf = std::log(cert.r_computed) + log_tail;
    cert.r_infinity_lower_bound = std::exp(log_r_inf);
    const double margin = log_r_inf - std::log(r_star);
    add("prod theta^7 >= r_* (including tail)", margin >= 0.0, margin);
  }

  cert.all_pass = true;
  for (const auto& item : cert.items) cert.all_pass = cert.all_pass && item.pass;
  return cert;
}

FindL0Result find_l0(const DstarSequence& dstar, double c_star, double r_star,
                     int l_max, double c2, int length) {
  FindL0Result res;
  std::ostringstream diag;
  for (int l0 = 3; l0 <= l_max; ++l0) {
    NewtonSchedule s;
    try {
      s = make_schedule(dstar, c_star, l0, std::min(length, 62 - l0 - 2));
    } catch (const ScheduleError& e) {
      diag << "l0=" << l0 << ": " << e.what() << "\n";
      continue;
    }
    ScheduleCertificate cert = verify_schedule(s, c2, r_star);
    if (cert.all_pass) {
      res.l0 = l0;
      diag << "l0=" << l0 << ": all checks pass, r_inf >= "
           << cert.r_infinity_lower_bound << "\n";
      res.diagnostics = diag.str();
      return res;
    }
    for (const auto& item : cert.items) {
      if (!item.pass) diag << "l0=" << l0 << ": fails " << item.name << "\n";
    }
  }
  res.diagnostics = diag.str();
  return res;
}

ErrorTrace simulate_errors(const NewtonSchedule& s, double eps0, double c0, double c1,
                           int steps) {
  if (!(eps0 >= 0.0) || !(c0 > 0.0) || !(c1 > 0.0)) {
    throw ScheduleError("simulate_errors needs eps0 >= 0, C0 > 0, C1 > 0");
  }
  steps = std::min(steps, s.length);
  ErrorTrace trace;
  const double two_tau = 2.0 * s.tau;
  double log_eps = eps0 == 0.0 ? -std::numeric_limits<double>::infinity()
                               : std::log(eps0);
  for (int l = 0; l < steps; ++l) {
    trace.log_eps.push_back(log_eps);
    trace.eps.push_back(std::exp(log_eps));
    const double log_lhs =
        std::log(c1) + std::log(s.dstar.at(2 * s.m[l])) + log_eps -
        two_tau * std::log(s.r[l] * (1.0 - s.theta[l] * s.theta[l]));
    const double log_allowed = std::log((1.0 - s.theta[l]) * s.r[l] / c0);
    const double margin = log_allowed - log_lhs;
    trace.gate_margin.push_back(margin);
    if (margin < -1e-9) {
      trace.failed_at = l;
      if (l == 0) trace.required_dilation = std::exp(margin);
      return trace;
    }
    // The conjugated error obeys both the contraction of the current error
    // and the gate envelope; the modeled value takes the smaller branch
    // (they coincide exactly when the gate saturates).
    log_eps = (2.0 * static_cast<double>(s.m[l]) + 1.0) * std::log(s.theta[l]) +
              std::min(log_allowed, log_lhs);
  }
  trace.log_eps.push_back(log_eps);
  trace.eps.push_back(std::exp(log_eps));
  return trace;
}

}  // namespace divlab
