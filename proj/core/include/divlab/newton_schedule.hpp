#pragma once

// Parameter schedule for the order-doubling conjugation scheme:
//   m_l = 2^{l0+l},  delta_l = C* log D~*(m_{l+2}) / m_{l+2},
//   theta_l = 1 - delta_l,  r_{l+1} = theta_l^7 r_l,  r_0 = 1,
// with D~*(k) = max(D*(k), k), plus the inequality certificate and the
// modeled error recursion.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "divlab/small_divisors.hpp"

namespace divlab {

struct NewtonSchedule {
  double c_star = 0.0;
  double tau = 0.0;
  int l0 = 0;
  int length = 0;                 // number of steps l = 0..length-1
  std::vector<std::uint64_t> m;   // m[l] = 2^{l0+l}, l = 0..length+2
  std::vector<double> delta;
  std::vector<double> theta;
  std::vector<double> r;          // r[0] = 1, r[l+1] = theta_l^7 r[l]
  DstarSequence dstar;

  double floored_dstar(std::uint64_t k) const;  // max(D*(k), k)
};

NewtonSchedule make_schedule(const DstarSequence& dstar, double c_star, int l0,
                             int length);

struct CertificateItem {
  std::string name;
  bool pass = false;
  double margin = 0.0;  // positive means pass with room
};

struct ScheduleCertificate {
  std::vector<CertificateItem> items;
  bool all_pass = false;
  double r_computed = 0.0;           // r_length
  double r_infinity_lower_bound = 0.0;
  double donin_sum_value = 0.0;
};

// Checks, with margins: m_{l+2} > 24; C* > 12 and C* > 24 tau + 12; the
// per-step contraction log(C2 D~*(m_{l+2}) (1-delta_l)^{2 m_l - 6} /
// delta_{l+1}^{2 tau + 1}) < 0; and prod theta^7 >= r_star extended to
// l = infinity through the Donin-sum tail.
ScheduleCertificate verify_schedule(const NewtonSchedule& s, double c2,
                                    double r_star);

struct FindL0Result {
  std::optional<int> l0;
  std::string diagnostics;
};

FindL0Result find_l0(const DstarSequence& dstar, double c_star, double r_star,
                     int l_max, double c2 = 10.0, int length = 40);

struct ErrorTrace {
  std::vector<double> log_eps;      // log eps_l (exact in log space)
  std::vector<double> eps;          // exp(log_eps), 0 on underflow
  std::vector<double> gate_margin;  // log(allowed) - log(lhs) per step
  int failed_at = -1;               // gate violation index, or -1
  double required_dilation = 1.0;   // <1 when eps0 violates the initial gate
};

// Gate: C1 D*(2 m_l) eps_l / (r_l - theta_l^2 r_l)^{2 tau} <= (1-theta_l) r_l / C0,
// then eps_{l+1} = theta_l^{2 m_l + 1} (1-theta_l) r_l / C0. Runs in log space
// (the modeled errors underflow double within a few steps).
ErrorTrace simulate_errors(const NewtonSchedule& s, double eps0, double c0, double c1,
                           int steps);

}  // namespace divlab
