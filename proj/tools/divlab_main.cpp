// Command-line front end: experiment orchestration over the series, divisor,
// linearization, majorant and schedule modules, with deterministic JSON/CSV
// artifacts.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "divlab/arnold.hpp"
#include "divlab/config.hpp"
#include "divlab/fischer.hpp"
#include "divlab/majorant.hpp"
#include "divlab/multiplier.hpp"
#include "divlab/newton_schedule.hpp"
#include "divlab/onedim.hpp"
#include "divlab/series.hpp"
#include "divlab/small_divisors.hpp"
#include "divlab/version.hpp"

namespace divlab {
namespace {

using nlohmann::json;

struct GlobalOptions {
  std::uint64_t seed = 0;
  int precision = 17;
  std::string out_dir;
  int json_indent = -1;
  std::string config_path;
};

std::string resolve_out(const GlobalOptions& g, const std::string& path) {
  if (path.empty() || g.out_dir.empty() ||
      std::filesystem::path(path).is_absolute()) {
    return path;
  }
  return (std::filesystem::path(g.out_dir) / path).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << text;
}

json artifact_header(const ExperimentConfig& cfg) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config_hash"] = cfg.hash();
  return j;
}

std::string csv_comment(const ExperimentConfig& cfg) {
  return std::string("# ") + kToolName + " " + kToolVersion +
         " config=" + cfg.hash() + "\n";
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json series_json_value(const FourierTaylorSeries& u) {
  return json::parse(series_to_json(u));
}

json germ_json(const MapGerm& g) {
  json j;
  j["horizontal_shift"] = complex_json(g.horizontal_shift);
  j["multiplier"] = complex_json(g.multiplier);
  j["h_perturbation"] = series_json_value(g.h_perturbation);
  j["v_perturbation"] = series_json_value(g.v_perturbation);
  return j;
}

Complex parse_complex_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw ConfigError("expected re,im pair: " + text);
  }
  return Complex{std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

FourierTaylorSeries load_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open series file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return series_from_json(ss.str());
}

// ---- linearize --------------------------------------------------------------

int cmd_linearize(const GlobalOptions& g, const ExperimentConfig& cfg) {
  cfg.restrict_keys({"alpha", "omega", "a", "b", "order", "mode", "scheme", "out",
                     "divisor_csv", "resonance_threshold", "decay_delta",
                     "decay_delta_prime", "decay_c"});
  const Multiplier lambda = Multiplier::parse(cfg.get("alpha"));
  const Complex omega = parse_complex_pair(cfg.get("omega"));
  const int order = static_cast<int>(cfg.get_int("order"));
  const std::string mode = cfg.get_or("mode", "vertical");
  const std::string scheme = cfg.get_or("scheme", "obo");
  const double threshold = cfg.has("resonance_threshold")
                               ? cfg.get_double("resonance_threshold")
                               : 1e-13;

  FourierTaylorSeries va = load_series(cfg.get("a"));
  FourierTaylorSeries vb = cfg.has("b")
                               ? load_series(cfg.get("b"))
                               : FourierTaylorSeries(va.domain(),
                                                     va.taylor_order() + 1);
  TorusNeighborhood nbhd = TorusNeighborhood::build(lambda, omega, va, vb);

  if (cfg.has("divisor_csv")) {
    SmallDivisorTable table = SmallDivisorTable::build(
        lambda, omega, order, std::max(1, nbhd.domain.fourier_band));
    std::ostringstream os;
    os << std::setprecision(g.precision) << csv_comment(cfg);
    table.to_csv(os);
    write_text(resolve_out(g, cfg.get("divisor_csv")), os.str());
  }

  LinearizationResult result =
      mode == "vertical"
          ? vertical_linearize(nbhd, order, threshold)
          : full_linearize(nbhd, order,
                           scheme == "newton" ? Scheme::NewtonDoubling
                                              : Scheme::OrderByOrder,
                           threshold);

  json out = artifact_header(cfg);
  out["mode"] = mode;
  out["scheme"] = scheme;
  out["order_requested"] = order;
  out["order_achieved"] = result.order_achieved;
  out["g"] = germ_json(result.g);
  out["residual_h"] = series_json_value(result.residual_h);
  out["residual_v"] = series_json_value(result.residual_v);
  json levels = json::array();
  for (const auto& lvl : result.per_level) {
    json l;
    l["n"] = lvl.n;
    l["min_divisor"] = lvl.min_divisor;
    l["max_divisor"] = lvl.max_divisor;
    l["rhs_norm"] = lvl.rhs_norm;
    levels.push_back(std::move(l));
  }
  out["levels"] = std::move(levels);
  const double delta = cfg.has("decay_delta") ? cfg.get_double("decay_delta")
                                              : nbhd.domain.strip_halfwidth;
  const double delta_prime = cfg.has("decay_delta_prime")
                                 ? cfg.get_double("decay_delta_prime")
                                 : delta / 2.0;
  const double decay_c = cfg.has("decay_c") ? cfg.get_double("decay_c") : 10.0;
  if (mode == "vertical") {
    DecayReport decay = decay_check(result, nbhd, delta, delta_prime, decay_c);
    json dj = json::array();
    for (const auto& lvl : decay.levels) {
      dj.push_back({{"n", lvl.n},
                    {"c_fit", lvl.c_fit},
                    {"worst_j", lvl.worst_j},
                    {"bound", lvl.bound},
                    {"ok", lvl.ok}});
    }
    out["decay"] = std::move(dj);
    FoliationReport fol = foliation_extract(result);
    out["foliated"] = fol.foliated;
  }
  write_text(resolve_out(g, cfg.get("out")), out.dump(g.json_indent) + "\n");
  return 0;
}

// ---- schroeder / divergence-scan --------------------------------------------

Germ1D load_germ(const std::string& path, const Multiplier& lambda, int order) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open germ file: " + path);
  json j = json::parse(in);
  Germ1D germ;
  germ.multiplier = lambda;
  germ.order = order;
  int top = 1;
  for (const auto& entry : j.at("coeffs")) {
    top = std::max(top, entry.at(0).get<int>());
  }
  germ.tail.assign(std::max(0, top - 1), Complex{});
  for (const auto& entry : j.at("coeffs")) {
    const int n = entry.at(0).get<int>();
    if (n < 2) throw ConfigError("germ coefficients start at degree 2");
    germ.tail[n - 2] =
        Complex{entry.at(1).get<double>(), entry.at(2).get<double>()};
  }
  return germ;
}

int cmd_schroeder(const GlobalOptions& g, const ExperimentConfig& cfg) {
  cfg.restrict_keys({"alpha", "germ", "order", "newton", "out"});
  const Multiplier lambda = Multiplier::parse(cfg.get("alpha"));
  const int order = static_cast<int>(cfg.get_int("order"));
  Germ1D germ = cfg.has("germ") ? load_germ(cfg.get("germ"), lambda, order)
                                : Germ1D::quadratic(lambda, order);
  json out = artifact_header(cfg);
  Linearizer1D psi;
  if (cfg.has("newton")) {
    psi = newton_linearize_1d(germ, static_cast<int>(cfg.get_int("newton")));
    out["scheme"] = "newton";
  } else {
    psi = schroeder_linearize(germ, order);
    out["scheme"] = "order_by_order";
  }
  out["achieved_order"] = psi.achieved_order;
  json coeffs = json::array();
  for (int n = 1; n < static_cast<int>(psi.coeffs.size()); ++n) {
    coeffs.push_back({n, psi.coeffs[n].real(), psi.coeffs[n].imag()});
  }
  out["psi"] = std::move(coeffs);
  out["residual"] = schroeder_residual(germ, psi, psi.achieved_order);
  if (psi.achieved_order >= 4) {
    const int hi = psi.achieved_order;
    const int lo = std::max(2, hi / 2);
    out["radius_estimate"] = radius_estimate(psi, lo, hi);
  }
  write_text(resolve_out(g, cfg.get("out")), out.dump(g.json_indent) + "\n");
  return 0;
}

int cmd_divergence_scan(const GlobalOptions& g, const ExperimentConfig& cfg) {
  cfg.restrict_keys({"alphas", "order", "out"});
  const int order = static_cast<int>(cfg.get_int("order"));
  std::ifstream in(cfg.get("alphas"));
  if (!in) throw ConfigError("cannot open alphas file: " + cfg.get("alphas"));
  std::ostringstream os;
  os << std::setprecision(g.precision) << csv_comment(cfg);
  os << "alpha_label,n,abs_psi_n,root_test\n";
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ConfigError("alphas lines must be label,spec: " + line);
    }
    const std::string label = line.substr(0, comma);
    const Multiplier lambda = Multiplier::parse(line.substr(comma + 1));
    Germ1D germ = Germ1D::quadratic(lambda, order);
    Linearizer1D psi = schroeder_linearize(germ, order);
    for (int n = 2; n <= psi.achieved_order; ++n) {
      const double mag = std::abs(psi.coeffs[n]);
      os << label << "," << n << "," << mag << ","
         << (mag > 0 ? std::pow(mag, 1.0 / n) : 0.0) << "\n";
    }
  }
  write_text(resolve_out(g, cfg.get("out")), os.str());
  return 0;
}

// ---- majorant / eta ----------------------------------------------------------

int cmd_majorant(const GlobalOptions& g, const ExperimentConfig& cfg) {
  cfg.restrict_keys({"kind", "R", "M", "Mtilde", "n", "d", "C0", "order", "out"});
  MajorantParams p;
  if (cfg.has("R")) p.r = cfg.get_double("R");
  if (cfg.has("M")) p.m = cfg.get_double("M");
  if (cfg.has("Mtilde")) p.m_tilde = cfg.get_double("Mtilde");
  if (cfg.has("n")) p.n = static_cast<int>(cfg.get_int("n"));
  if (cfg.has("d")) p.d = static_cast<int>(cfg.get_int("d"));
  if (cfg.has("C0")) p.c0 = cfg.get_double("C0");
  const int order = static_cast<int>(cfg.get_int("order"));
  const std::string kind = cfg.get_or("kind", "vertical");
  MajorantSeries a = kind == "full" ? solve_full_majorant(p, order)
                                    : solve_vertical_majorant(p, order);
  json out = artifact_header(cfg);
  out["kind"] = kind;
  json coeffs = json::array();
  for (int m = 0; m <= order; ++m) coeffs.push_back(a.at(m));
  out["A"] = std::move(coeffs);
  if (order >= 10) out["radius_lower_bound"] = radius_lower_bound(a);
  write_text(resolve_out(g, cfg.get("out")), out.dump(g.json_indent) + "\n");
  return 0;
}

int cmd_eta(const GlobalOptions& g, const ExperimentConfig& cfg) {
  cfg.restrict_keys({"K", "len", "out"});
  const int len = static_cast<int>(cfg.get_int("len"));
  std::ifstream in(cfg.get("K"));
  if (!in) throw ConfigError("cannot open K file: " + cfg.get("K"));
  std::vector<double> ks;
  double v;
  while (in >> v) ks.push_back(v);
  EtaSequence eta = eta_sequence(ks, len);
  std::ostringstream os;
  os << std::setprecision(g.precision) << csv_comment(cfg);
  os << "m,K,eta\n";
  for (int m = 1; m <= len; ++m) {
    os << m << "," << (m >= 2 ? eta.k[m - 1] : 0.0) << "," << eta.at(m) << "\n";
  }
  if (len >= 4) {
    GrowthFit fit = growth_fit(eta);
    os << "# bounded=" << (fit.bounded ? 1 : 0) << " L0=" << fit.l0
       << " L=" << fit.l << "\n";
  }
  write_text(resolve_out(g, cfg.get("out")), os.str());
  return 0;
}

// ---- bruno / divisors ---------------------------------------------------------

int cmd_bruno(const GlobalOptions& g, const ExperimentConfig& cfg) {
  cfg.restrict_keys({"alpha", "kmax", "out"});
  const Multiplier lambda = Multiplier::parse(cfg.get("alpha"));
  const int kmax = static_cast<int>(cfg.get_int("kmax"));
  json out = artifact_header(cfg);
  out["alpha"] = lambda.describe();
  out["partial_sums"] = bruno_partial_sums(lambda, kmax);
  write_text(resolve_out(g, cfg.get("out")), out.dump(g.json_indent) + "\n");
  return 0;
}

int cmd_divisors(const GlobalOptions& g, const ExperimentConfig& cfg) {
  cfg.restrict_keys({"alpha", "omega", "nmax", "jmax", "divisor_csv",
                     "comparability_c", "out"});
  const Multiplier lambda = Multiplier::parse(cfg.get("alpha"));
  const Complex omega = parse_complex_pair(cfg.get("omega"));
  const int nmax = static_cast<int>(cfg.get_int("nmax"));
  const int jmax = static_cast<int>(cfg.get_int("jmax"));
  SmallDivisorTable table = SmallDivisorTable::build(lambda, omega, nmax, jmax);
  if (cfg.has("divisor_csv")) {
    std::ostringstream os;
    os << std::setprecision(g.precision) << csv_comment(cfg);
    table.to_csv(os);
    write_text(resolve_out(g, cfg.get("divisor_csv")), os.str());
  }
  if (cfg.has("out")) {
    json out = artifact_header(cfg);
    out["min_divisor_profile"] = min_divisor_profile(lambda, nmax);
    if (cfg.has("comparability_c")) {
      auto rep = arnold_comparability(lambda, omega,
                                      cfg.get_double("comparability_c"), nmax, jmax);
      out["comparability"] = {{"holds", rep.holds},
                              {"worst_n", rep.worst_n},
                              {"worst_j", rep.worst_j},
                              {"c_effective", rep.c_effective}};
    }
    write_text(resolve_out(g, cfg.get("out")), out.dump(g.json_indent) + "\n");
  }
  return 0;
}

// ---- schedule ------------------------------------------------------------------

int cmd_schedule(const GlobalOptions& g, const ExperimentConfig& cfg) {
  cfg.restrict_keys({"tau", "Cstar", "l0", "len", "find_l0", "rstar", "C2",
                     "eps0", "out"});
  const double tau = cfg.get_double("tau");
  const double c_star = cfg.get_double("Cstar");
  const double c2 = cfg.has("C2") ? cfg.get_double("C2") : 10.0;
  const double r_star = cfg.has("rstar") ? cfg.get_double("rstar") : 0.5;
  const int len = cfg.has("len") ? static_cast<int>(cfg.get_int("len")) : 40;
  DstarSequence dstar = DstarSequence::siegel_type(tau);

  int l0;
  json out = artifact_header(cfg);
  if (cfg.has("find_l0") && cfg.get("find_l0") != "0") {
    FindL0Result found = find_l0(dstar, c_star, r_star, 40, c2, len);
    if (!found.l0.has_value()) {
      out["found_l0"] = nullptr;
      out["diagnostics"] = found.diagnostics;
      write_text(resolve_out(g, cfg.get("out")), out.dump(g.json_indent) + "\n");
      throw ScheduleError("no admissible l0 <= 40");
    }
    l0 = *found.l0;
    out["found_l0"] = l0;
  } else {
    l0 = static_cast<int>(cfg.get_int("l0"));
  }

  NewtonSchedule s = make_schedule(dstar, c_star, l0, len);
  ScheduleCertificate cert = verify_schedule(s, c2, r_star);
  json checks = json::array();
  for (const auto& item : cert.items) {
    checks.push_back({{"name", item.name}, {"pass", item.pass},
                      {"margin", item.margin}});
  }
  out["l0"] = l0;
  out["length"] = len;
  out["checks"] = std::move(checks);
  out["all_pass"] = cert.all_pass;
  out["r_computed"] = cert.r_computed;
  out["r_infinity_lower_bound"] = cert.r_infinity_lower_bound;
  out["donin_sum"] = cert.donin_sum_value;

  // Modeled error trace from the largest admissible initial error.
  const double two_tau = 2.0 * s.tau;
  const double allowed = (1.0 - s.theta[0]) * s.r[0] / 10.0;
  const double lhs_coeff =
      10.0 * s.dstar.at(2 * s.m[0]) /
      std::pow(s.r[0] * (1.0 - s.theta[0] * s.theta[0]), two_tau);
  const double eps0 = cfg.has("eps0") ? cfg.get_double("eps0")
                                      : allowed / lhs_coeff * 0.999;
  ErrorTrace trace = simulate_errors(s, eps0, 10.0, 10.0, std::min(len, 12));
  out["eps0"] = eps0;
  out["log_eps"] = trace.log_eps;
  out["gate_failed_at"] = trace.failed_at;
  write_text(resolve_out(g, cfg.get("out")), out.dump(g.json_indent) + "\n");
  if (!cert.all_pass) throw ScheduleError("schedule certificate failed");
  return 0;
}

// ---- fischer-check ---------------------------------------------------------------

int cmd_fischer_check(const GlobalOptions& g, const ExperimentConfig& cfg) {
  cfg.restrict_keys({"pairs", "unitaries", "max_degree", "out"});
  const int pairs = cfg.has("pairs") ? static_cast<int>(cfg.get_int("pairs")) : 200;
  const int unitaries =
      cfg.has("unitaries") ? static_cast<int>(cfg.get_int("unitaries")) : 100;
  const int max_degree =
      cfg.has("max_degree") ? static_cast<int>(cfg.get_int("max_degree")) : 6;
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> dd(1, 3), kk(1, max_degree);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  auto rand_poly = [&](int d, int deg) {
    HomogeneousPoly p{d, deg, {}};
    for (const auto& q : enumerate_multi_indices(d, deg)) {
      p.add_term(q, Complex{u(rng), u(rng)});
    }
    return p;
  };

  double worst_submult = 0.0;
  for (int t = 0; t < pairs; ++t) {
    const int d = dd(rng);
    auto p = rand_poly(d, kk(rng));
    auto q = rand_poly(d, kk(rng));
    worst_submult = std::max(
        worst_submult, mf_norm(poly_mul(p, q)) - mf_norm(p) * mf_norm(q));
  }
  double worst_invariance = 0.0;
  for (int t = 0; t < unitaries; ++t) {
    const int d = dd(rng);
    auto m = random_unitary(d, rng);
    auto p = rand_poly(d, kk(rng));
    worst_invariance = std::max(
        worst_invariance, std::abs(mf_norm(apply_unitary(m, p)) - mf_norm(p)));
  }
  double worst_sym = 0.0;
  for (int d = 1; d <= 3; ++d) {
    for (int deg = 2; deg <= 5; ++deg) {
      auto m = random_unitary(d, rng);
      worst_sym = std::max(worst_sym,
                           unitarity_defect(symmetric_power_matrix(m, deg)));
    }
  }
  json out = artifact_header(cfg);
  out["submultiplicativity_excess"] = worst_submult;
  out["unitary_invariance_defect"] = worst_invariance;
  out["symmetric_power_unitarity_defect"] = worst_sym;
  out["pass"] = worst_submult <= 1e-12 && worst_invariance <= 1e-10 &&
                worst_sym <= 1e-10;
  write_text(resolve_out(g, cfg.get("out")), out.dump(g.json_indent) + "\n");
  return 0;
}

// ---- dispatch ---------------------------------------------------------------------

int dispatch(const std::string& command, const GlobalOptions& g,
             const ExperimentConfig& cfg) {
  if (command == "linearize") return cmd_linearize(g, cfg);
  if (command == "schroeder") return cmd_schroeder(g, cfg);
  if (command == "divergence-scan") return cmd_divergence_scan(g, cfg);
  if (command == "majorant") return cmd_majorant(g, cfg);
  if (command == "eta") return cmd_eta(g, cfg);
  if (command == "bruno") return cmd_bruno(g, cfg);
  if (command == "divisors") return cmd_divisors(g, cfg);
  if (command == "schedule") return cmd_schedule(g, cfg);
  if (command == "fischer-check") return cmd_fischer_check(g, cfg);
  throw ConfigError("unknown command: " + command);
}

struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
  bool is_flag = false;  // boolean switch, stored as "1"
};

struct CommandSpec {
  std::string name;
  const char* help;
  std::vector<FlagSpec> flags;
};

const std::vector<CommandSpec> kCommands = {
    {"linearize", "conjugate a torus neighborhood toward its linear model",
     {{"--alpha", "alpha", "multiplier spec (cf:/dec:/rat:/ru:/exp:)"},
      {"--omega", "omega", "lattice half-period re,im with im > 0"},
      {"--a", "a", "series JSON for the v*a factor"},
      {"--b", "b", "series JSON for the v*b factor"},
      {"--order", "order", "target order N"},
      {"--mode", "mode", "vertical|full"},
      {"--scheme", "scheme", "obo|newton"},
      {"--out", "out", "result JSON path"},
      {"--divisor-csv", "divisor_csv", "also export the divisor table CSV"},
      {"--resonance-threshold", "resonance_threshold", "divisor cutoff"},
      {"--decay-delta", "decay_delta", "decay fit strip"},
      {"--decay-delta-prime", "decay_delta_prime", "decay fit target strip"},
      {"--decay-c", "decay_c", "decay bound constant"}}},
    {"schroeder", "linearize a one-dimensional germ",
     {{"--alpha", "alpha", "multiplier spec"},
      {"--germ", "germ", "germ coefficient JSON (coeffs: [[n,re,im],...])"},
      {"--order", "order", "target order N"},
      {"--newton", "newton", "use order doubling with P passes"},
      {"--out", "out", "result JSON path"}}},
    {"divergence-scan", "root-test scan of quadratic germs over multipliers",
     {{"--alphas", "alphas", "file of label,multiplier-spec lines"},
      {"--order", "order", "target order N"},
      {"--out", "out", "scan CSV path"}}},
    {"majorant", "solve a dominating-series functional equation",
     {{"--kind", "kind", "vertical|full"},
      {"--R", "R", "coefficient bound"},
      {"--M", "M", "chart separation"},
      {"--Mtilde", "Mtilde", "covering constant"},
      {"--n", "n", "base dimension"},
      {"--d", "d", "fiber dimension"},
      {"--C0", "C0", "transition sup constant"},
      {"--order", "order", "truncation order"},
      {"--out", "out", "A series JSON path"}}},
    {"eta", "run the partition-maximum recursion over a K sequence",
     {{"--K", "K", "file of K_m values, one per line, m = 2.."},
      {"--len", "len", "sequence length M"},
      {"--out", "out", "eta CSV path"}}},
    {"bruno", "partial sums of the dyadic small-divisor series",
     {{"--alpha", "alpha", "multiplier spec"},
      {"--kmax", "kmax", "number of partial sums"},
      {"--out", "out", "result JSON path"}}},
    {"divisors", "export divisor tables and comparability checks",
     {{"--alpha", "alpha", "multiplier spec"},
      {"--omega", "omega", "lattice half-period re,im"},
      {"--nmax", "nmax", "largest power"},
      {"--jmax", "jmax", "largest Fourier mode"},
      {"--divisor-csv", "divisor_csv", "divisor table CSV path"},
      {"--comparability-c", "comparability_c", "check the comparability bound"},
      {"--out", "out", "summary JSON path"}}},
    {"schedule", "build and certify an order-doubling parameter schedule",
     {{"--tau", "tau", "Donin exponent"},
      {"--Cstar", "Cstar", "schedule constant"},
      {"--l0", "l0", "starting exponent"},
      {"--len", "len", "schedule length"},
      {"--find-l0", "find_l0", "search for the least admissible l0", true},
      {"--rstar", "rstar", "target residual radius"},
      {"--C2", "C2", "contraction constant"},
      {"--eps0", "eps0", "initial modeled error"},
      {"--out", "out", "certificate JSON path"}}},
    {"fischer-check", "sampled norm inequalities on homogeneous polynomials",
     {{"--pairs", "pairs", "submultiplicativity sample count"},
      {"--unitaries", "unitaries", "invariance sample count"},
      {"--max-degree", "max_degree", "largest polynomial degree"},
      {"--out", "out", "summary JSON path"}}},
};

}  // namespace
}  // namespace divlab

int main(int argc, char** argv) {
  using namespace divlab;
  CLI::App app{"small-divisor linearization laboratory"};
  app.require_subcommand(0, 1);

  GlobalOptions global;
  auto* seed_opt =
      app.add_option("--seed", global.seed, "random seed for sampled checks");
  app.add_option("--precision", global.precision, "output float digits");
  app.add_option("--out-dir", global.out_dir, "directory for artifacts");
  app.add_option("--json-indent", global.json_indent, "indent for JSON output");
  app.add_option("--config", global.config_path, "key = value config file");

  std::string command;
  std::map<std::string, std::map<std::string, std::string>> flag_values;
  std::map<std::string, std::map<std::string, bool>> switch_values;
  for (const auto& spec : kCommands) {
    const std::string& name = spec.name;
    CLI::App* sub = app.add_subcommand(name, spec.help);
    for (const FlagSpec& f : spec.flags) {
      if (f.is_flag) {
        switch_values[name][f.key] = false;
        sub->add_flag(f.flag, switch_values[name][f.key], f.help);
      } else {
        sub->add_option(f.flag, flag_values[name][f.key], f.help);
      }
    }
    sub->callback([&command, name] { command = name; });
  }

  CLI11_PARSE(app, argc, argv);
  if (command.empty()) {
    std::cerr << app.help() << std::endl;
    return static_cast<int>(ExitCode::ConfigError);
  }

  try {
    ExperimentConfig cfg = global.config_path.empty()
                               ? ExperimentConfig{}
                               : parse_config_file(global.config_path);
    // Keep only this command's section (plus bare keys) from the file.
    ExperimentConfig merged;
    merged.seed = global.seed;
    const std::string prefix = command + ".";
    for (const auto& [key, value] : cfg.values) {
      if (key.rfind(prefix, 0) == 0) {
        merged.values[key.substr(prefix.size())] = value;
      } else if (key.find('.') == std::string::npos) {
        if (key == "seed") {
          if (seed_opt->count() == 0) merged.seed = std::stoull(value);
        } else {
          merged.values[key] = value;
        }
      }
    }
    for (const auto& [key, value] : flag_values[command]) {
      if (!value.empty()) apply_override(merged, key, value);
    }
    for (const auto& [key, on] : switch_values[command]) {
      if (on) apply_override(merged, key, "1");
    }
    if (const char* env = std::getenv("DIVLAB_OUT_DIR")) {
      global.out_dir = env;
    }
    return dispatch(command, global, merged);
  } catch (const ResonanceError& e) {
    std::cerr << "resonance: " << e.what() << std::endl;
    return static_cast<int>(ExitCode::Resonance);
  } catch (const BandOverflowError& e) {
    std::cerr << "band overflow: " << e.what() << std::endl;
    return static_cast<int>(ExitCode::BandOverflow);
  } catch (const ScheduleError& e) {
    std::cerr << "schedule: " << e.what() << std::endl;
    return static_cast<int>(ExitCode::ScheduleFailure);
  } catch (const ConfigError& e) {
    std::cerr << "config: " << e.what() << std::endl;
    return static_cast<int>(ExitCode::ConfigError);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
