#include "divlab/fischer.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace divlab {

int multi_index_total(const MultiIndex& q) {
  int s = 0;
  for (int v : q) s += v;
  return s;
}

double multi_index_factorial(const MultiIndex& q) {
  double f = 1.0;
  for (int v : q) {
    for (int k = 2; k <= v; ++k) f *= k;
  }
  return f;
}

std::vector<MultiIndex> enumerate_multi_indices(int num_vars, int degree) {
  std::vector<MultiIndex> out;
  MultiIndex cur(num_vars, 0);
  // Lexicographic enumeration by recursion on the first variable.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == num_vars - 1) {
      cur[pos] = remaining;
      out.push_back(cur);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      cur[pos] = k;
      self(self, pos + 1, remaining - k);
    }
  };
  rec(rec, 0, degree);
  return out;
}

HomogeneousPoly HomogeneousPoly::monomial(int num_vars, MultiIndex q, Complex c) {
  HomogeneousPoly p{num_vars, multi_index_total(q), {}};
  p.coeffs.emplace(std::move(q), c);
  p.validate();
  return p;
}

void HomogeneousPoly::validate() const {
  for (const auto& [q, c] : coeffs) {
    if (static_cast<int>(q.size()) != num_vars) {
      throw DimensionError("multi-index arity mismatch");
    }
    if (multi_index_total(q) != degree) {
      throw DimensionError("multi-index degree mismatch");
    }
  }
}

Complex HomogeneousPoly::coeff(const MultiIndex& q) const {
  auto it = coeffs.find(q);
  return it == coeffs.end() ? Complex{} : it->second;
}

void HomogeneousPoly::add_term(const MultiIndex& q, Complex c) {
  if (c == Complex{}) return;
  auto [it, inserted] = coeffs.emplace(q, c);
  if (!inserted) it->second += c;
}

void PolyVector::validate() const {
  for (const auto& e : entries) {
    e.validate();
    if (e.num_vars != entries.front().num_vars || e.degree != entries.front().degree) {
      throw DimensionError("polynomial vector entries must share arity and degree");
    }
  }
}

HomogeneousPoly poly_mul(const HomogeneousPoly& a, const HomogeneousPoly& b) {
  if (a.num_vars != b.num_vars) throw DimensionError("poly_mul arity mismatch");
  HomogeneousPoly out{a.num_vars, a.degree + b.degree, {}};
  for (const auto& [qa, ca] : a.coeffs) {
    for (const auto& [qb, cb] : b.coeffs) {
      MultiIndex q(a.num_vars);
      for (int i = 0; i < a.num_vars; ++i) q[i] = qa[i] + qb[i];
      out.add_term(q, ca * cb);
    }
  }
  return out;
}

Complex mf_inner(const HomogeneousPoly& p, const HomogeneousPoly& q) {
  if (p.num_vars != q.num_vars || p.degree != q.degree) {
    throw DimensionError("mf_inner needs matching arity and degree");
  }
  const double total_fact = multi_index_factorial(MultiIndex{p.degree});
  Complex acc{};
  for (const auto& [idx, c] : p.coeffs) {
    const Complex qc = q.coeff(idx);
    if (qc == Complex{}) continue;
    acc += c * std::conj(qc) * (multi_index_factorial(idx) / total_fact);
  }
  return acc;
}

double mf_norm(const HomogeneousPoly& p) {
  return std::sqrt(std::max(0.0, mf_inner(p, p).real()));
}

double mf_norm(const PolyVector& g) {
  double s = 0.0;
  for (const auto& e : g.entries) {
    const double n = mf_norm(e);
    s += n * n;
  }
  return std::sqrt(s);
}

ComplexMatrix ComplexMatrix::identity(int d) {
  ComplexMatrix m{d, d, std::vector<Complex>(static_cast<std::size_t>(d) * d)};
  for (int i = 0; i < d; ++i) m.at(i, i) = Complex{1.0, 0.0};
  return m;
}

ComplexMatrix mat_mul(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.cols != y.rows) throw DimensionError("matrix product shape mismatch");
  ComplexMatrix out{x.rows, y.cols,
                    std::vector<Complex>(static_cast<std::size_t>(x.rows) * y.cols)};
  for (int r = 0; r < x.rows; ++r) {
    for (int k = 0; k < x.cols; ++k) {
      const Complex v = x.at(r, k);
      if (v == Complex{}) continue;
      for (int c = 0; c < y.cols; ++c) out.at(r, c) += v * y.at(k, c);
    }
  }
  return out;
}

ComplexMatrix mat_adjoint(const ComplexMatrix& x) {
  ComplexMatrix out{x.cols, x.rows,
                    std::vector<Complex>(static_cast<std::size_t>(x.rows) * x.cols)};
  for (int r = 0; r < x.rows; ++r) {
    for (int c = 0; c < x.cols; ++c) out.at(c, r) = std::conj(x.at(r, c));
  }
  return out;
}

double unitarity_defect(const ComplexMatrix& x) {
  ComplexMatrix p = mat_mul(x, mat_adjoint(x));
  double defect = 0.0;
  for (int r = 0; r < p.rows; ++r) {
    for (int c = 0; c < p.cols; ++c) {
      const Complex want = r == c ? Complex{1.0, 0.0} : Complex{};
      defect = std::max(defect, std::abs(p.at(r, c) - want));
    }
  }
  return defect;
}

ComplexMatrix random_unitary(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix m{d, d, std::vector<Complex>(static_cast<std::size_t>(d) * d)};
  for (auto& v : m.a) v = Complex{gauss(rng), gauss(rng)};
  // Modified Gram-Schmidt on rows.
  for (int r = 0; r < d; ++r) {
    for (int prev = 0; prev < r; ++prev) {
      Complex proj{};
      for (int c = 0; c < d; ++c) proj += m.at(r, c) * std::conj(m.at(prev, c));
      for (int c = 0; c < d; ++c) m.at(r, c) -= proj * m.at(prev, c);
    }
    double norm = 0.0;
    for (int c = 0; c < d; ++c) norm += std::norm(m.at(r, c));
    norm = std::sqrt(norm);
    for (int c = 0; c < d; ++c) m.at(r, c) /= norm;
  }
  return m;
}

HomogeneousPoly apply_unitary(const ComplexMatrix& t, const HomogeneousPoly& p,
                              double tol) {
  if (t.rows != p.num_vars || t.cols != p.num_vars) {
    throw DimensionError("matrix size does not match polynomial arity");
  }
  if (unitarity_defect(t) > tol) throw DimensionError("matrix is not unitary");
  const int d = p.num_vars;
  // Images of the variables: x_i -> sum_j T_{ij} x_j as degree-1 polynomials.
  std::vector<HomogeneousPoly> images;
  images.reserve(d);
  for (int i = 0; i < d; ++i) {
    HomogeneousPoly lin{d, 1, {}};
    for (int j = 0; j < d; ++j) {
      MultiIndex q(d, 0);
      q[j] = 1;
      lin.add_term(q, t.at(i, j));
    }
    images.push_back(std::move(lin));
  }
  HomogeneousPoly out{d, p.degree, {}};
  for (const auto& [q, c] : p.coeffs) {
    HomogeneousPoly term{d, 0, {{MultiIndex(d, 0), c}}};
    for (int i = 0; i < d; ++i) {
      for (int rep = 0; rep < q[i]; ++rep) term = poly_mul(term, images[i]);
    }
    for (const auto& [tq, tc] : term.coeffs) out.add_term(tq, tc);
  }
  return out;
}

PolyVector apply_unitary_vec(const ComplexMatrix& t, const PolyVector& g, double tol) {
  g.validate();
  if (t.rows != static_cast<int>(g.entries.size()) || t.cols != t.rows) {
    throw DimensionError("matrix size does not match vector length");
  }
  if (unitarity_defect(t) > tol) throw DimensionError("matrix is not unitary");
  PolyVector out;
  out.entries.reserve(g.entries.size());
  for (int i = 0; i < t.rows; ++i) {
    HomogeneousPoly acc = HomogeneousPoly::zero(g.entries.front().num_vars,
                                                g.entries.front().degree);
    for (int j = 0; j < t.cols; ++j) {
      const Complex w = t.at(i, j);
      if (w == Complex{}) continue;
      for (const auto& [q, c] : g.entries[j].coeffs) acc.add_term(q, w * c);
    }
    out.entries.push_back(std::move(acc));
  }
  return out;
}

std::vector<FourierTaylorSeries> derivative_family(
    const std::vector<FourierTaylorSeries>& coeff_functions, int p) {
  if (p < 0) throw OrderError("derivative order must be >= 0");
  std::vector<FourierTaylorSeries> out;
  out.reserve(coeff_functions.size());
  double fact = 1.0;
  for (int k = 2; k <= p; ++k) fact *= k;
  for (const auto& f : coeff_functions) {
    FourierTaylorSeries d = f;
    for (int k = 0; k < p; ++k) d = deriv_h(d);
    out.push_back(fts_scale(d, Complex{1.0 / fact, 0.0}));
  }
  return out;
}

GaussianCheck gaussian_norm_check(const HomogeneousPoly& p, std::int64_t samples,
                                  std::mt19937_64& rng) {
  if (samples <= 0) throw ConfigError("gaussian_norm_check needs samples > 0");
  p.validate();
  GaussianCheck out;
  const double n = mf_norm(p);
  out.exact = n * n;
  // E[|p(Z)|^2] / m! with Z standard complex Gaussian (density e^{-|z|^2}/pi^d).
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  const int d = p.num_vars;
  double acc = 0.0;
  std::vector<Complex> z(d);
  for (std::int64_t s = 0; s < samples; ++s) {
    for (int i = 0; i < d; ++i) z[i] = Complex{gauss(rng), gauss(rng)};
    Complex val{};
    for (const auto& [q, c] : p.coeffs) {
      Complex mono = c;
      for (int i = 0; i < d; ++i) {
        for (int rep = 0; rep < q[i]; ++rep) mono *= z[i];
      }
      val += mono;
    }
    acc += std::norm(val);
  }
  out.estimate = acc / static_cast<double>(samples) /
                 multi_index_factorial(MultiIndex{p.degree});
  return out;
}

std::string poly_to_json(const HomogeneousPoly& p, int indent) {
  p.validate();
  nlohmann::json j;
  j["d"] = p.num_vars;
  j["deg"] = p.degree;
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& [q, c] : p.coeffs) {
    nlohmann::json entry = nlohmann::json::array();
    for (int v : q) entry.push_back(v);
    entry.push_back(c.real());
    entry.push_back(c.imag());
    coeffs.push_back(std::move(entry));
  }
  j["coeffs"] = std::move(coeffs);
  return indent >= 0 ? j.dump(indent) : j.dump();
}

HomogeneousPoly poly_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  HomogeneousPoly p{j.at("d").get<int>(), j.at("deg").get<int>(), {}};
  for (const auto& entry : j.at("coeffs")) {
    if (static_cast<int>(entry.size()) != p.num_vars + 2) {
      throw DimensionError("polynomial coefficient entry has wrong length");
    }
    MultiIndex q(p.num_vars);
    for (int i = 0; i < p.num_vars; ++i) q[i] = entry.at(i).get<int>();
    p.add_term(q, Complex{entry.at(p.num_vars).get<double>(),
                          entry.at(p.num_vars + 1).get<double>()});
  }
  p.validate();
  return p;
}

ComplexMatrix symmetric_power_matrix(const ComplexMatrix& t, int degree) {
  if (t.rows != t.cols) throw DimensionError("symmetric power needs a square matrix");
  const int d = t.rows;
  const auto basis = enumerate_multi_indices(d, degree);
  const int dim = static_cast<int>(basis.size());
  std::map<MultiIndex, int> pos;
  for (int i = 0; i < dim; ++i) pos.emplace(basis[i], i);
  const double total_fact = multi_index_factorial(MultiIndex{degree});
  ComplexMatrix m{dim, dim, std::vector<Complex>(static_cast<std::size_t>(dim) * dim)};
  for (int col = 0; col < dim; ++col) {
    // e*_Q = sqrt(|Q|!/Q!) x^Q; image expanded back in the same basis.
    const MultiIndex& q = basis[col];
    const double wq = std::sqrt(total_fact / multi_index_factorial(q));
    HomogeneousPoly e = HomogeneousPoly::monomial(d, q, Complex{wq, 0.0});
    HomogeneousPoly img = apply_unitary(t, e);
    for (const auto& [pidx, c] : img.coeffs) {
      const double wp = std::sqrt(multi_index_factorial(pidx) / total_fact);
      m.at(pos.at(pidx), col) = c * wp;
    }
  }
  return m;
}

}  // namespace divlab
