#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <utility>
#include <vector>

#include "puritydyn/common.hpp"
#include "puritydyn/lattice.hpp"
#include "puritydyn/linalg.hpp"
#include "puritydyn/pauli.hpp"

namespace puritydyn {

// Eigenvalues of the reduced density operator, non-increasing, summing to 1.
// Sums off by more than 1e-10 are rejected; smaller drift is renormalized.
class SchmidtSpectrum {
 public:
  explicit SchmidtSpectrum(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("SchmidtSpectrum: empty");
    double sum = 0.0;
    for (double v : values_) {
      if (!(v >= -1e-12)) throw std::invalid_argument("SchmidtSpectrum: negative weight");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-10)
      throw std::invalid_argument("SchmidtSpectrum: weights must sum to 1 within 1e-10");
    std::sort(values_.begin(), values_.end(), std::greater<>());
    for (double& v : values_) v = std::max(v, 0.0) / sum;
  }

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  double purity() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return s;
  }
  double cube_trace() const {
    double s = 0.0;
    for (double v : values_) s += v * v * v;
    return s;
  }
  double entropy() const {
    double s = 0.0;
    for (double v : values_)
      if (v > 0.0) s -= v * std::log(v);
    return s;
  }
  int rank(double threshold = 1e-24) const {
    int r = 0;
    for (double v : values_)
      if (v > threshold) ++r;
    return r;
  }

 private:
  std::vector<double> values_;
};

namespace detail {

struct UnionFind {
  std::map<int, int> parent;
  int find(int x) {
    auto it = parent.find(x);
    if (it == parent.end()) {
      parent[x] = x;
      return x;
    }
    if (it->second == x) return x;
    return it->second = find(it->second);
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

inline std::vector<int> bond_sites(const BondTerm& bond) {
  std::vector<int> s;
  for (const auto& f : bond.a_factor.factors) s.push_back(f.site);
  for (const auto& f : bond.b_factor.factors) s.push_back(f.site);
  return s;
}

}  // namespace detail

// Eigenvalue spread of the cut-crossing operator sum. Bonds with disjoint site
// supports live on independent tensor factors, so their spreads add; only
// genuinely overlapping groups are densified (capacity 2^12 per group).
inline double compute_mu(const CutBondInteraction& cut) {
  if (cut.bonds.empty()) throw zero_boundary_error("compute_mu: no bonds");
  detail::UnionFind uf;
  for (const auto& bond : cut.bonds) {
    const auto sites = detail::bond_sites(bond);
    for (std::size_t i = 1; i < sites.size(); ++i) uf.unite(sites[0], sites[i]);
  }
  std::map<int, std::vector<const BondTerm*>> groups;
  for (const auto& bond : cut.bonds) groups[uf.find(detail::bond_sites(bond)[0])].push_back(&bond);

  double mu = 0.0;
  for (const auto& [root, bonds] : groups) {
    if (bonds.size() == 1) {
      // A single weighted Pauli string has eigenvalues +|c| and -|c|.
      mu += 2.0 * std::abs(bonds[0]->coefficient * bonds[0]->a_factor.coefficient *
                           bonds[0]->b_factor.coefficient);
      continue;
    }
    std::set<int> site_set;
    for (const BondTerm* b : bonds)
      for (int s : detail::bond_sites(*b)) site_set.insert(s);
    const std::vector<int> sites(site_set.begin(), site_set.end());
    if (sites.size() > 12) throw capacity_error("compute_mu: boundary group exceeds 2^12 states");
    const Eigen::Index dim = Eigen::Index(1) << sites.size();
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (const BondTerm* b : bonds) {
      PauliTerm merged{b->coefficient * b->a_factor.coefficient * b->b_factor.coefficient, {}};
      for (const auto& f : b->a_factor.factors) merged.factors.push_back(f);
      for (const auto& f : b->b_factor.factors) merged.factors.push_back(f);
      std::sort(merged.factors.begin(), merged.factors.end(),
                [](const PauliFactor& l, const PauliFactor& r) { return l.site < r.site; });
      h += term_matrix_on_sites(merged, sites);
    }
    const Eigen::VectorXd w = eigh_values(h);
    mu += w(w.size() - 1) - w(0);
  }
  return mu;
}

// chi = sqrt(2) * sum_q sqrt(lmax[(H_q^A)^2] lmax[(H_q^B)^2]). For weighted
// Pauli strings each factor contributes its |coefficient|, which makes the
// result invariant under moving scalars between a bond's two factors.
inline double compute_chi(const CutBondInteraction& cut) {
  if (cut.bonds.empty()) throw zero_boundary_error("compute_chi: no bonds");
  double sum = 0.0;
  for (const auto& bond : cut.bonds)
    sum += std::abs(bond.coefficient) * std::abs(bond.a_factor.coefficient) *
           std::abs(bond.b_factor.coefficient);
  return std::numbers::sqrt2 * sum;
}

inline double crossover_time(double mu, double chi) {
  if (!(mu > 0.0)) throw std::domain_error("crossover_time: mu must be positive");
  if (chi < 0.0) throw std::domain_error("crossover_time: chi must be non-negative");
  return (2.0 / mu) * std::atan(chi / (2.0 * mu));
}

struct BoundConstants {
  double mu = 0.0;
  double chi = 0.0;
  std::int64_t l_max = std::numeric_limits<std::int64_t>::max();  // max() = unbounded
  double t1 = 0.0;
};

// Constants for a concrete cut; l_max is the dimension of the smaller factor
// space, the only a-priori Schmidt rank bound available here.
inline BoundConstants bound_constants_for(const CutBondInteraction& cut) {
  BoundConstants c;
  c.mu = compute_mu(cut);
  c.chi = compute_chi(cut);
  const int min_sites = static_cast<int>(std::min(cut.a_sites.size(), cut.b_sites.size()));
  c.l_max = min_sites >= 63 ? std::numeric_limits<std::int64_t>::max()
                            : (std::int64_t(1) << min_sites);
  c.t1 = c.mu > 0.0 ? crossover_time(c.mu, c.chi) : 0.0;
  return c;
}

inline double short_time_lower_bound(double t, double mu) {
  if (t < 0.0) throw std::domain_error("short_time_lower_bound: t must be non-negative");
  if (mu < 0.0) throw std::domain_error("short_time_lower_bound: mu must be non-negative");
  if (mu * t > std::numbers::pi) return 0.0;
  const double c = std::cos(0.5 * mu * t);
  return c * c * c * c;
}

struct PurityEnvelope {
  double lower = 0.0;
  double upper = 1.0;
};

// Two-sided envelope for arbitrary initial purity; pinches to (p0, p0) at t=0
// and reproduces the short-time bound when p0 = 1.
inline PurityEnvelope general_purity_envelope(double t, double mu, double purity0) {
  if (t < 0.0) throw std::domain_error("general_purity_envelope: t must be non-negative");
  if (!(purity0 > 0.0) || purity0 > 1.0)
    throw std::domain_error("general_purity_envelope: purity0 must be in (0,1]");
  const double phi0 = std::asin(std::pow(purity0, 0.25));
  const double lo_arg = std::max(-0.5 * mu * t + phi0, 0.0);
  const double hi_arg = std::min(0.5 * mu * t + phi0, 0.5 * std::numbers::pi);
  const double sl = std::sin(lo_arg), su = std::sin(hi_arg);
  return {sl * sl * sl * sl, su * su * su * su};
}

inline double rank_refined_lower_bound(double t, double mu, std::int64_t l_max) {
  if (t < 0.0) throw std::domain_error("rank_refined_lower_bound: t must be non-negative");
  if (l_max < 2) throw std::domain_error("rank_refined_lower_bound: l_max must be >= 2");
  const double theta = std::clamp(0.5 * mu * t, 0.0, 0.5 * std::numbers::pi);
  const double c = std::cos(theta), s = std::sin(theta);
  return c * c * c * c + s * s * s * s / static_cast<double>(l_max - 1);
}

inline double long_time_lower_bound(double t, double chi) {
  if (t < 0.0) throw std::domain_error("long_time_lower_bound: t must be non-negative");
  if (chi < 0.0) throw std::domain_error("long_time_lower_bound: chi must be non-negative");
  return std::exp(-chi * t);
}

// Quadratic bound up to its tangent point t1, exponential continuation after;
// continuous with continuous log-derivative at t1.
inline double combined_lower_bound(double t, const BoundConstants& k) {
  if (t < 0.0) throw std::domain_error("combined_lower_bound: t must be non-negative");
  if (t <= k.t1 || k.mu == 0.0) return short_time_lower_bound(t, k.mu);
  return short_time_lower_bound(k.t1, k.mu) * std::exp(-k.chi * (t - k.t1));
}

inline double entropy_floor(double purity) {
  if (!(purity > 0.0) || purity > 1.0)
    throw std::domain_error("entropy_floor: purity must be in (0,1]");
  return -std::log(purity);
}

// Rank-2 factorization Theta = -2i|a><b| + 2i|b><a| with a = xi^(3/2),
// b = xi^(1/2). The nonzero eigenvalues are +-2 sqrt(tr rho^3 - (tr rho^2)^2).
struct ThetaFactorization {
  std::vector<double> a_vector;
  std::vector<double> b_vector;
  std::pair<double, double> eigenvalues{0.0, 0.0};  // (lambda_+, lambda_-)
  Eigen::VectorXcd q_plus;
  Eigen::VectorXcd q_minus;
};

inline ThetaFactorization theta_factorization(const SchmidtSpectrum& xi) {
  const auto& v = xi.values();
  const Eigen::Index n = static_cast<Eigen::Index>(v.size());
  ThetaFactorization out;
  out.a_vector.resize(v.size());
  out.b_vector.resize(v.size());
  Eigen::VectorXd a(n), b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    b(i) = std::sqrt(v[i]);
    a(i) = v[i] * b(i);
    out.a_vector[i] = a(i);
    out.b_vector[i] = b(i);
  }
  const double gamma2 = std::max(xi.cube_trace() - xi.purity() * xi.purity(), 0.0);
  const double gamma = std::sqrt(gamma2);
  out.eigenvalues = {2.0 * gamma, -2.0 * gamma};

  // Orthonormal plane (e1, e2) spanned by b and a; Theta restricted to it is
  // [[0, 2ig], [-2ig, 0]], so q_+- = (e1 -+ i e2)/sqrt(2).
  const Eigen::VectorXd e1 = b / b.norm();
  Eigen::VectorXd u = a - e1.dot(a) * e1;
  const double un = u.norm();
  out.q_plus = Eigen::VectorXcd::Zero(n);
  out.q_minus = Eigen::VectorXcd::Zero(n);
  if (un > 1e-15) {
    const Eigen::VectorXd e2 = u / un;
    const cxd i(0.0, 1.0);
    out.q_plus = (e1.cast<cxd>() - i * e2.cast<cxd>()) / std::numbers::sqrt2;
    out.q_minus = (e1.cast<cxd>() + i * e2.cast<cxd>()) / std::numbers::sqrt2;
  } else {
    out.q_plus = e1.cast<cxd>();  // Theta = 0; vectors are arbitrary here
    out.q_minus = e1.cast<cxd>();
  }
  return out;
}

// Dense Theta matrix, used to cross-check the factorization spectrally.
inline Eigen::MatrixXcd theta_dense(const SchmidtSpectrum& xi) {
  const auto& v = xi.values();
  const Eigen::Index n = static_cast<Eigen::Index>(v.size());
  Eigen::MatrixXcd th(n, n);
  const cxd mi(0.0, -2.0);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      th(r, c) = mi * std::sqrt(v[r] * v[c]) * (v[r] - v[c]);
  return th;
}

inline std::pair<double, double> cube_trace_hardy_bound(const SchmidtSpectrum& xi) {
  const double p = xi.purity();
  return {xi.cube_trace(), std::pow(p, 1.5)};
}

// Largest tr rho^3 attainable at fixed purity and Schmidt rank <= l_max; the
// maximizer is a two-level spectrum, which makes the bound exactly attainable.
inline double cube_trace_rank_bound(double purity, std::int64_t l_max) {
  if (l_max < 2) throw std::domain_error("cube_trace_rank_bound: l_max must be >= 2");
  if (purity > 1.0 + 1e-12) throw std::domain_error("cube_trace_rank_bound: purity > 1");
  const double l = static_cast<double>(l_max);
  if (purity < 1.0 / l - 1e-12)
    throw infeasibility_error("cube_trace_rank_bound: purity below 1/l_max is unattainable");
  const double s = std::sqrt(std::max((l - 1.0) * (l * std::min(purity, 1.0) - 1.0), 0.0));
  const double first = (1.0 + s);
  const double second = (l - 1.0 - s);
  return (first * first * first + second * second * second / ((l - 1.0) * (l - 1.0))) / (l * l * l);
}

}  // namespace puritydyn
