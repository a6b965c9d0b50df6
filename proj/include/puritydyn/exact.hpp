#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "puritydyn/bounds.hpp"
#include "puritydyn/common.hpp"
#include "puritydyn/lattice.hpp"
#include "puritydyn/linalg.hpp"
#include "puritydyn/pauli.hpp"

namespace puritydyn {

// Dense-state evolution for small systems: the ground truth the tensor-network
// engine is checked against. Site j maps to bit (n_sites-1-j); bit 0 is up.

inline constexpr int dense_capacity = 16;

struct DenseState {
  Eigen::VectorXcd amplitudes;
  int n_sites = 0;

  DenseState(Eigen::VectorXcd amp, int n) : amplitudes(std::move(amp)), n_sites(n) { validate(); }

  void validate() const {
    if (n_sites < 1) throw invalid_size_error("DenseState: n_sites must be >= 1");
    if (n_sites > dense_capacity)
      throw capacity_error("DenseState: exceeds dense capacity of 16 sites");
    if (amplitudes.size() != (Eigen::Index(1) << n_sites))
      throw std::invalid_argument("DenseState: amplitude count != 2^n_sites");
    if (std::abs(amplitudes.norm() - 1.0) > 1e-10)
      throw std::invalid_argument("DenseState: state must be normalized within 1e-10");
  }
};

// --- Initial states ---------------------------------------------------------

// down[j] = true puts site j in the down state.
inline DenseState dense_basis_product(const std::vector<bool>& down) {
  const int n = static_cast<int>(down.size());
  if (n < 1) throw invalid_size_error("dense_basis_product: empty pattern");
  if (n > dense_capacity) throw capacity_error("dense_basis_product: exceeds dense capacity");
  std::uint64_t idx = 0;
  for (int j = 0; j < n; ++j)
    if (down[j]) idx |= std::uint64_t(1) << (n - 1 - j);
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(Eigen::Index(1) << n);
  amp(static_cast<Eigen::Index>(idx)) = 1.0;
  return DenseState(std::move(amp), n);
}

inline DenseState dense_neel(int n_sites) {
  std::vector<bool> down(static_cast<std::size_t>(std::max(n_sites, 0)));
  for (int j = 0; j < n_sites; ++j) down[static_cast<std::size_t>(j)] = (j % 2 == 1);
  return dense_basis_product(down);
}

inline DenseState dense_all_down(int n_sites) {
  return dense_basis_product(std::vector<bool>(static_cast<std::size_t>(std::max(n_sites, 0)), true));
}

namespace detail {

// Chain states live on N sites with chain-local convention bit (N-1-j).
inline Eigen::VectorXcd chain_ghz_x(int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  const double amp = std::pow(2.0, 0.5 * (1 - n));  // weight of each even-parity basis state
  for (Eigen::Index k = 0; k < dim; ++k)
    if (std::popcount(static_cast<std::uint64_t>(k)) % 2 == 0) v(k) = amp;
  return v;
}

inline Eigen::VectorXcd chain_w(int n, int p) {
  if (p < 0 || p > n) throw std::invalid_argument("chain_w: flip count out of range");
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  std::vector<Eigen::Index> hits;
  for (Eigen::Index k = 0; k < dim; ++k)
    if (std::popcount(static_cast<std::uint64_t>(k)) == n - p) hits.push_back(k);
  const double amp = 1.0 / std::sqrt(static_cast<double>(hits.size()));
  for (Eigen::Index k : hits) v(k) = amp;
  return v;
}

// Ladder sites interleave the chains: site 2j is chain A site j, 2j+1 chain B.
inline DenseState interleave_chains(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, int n_rungs) {
  const int n = 2 * n_rungs;
  if (n > dense_capacity) throw capacity_error("interleave_chains: exceeds dense capacity");
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::VectorXcd amp(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    Eigen::Index ia = 0, ib = 0;
    for (int j = 0; j < n_rungs; ++j) {
      ia |= ((k >> (n - 1 - 2 * j)) & 1) << (n_rungs - 1 - j);
      ib |= ((k >> (n - 2 - 2 * j)) & 1) << (n_rungs - 1 - j);
    }
    amp(k) = a(ia) * b(ib);
  }
  return DenseState(std::move(amp), n);
}

}  // namespace detail

// Chain A all down, chain B all up.
inline DenseState dense_product_updown(int n_rungs) {
  if (n_rungs < 1) throw invalid_size_error("dense_product_updown: n_rungs must be >= 1");
  std::vector<bool> down(static_cast<std::size_t>(2 * n_rungs));
  for (int j = 0; j < n_rungs; ++j) down[static_cast<std::size_t>(2 * j)] = true;
  return dense_basis_product(down);
}

inline DenseState dense_ghz_x_ladder(int n_rungs) {
  if (n_rungs < 1) throw invalid_size_error("dense_ghz_x_ladder: n_rungs must be >= 1");
  const Eigen::VectorXcd chain = detail::chain_ghz_x(n_rungs);
  return detail::interleave_chains(chain, chain, n_rungs);
}

// Uniform superposition of all p-flip patterns on each all-down chain.
inline DenseState dense_w_ladder(int n_rungs, int p) {
  if (n_rungs < 1) throw invalid_size_error("dense_w_ladder: n_rungs must be >= 1");
  const Eigen::VectorXcd chain = detail::chain_w(n_rungs, p);
  return detail::interleave_chains(chain, chain, n_rungs);
}

// --- Hamiltonian application ------------------------------------------------

inline std::vector<CompiledPauliTerm> compile_model(const SpinLatticeModel& model) {
  std::vector<CompiledPauliTerm> out;
  out.reserve(model.terms.size());
  for (const auto& term : model.terms) out.push_back(CompiledPauliTerm::compile(term, model.n_sites));
  return out;
}

// out = H in
inline void apply_compiled(const std::vector<CompiledPauliTerm>& terms, const Eigen::VectorXcd& in,
                           Eigen::VectorXcd& out) {
  out.setZero();
  for (const auto& t : terms) t.accumulate(in, out);
}

inline double energy_expectation(const SpinLatticeModel& model, const DenseState& state) {
  const auto terms = compile_model(model);
  Eigen::VectorXcd hv(state.amplitudes.size());
  apply_compiled(terms, state.amplitudes, hv);
  return state.amplitudes.dot(hv).real();
}

namespace detail {

// y = exp(-i t T) e1 for the real symmetric tridiagonal T given by (diag, sub).
inline Eigen::VectorXcd tridiag_expv_e1(std::vector<double> diag, std::vector<double> sub,
                                        double t) {
  const int m = static_cast<int>(diag.size());
  sub.resize(static_cast<std::size_t>(m), 0.0);  // dstev reads m-1 entries, wants a valid pointer
  Eigen::MatrixXd z(m, m);
  int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', m, diag.data(), sub.data(), z.data(), m);
  if (info != 0) throw std::runtime_error("tridiag_expv_e1: eigensolve failed");
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(m);
  const cxd mi(0.0, -1.0);
  for (int c = 0; c < m; ++c) y += std::exp(mi * t * diag[static_cast<std::size_t>(c)]) * z(0, c) * z.col(c).cast<cxd>();
  return y;
}

// One adaptive Lanczos step: tries to realize exp(-i t H) v in at most m_max
// Krylov vectors; on failure bisects t. Full reorthogonalization keeps the
// basis orthonormal to machine precision.
template <class MatVec>
void krylov_propagate(const MatVec& matvec, Eigen::VectorXcd& v, double t, double tol = 1e-12,
                      int m_max = 80, int depth = 0) {
  if (t == 0.0) return;
  if (depth > 40) throw std::runtime_error("krylov_propagate: step bisection failed to converge");
  const Eigen::Index dim = v.size();
  const double beta0 = v.norm();
  std::vector<Eigen::VectorXcd> basis;
  basis.push_back(v / beta0);
  std::vector<double> alpha, beta;
  Eigen::VectorXcd w(dim);
  const int m_cap = static_cast<int>(std::min<Eigen::Index>(m_max, dim));
  for (int j = 0; j < m_cap; ++j) {
    matvec(basis[static_cast<std::size_t>(j)], w);
    if (j > 0) w -= beta[static_cast<std::size_t>(j - 1)] * basis[static_cast<std::size_t>(j - 1)];
    alpha.push_back(basis[static_cast<std::size_t>(j)].dot(w).real());
    w -= alpha[static_cast<std::size_t>(j)] * basis[static_cast<std::size_t>(j)];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) w -= q.dot(w) * q;
    const double b = w.norm();

    const bool breakdown = b < 1e-14 * std::max(1.0, std::abs(alpha[static_cast<std::size_t>(j)]));
    Eigen::VectorXcd y = tridiag_expv_e1(alpha, beta, t);
    const double err = breakdown ? 0.0 : b * std::abs(y(j));
    if (breakdown || err < tol) {
      Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
      for (int i = 0; i <= j; ++i) out += y(i) * basis[static_cast<std::size_t>(i)];
      v = out * beta0;
      v /= v.norm() / beta0;  // Lanczos output norm drifts at the tolerance level
      return;
    }
    beta.push_back(b);
    basis.push_back(w / b);
  }
  krylov_propagate(matvec, v, 0.5 * t, tol, m_max, depth + 1);
  krylov_propagate(matvec, v, 0.5 * t, tol, m_max, depth + 1);
}

}  // namespace detail

// Propagator exp(-i H t) with the method picked by system size: cached dense
// eigendecomposition when the Hilbert space is small, Lanczos above that.
class DenseEvolver {
 public:
  explicit DenseEvolver(const SpinLatticeModel& model)
      : n_(model.n_sites), terms_(compile_model(model)) {
    if (n_ > dense_capacity) throw capacity_error("DenseEvolver: exceeds dense capacity");
    const Eigen::Index dim = Eigen::Index(1) << n_;
    eig_path_ = dim <= 1024;
    if (eig_path_) {
      Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
      for (const auto& t : terms_)
        for (Eigen::Index k = 0; k < dim; ++k) {
          const auto kk = static_cast<std::uint64_t>(k);
          const bool neg = std::popcount(kk & t.sign_mask) % 2 == 1;
          h(static_cast<Eigen::Index>(kk ^ t.flip_mask), k) += neg ? -t.scale : t.scale;
        }
      auto eig = eigh(h);
      eig_values_ = std::move(eig.values);
      eig_vectors_ = std::move(eig.vectors);
    }
  }

  void step(Eigen::VectorXcd& v, double dt) const {
    if (eig_path_) {
      Eigen::VectorXcd c = eig_vectors_.adjoint() * v;
      const cxd mi(0.0, -1.0);
      for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::exp(mi * dt * eig_values_(i));
      v = eig_vectors_ * c;
      return;
    }
    auto matvec = [this](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
      apply_compiled(terms_, in, out);
    };
    detail::krylov_propagate(matvec, v, dt);
  }

  int n_sites() const { return n_; }

 private:
  int n_;
  std::vector<CompiledPauliTerm> terms_;
  bool eig_path_ = false;
  Eigen::VectorXd eig_values_;
  Eigen::MatrixXcd eig_vectors_;
};

inline DenseState evolve_dense(const DenseState& state, const SpinLatticeModel& model, double t) {
  if (model.n_sites != state.n_sites)
    throw std::invalid_argument("evolve_dense: model/state size mismatch");
  DenseEvolver evolver(model);
  Eigen::VectorXcd v = state.amplitudes;
  evolver.step(v, t);
  return DenseState(std::move(v), state.n_sites);
}

// --- Schmidt analysis -------------------------------------------------------

namespace detail {

inline std::pair<std::vector<int>, std::vector<int>> cut_site_lists(const Cut& cut, int n_sites) {
  std::vector<int> a, b;
  if (cut.kind == Cut::Kind::chain_position) {
    if (cut.position < 1 || cut.position >= n_sites)
      throw invalid_cut_error("cut_site_lists: bond index outside the chain");
    for (int j = 0; j < n_sites; ++j) (j < cut.position ? a : b).push_back(j);
  } else {
    if (n_sites % 2 != 0) throw invalid_cut_error("cut_site_lists: chain split needs even site count");
    for (int j = 0; j < n_sites; ++j) (j % 2 == 0 ? a : b).push_back(j);
  }
  return {a, b};
}

// Amplitude matrix M(a_idx, b_idx) for an arbitrary site bipartition; listed
// site order defines the subsystem bit order (first site = highest bit).
inline Eigen::MatrixXcd bipartition_matrix(const DenseState& state, const std::vector<int>& a_sites,
                                           const std::vector<int>& b_sites) {
  const int n = state.n_sites;
  if (a_sites.empty() || b_sites.empty() ||
      a_sites.size() + b_sites.size() != static_cast<std::size_t>(n))
    throw invalid_cut_error("bipartition_matrix: site lists must partition the lattice");
  const int na = static_cast<int>(a_sites.size()), nb = static_cast<int>(b_sites.size());
  Eigen::MatrixXcd m(Eigen::Index(1) << na, Eigen::Index(1) << nb);
  const Eigen::Index dim = state.amplitudes.size();
  for (Eigen::Index k = 0; k < dim; ++k) {
    Eigen::Index ia = 0, ib = 0;
    for (int i = 0; i < na; ++i) ia |= ((k >> (n - 1 - a_sites[static_cast<std::size_t>(i)])) & 1) << (na - 1 - i);
    for (int i = 0; i < nb; ++i) ib |= ((k >> (n - 1 - b_sites[static_cast<std::size_t>(i)])) & 1) << (nb - 1 - i);
    m(ia, ib) = state.amplitudes(k);
  }
  return m;
}

}  // namespace detail

inline SchmidtSpectrum reduced_schmidt_spectrum(const DenseState& state, const Cut& cut) {
  const auto [a, b] = detail::cut_site_lists(cut, state.n_sites);
  const Eigen::VectorXd s = singular_values(detail::bipartition_matrix(state, a, b));
  std::vector<double> xi(static_cast<std::size_t>(s.size()));
  for (Eigen::Index i = 0; i < s.size(); ++i) xi[static_cast<std::size_t>(i)] = s(i) * s(i);
  return SchmidtSpectrum(std::move(xi));
}

// Schmidt vectors alongside the weights: columns of phi_a / phi_b are the A /
// B Schmidt states for the same index, xi their shared weights.
struct SchmidtBasis {
  std::vector<double> xi;
  Eigen::MatrixXcd phi_a;
  Eigen::MatrixXcd phi_b;
};

inline SchmidtBasis schmidt_basis(const DenseState& state, const std::vector<int>& a_sites,
                                  const std::vector<int>& b_sites) {
  const Eigen::MatrixXcd m = detail::bipartition_matrix(state, a_sites, b_sites);
  const int full = static_cast<int>(std::min(m.rows(), m.cols()));
  const TruncatedSvd svd = svd_truncate(m, full, 0.0);
  SchmidtBasis out;
  out.xi.resize(static_cast<std::size_t>(svd.sigma.size()));
  for (Eigen::Index i = 0; i < svd.sigma.size(); ++i)
    out.xi[static_cast<std::size_t>(i)] = svd.sigma(i) * svd.sigma(i);
  out.phi_a = svd.u;
  out.phi_b = svd.v.conjugate();  // M = U diag(sigma) V^dagger pairs U with conj(V)
  return out;
}

// --- Purity rate ------------------------------------------------------------

namespace detail {

// Remap a cut-interaction factor onto the subsystem's local site indexing.
inline CompiledPauliTerm compile_on_subsystem(const PauliTerm& term, const std::vector<int>& sites) {
  PauliTerm local{term.coefficient, {}};
  for (const auto& f : term.factors) {
    const auto it = std::find(sites.begin(), sites.end(), f.site);
    if (it == sites.end())
      throw std::invalid_argument("compile_on_subsystem: factor site not in subsystem");
    local.factors.push_back({static_cast<int>(it - sites.begin()), f.axis});
  }
  return CompiledPauliTerm::compile(local, static_cast<int>(sites.size()));
}

}  // namespace detail

using QMatrix = Eigen::MatrixXcd;

// Q_ab = sum_q <phi_a^A|H_q^A|phi_b^A> <phi_a^B|H_q^B|phi_b^B>, Hermitian.
inline QMatrix build_q_matrix(const SchmidtBasis& basis, const CutBondInteraction& bond) {
  const Eigen::Index r = static_cast<Eigen::Index>(basis.xi.size());
  QMatrix q = QMatrix::Zero(r, r);
  for (const auto& bt : bond.bonds) {
    const auto ca = detail::compile_on_subsystem(bt.a_factor, bond.a_sites);
    const auto cb = detail::compile_on_subsystem(bt.b_factor, bond.b_sites);
    Eigen::MatrixXcd ha_phi(basis.phi_a.rows(), r), hb_phi(basis.phi_b.rows(), r);
    Eigen::VectorXcd col(basis.phi_a.rows());
    for (Eigen::Index c = 0; c < r; ++c) {
      col.setZero();
      ca.accumulate(basis.phi_a.col(c), col);
      ha_phi.col(c) = col;
    }
    Eigen::VectorXcd colb(basis.phi_b.rows());
    for (Eigen::Index c = 0; c < r; ++c) {
      colb.setZero();
      cb.accumulate(basis.phi_b.col(c), colb);
      hb_phi.col(c) = colb;
    }
    const Eigen::MatrixXcd ma = basis.phi_a.adjoint() * ha_phi;
    const Eigen::MatrixXcd mb = basis.phi_b.adjoint() * hb_phi;
    q += bt.coefficient * ma.cwiseProduct(mb);
  }
  return q;
}

// Elementwise contraction of Theta with Q; with Theta's rank-2 form this is
// 4 Im(a^T Q b), manifestly real.
inline double rate_from_schmidt(const SchmidtBasis& basis, const CutBondInteraction& bond) {
  const QMatrix q = build_q_matrix(basis, bond);
  const Eigen::Index r = q.rows();
  Eigen::VectorXcd a(r), b(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    const double sq = std::sqrt(basis.xi[static_cast<std::size_t>(i)]);
    b(i) = sq;
    a(i) = basis.xi[static_cast<std::size_t>(i)] * sq;
  }
  const cxd z = (a.transpose() * (q * b))(0);
  return 4.0 * z.imag();
}

inline double purity_rate_formula(const DenseState& state, const CutBondInteraction& bond) {
  return rate_from_schmidt(schmidt_basis(state, bond.a_sites, bond.b_sites), bond);
}

// (|rate|, 2 mu sqrt(tr rho^3 - (tr rho^2)^2)): the rate bound pair.
inline std::pair<double, double> rate_bound_check(const DenseState& state,
                                                  const CutBondInteraction& bond, double mu) {
  const SchmidtBasis basis = schmidt_basis(state, bond.a_sites, bond.b_sites);
  double p2 = 0.0, p3 = 0.0;
  for (double x : basis.xi) {
    p2 += x * x;
    p3 += x * x * x;
  }
  const double rate = rate_from_schmidt(basis, bond);
  return {std::abs(rate), 2.0 * mu * std::sqrt(std::max(p3 - p2 * p2, 0.0))};
}

}  // namespace puritydyn
