#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "puritydyn/bounds.hpp"
#include "puritydyn/common.hpp"
#include "puritydyn/exact.hpp"
#include "puritydyn/lattice.hpp"
#include "puritydyn/linalg.hpp"
#include "puritydyn/pauli.hpp"

namespace puritydyn {

// Tensor-network state in right-canonical form. site_tensors[i] stores the
// 3-index tensor T[l, s, r] as a (2*Dl) x Dr matrix with row (s*Dl + l): the
// physical index picks one of two stacked Dl x Dr blocks, so bond contractions
// are single matrix products. bond_weights[c] are the Schmidt coefficients
// (singular values) at the cut left of site c; entries 0 and n are {1}.
struct MatrixProductState {
  std::vector<Eigen::MatrixXcd> site_tensors;
  std::vector<Eigen::VectorXd> bond_weights;

  int n_sites() const { return static_cast<int>(site_tensors.size()); }
  Eigen::Index left_dim(int i) const { return site_tensors[static_cast<std::size_t>(i)].rows() / 2; }
  Eigen::Index right_dim(int i) const { return site_tensors[static_cast<std::size_t>(i)].cols(); }
};

struct TruncationPolicy {
  int max_rank = 128;
  double discard_tolerance = 1e-12;
};

struct TrotterScheme {
  int order = 2;
  double dt = 0.01;
};

struct EvolutionSample {
  double t = 0.0;
  double purity = 1.0;
  double entropy = 0.0;
  int schmidt_rank = 1;
  double trunc_weight = 0.0;  // cumulative discarded probability weight
};

struct EvolutionRecord {
  std::vector<EvolutionSample> samples;
};

// down[j] = true puts site j in the down state; rank-1 everywhere.
inline MatrixProductState mps_from_basis_product(const std::vector<bool>& down) {
  const int n = static_cast<int>(down.size());
  if (n < 1) throw invalid_size_error("mps_from_basis_product: empty pattern");
  MatrixProductState mps;
  mps.site_tensors.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(2, 1);
    b(down[static_cast<std::size_t>(j)] ? 1 : 0, 0) = 1.0;
    mps.site_tensors.push_back(std::move(b));
  }
  mps.bond_weights.assign(static_cast<std::size_t>(n + 1), Eigen::VectorXd::Ones(1));
  return mps;
}

inline MatrixProductState mps_neel(int n_sites) {
  std::vector<bool> down(static_cast<std::size_t>(std::max(n_sites, 0)));
  for (int j = 0; j < n_sites; ++j) down[static_cast<std::size_t>(j)] = (j % 2 == 1);
  return mps_from_basis_product(down);
}

namespace detail {

// Reshape helper: interpret a (rows*2) x dr matrix as rows x (2*dr) by moving
// the least significant row bit into the column block index.
inline Eigen::MatrixXcd fold_site_into_columns(const Eigen::MatrixXcd& m) {
  const Eigen::Index rows = m.rows() / 2, dr = m.cols();
  Eigen::MatrixXcd out(rows, 2 * dr);
  for (Eigen::Index s = 0; s < 2; ++s)
    for (Eigen::Index b = 0; b < rows; ++b) out.row(b).segment(s * dr, dr) = m.row(2 * b + s);
  return out;
}

}  // namespace detail

// Exact factorization of a dense state: right-to-left SVD sweep peeling one
// site at a time, producing right-canonical tensors and exact bond weights.
inline MatrixProductState mps_from_dense(const DenseState& state) {
  const int n = state.n_sites;
  MatrixProductState mps;
  mps.site_tensors.resize(static_cast<std::size_t>(n));
  mps.bond_weights.assign(static_cast<std::size_t>(n + 1), Eigen::VectorXd::Ones(1));
  Eigen::MatrixXcd remaining = state.amplitudes;  // 2^n x 1; site (n-1) is the lowest row bit
  for (int j = n - 1; j >= 1; --j) {
    const Eigen::Index dr = remaining.cols();
    const Eigen::MatrixXcd folded = detail::fold_site_into_columns(remaining);
    TruncatedSvd svd =
        svd_truncate(folded, static_cast<int>(std::min(folded.rows(), folded.cols())), 1e-14);
    const Eigen::Index k = svd.sigma.size();
    Eigen::MatrixXcd b(2 * k, dr);
    b.topRows(k) = svd.v.topRows(dr).adjoint();
    b.bottomRows(k) = svd.v.bottomRows(dr).adjoint();
    mps.site_tensors[static_cast<std::size_t>(j)] = std::move(b);
    mps.bond_weights[static_cast<std::size_t>(j)] = svd.sigma / svd.sigma.norm();
    remaining = svd.u * svd.sigma.asDiagonal();
  }
  mps.site_tensors[0] = remaining;  // 2 x D1 with a unit left bond
  return mps;
}

inline Eigen::VectorXcd mps_to_dense(const MatrixProductState& mps) {
  const int n = mps.n_sites();
  if (n > dense_capacity) throw capacity_error("mps_to_dense: exceeds dense capacity");
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Ones(1, 1);
  for (int j = 0; j < n; ++j) {
    const auto& b = mps.site_tensors[static_cast<std::size_t>(j)];
    const Eigen::Index dl = mps.left_dim(j), dr = mps.right_dim(j), k = acc.rows();
    Eigen::MatrixXcd next(2 * k, dr);
    for (Eigen::Index s = 0; s < 2; ++s) {
      const Eigen::MatrixXcd prod = acc * b.middleRows(s * dl, dl);
      for (Eigen::Index row = 0; row < k; ++row) next.row(2 * row + s) = prod.row(row);
    }
    acc = std::move(next);
  }
  return Eigen::Map<Eigen::VectorXcd>(acc.data(), acc.rows());
}

inline SchmidtSpectrum cut_spectrum(const MatrixProductState& mps, int bond) {
  if (bond < 1 || bond > mps.n_sites() - 1)
    throw invalid_cut_error("cut_spectrum: bond index must be internal");
  const auto& w = mps.bond_weights[static_cast<std::size_t>(bond)];
  std::vector<double> xi(static_cast<std::size_t>(w.size()));
  for (Eigen::Index i = 0; i < w.size(); ++i) xi[static_cast<std::size_t>(i)] = w(i) * w(i);
  return SchmidtSpectrum(std::move(xi));
}

inline double cut_purity(const MatrixProductState& mps, int bond) {
  return cut_spectrum(mps, bond).purity();
}

inline double cut_entropy(const MatrixProductState& mps, int bond) {
  return cut_spectrum(mps, bond).entropy();
}

inline int cut_rank(const MatrixProductState& mps, int bond) {
  return cut_spectrum(mps, bond).rank();
}

// Worst right-isometry defect (max-abs of sum_s B^s B^s+ - 1) over all sites,
// plus bond-weight normalization drift folded in.
inline double canonical_residual(const MatrixProductState& mps) {
  double defect = 0.0;
  for (int j = 0; j < mps.n_sites(); ++j) {
    const auto& b = mps.site_tensors[static_cast<std::size_t>(j)];
    const Eigen::Index dl = mps.left_dim(j);
    Eigen::MatrixXcd g = b.topRows(dl) * b.topRows(dl).adjoint() +
                         b.bottomRows(dl) * b.bottomRows(dl).adjoint();
    g -= Eigen::MatrixXcd::Identity(dl, dl);
    defect = std::max(defect, g.cwiseAbs().maxCoeff());
  }
  for (const auto& w : mps.bond_weights)
    defect = std::max(defect, std::abs(w.squaredNorm() - 1.0));
  return defect;
}

// --- TEBD -------------------------------------------------------------------

class TebdEngine {
 public:
  TebdEngine(const SpinLatticeModel& model, TrotterScheme scheme, TruncationPolicy policy)
      : n_(model.n_sites), scheme_(scheme), policy_(policy) {
    if (n_ < 2) throw invalid_size_error("TebdEngine: need at least two sites");
    if (scheme_.order != 2 && scheme_.order != 4)
      throw std::invalid_argument("TebdEngine: order must be 2 or 4");
    if (!(scheme_.dt > 0.0)) throw std::invalid_argument("TebdEngine: dt must be positive");
    if (policy_.max_rank < 1) throw std::invalid_argument("TebdEngine: max_rank must be >= 1");
    if (policy_.discard_tolerance < 0.0)
      throw std::invalid_argument("TebdEngine: discard_tolerance must be >= 0");

    pair_h_.assign(static_cast<std::size_t>(n_ - 1), Eigen::Matrix4cd::Zero());
    pair_active_.assign(static_cast<std::size_t>(n_ - 1), false);
    for (const auto& term : model.terms) {
      if (term.factors.size() != 2 || term.factors[1].site != term.factors[0].site + 1)
        throw unsupported_model_error("TebdEngine: only nearest-neighbor two-site terms supported");
      const int s = term.factors[0].site;
      pair_h_[static_cast<std::size_t>(s)] +=
          term_matrix_on_sites(term, {s, s + 1});
      pair_active_[static_cast<std::size_t>(s)] = true;
    }
    layer_active_[0] = layer_active_[1] = false;
    for (int s = 0; s < n_ - 1; ++s)
      if (pair_active_[static_cast<std::size_t>(s)]) layer_active_[s % 2] = true;

    // One step = composition of Strang splittings; order 4 is the standard
    // triple with w1 = 1/(2 - 2^(1/3)) and w0 = 1 - 2 w1.
    std::vector<double> strang_widths;
    if (scheme_.order == 2) {
      strang_widths = {1.0};
    } else {
      const double w1 = 1.0 / (2.0 - std::cbrt(2.0));
      strang_widths = {w1, 1.0 - 2.0 * w1, w1};
    }
    for (double w : strang_widths) {
      push_layer(true, 0.5 * w * scheme_.dt);
      push_layer(false, w * scheme_.dt);
      push_layer(true, 0.5 * w * scheme_.dt);
    }
  }

  // Applies exp(-i H dt) n_steps times. Adjacent equal-parity layers of
  // consecutive steps are merged, which is what makes the boundary half-layers
  // of the Strang splitting nearly free. Returns discarded weight.
  double apply_steps(MatrixProductState& state, int n_steps) {
    if (state.n_sites() != n_) throw std::invalid_argument("TebdEngine: state size mismatch");
    std::vector<std::pair<bool, double>> seq;
    for (int step = 0; step < n_steps; ++step)
      for (const auto& layer : step_template_) {
        if (!seq.empty() && seq.back().first == layer.first)
          seq.back().second += layer.second;
        else
          seq.push_back(layer);
      }
    double discarded = 0.0;
    for (const auto& [even, theta] : seq) apply_layer(state, even, theta, discarded);
    return discarded;
  }

  int n_sites() const { return n_; }
  const TrotterScheme& scheme() const { return scheme_; }

 private:
  void push_layer(bool even, double theta) {
    if (!layer_active_[even ? 0 : 1]) return;  // no active pairs of this parity
    if (!step_template_.empty() && step_template_.back().first == even)
      step_template_.back().second += theta;
    else
      step_template_.push_back({even, theta});
  }

  const std::vector<Eigen::Matrix4cd>& gates_for(double theta) {
    auto it = gate_cache_.find(theta);
    if (it != gate_cache_.end()) return it->second;
    std::vector<Eigen::Matrix4cd> gates(static_cast<std::size_t>(n_ - 1), Eigen::Matrix4cd::Zero());
    for (int s = 0; s < n_ - 1; ++s) {
      if (!pair_active_[static_cast<std::size_t>(s)]) continue;
      const auto eig = eigh(pair_h_[static_cast<std::size_t>(s)]);
      Eigen::Vector4cd phases;
      const cxd mi(0.0, -1.0);
      for (int i = 0; i < 4; ++i) phases(i) = std::exp(mi * theta * eig.values(i));
      gates[static_cast<std::size_t>(s)] =
          eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
    }
    return gate_cache_.emplace(theta, std::move(gates)).first->second;
  }

  void apply_layer(MatrixProductState& state, bool even, double theta, double& discarded) {
    const auto& gates = gates_for(theta);
    for (int s = even ? 0 : 1; s < n_ - 1; s += 2) {
      if (!pair_active_[static_cast<std::size_t>(s)]) continue;
      apply_gate(state, s, gates[static_cast<std::size_t>(s)], discarded);
    }
  }

  // Two-site update, no-inverse variant: the new left tensor is rebuilt from
  // the gated pair and the kept right singular vectors instead of dividing by
  // the left bond weights.
  void apply_gate(MatrixProductState& state, int s, const Eigen::Matrix4cd& gate,
                  double& discarded) {
    auto& bi = state.site_tensors[static_cast<std::size_t>(s)];
    auto& bj = state.site_tensors[static_cast<std::size_t>(s + 1)];
    const Eigen::Index dl = state.left_dim(s), dm = state.right_dim(s), dr = state.right_dim(s + 1);

    // Fold the right tensor's physical index into its columns, contract, gate.
    Eigen::MatrixXcd bj_wide(dm, 2 * dr);
    bj_wide.leftCols(dr) = bj.topRows(dm);
    bj_wide.rightCols(dr) = bj.bottomRows(dm);
    const Eigen::MatrixXcd c = mult(bi, bj_wide);  // (2dl) x (2dr), blocks (s1, s2)

    Eigen::MatrixXcd cg(2 * dl, 2 * dr);
    for (int r = 0; r < 2; ++r)
      for (int col = 0; col < 2; ++col) {
        cg.block(r * dl, col * dr, dl, dr) =
            gate(2 * r + col, 0) * c.block(0, 0, dl, dr) +
            gate(2 * r + col, 1) * c.block(0, dr, dl, dr) +
            gate(2 * r + col, 2) * c.block(dl, 0, dl, dr) +
            gate(2 * r + col, 3) * c.block(dl, dr, dl, dr);
      }

    // Schmidt values at the middle bond come from the weighted pair tensor.
    Eigen::MatrixXcd weighted = cg;
    const auto& wl = state.bond_weights[static_cast<std::size_t>(s)];
    for (Eigen::Index l = 0; l < dl; ++l) {
      weighted.row(l) *= wl(l);
      weighted.row(dl + l) *= wl(l);
    }
    TruncatedSvd svd = svd_truncate(weighted, policy_.max_rank, policy_.discard_tolerance);
    const Eigen::Index k = svd.sigma.size();
    discarded += svd.discarded_weight;

    state.bond_weights[static_cast<std::size_t>(s + 1)] = svd.sigma / std::sqrt(svd.kept_weight);

    Eigen::MatrixXcd bj_new(2 * k, dr);
    bj_new.topRows(k) = svd.v.topRows(dr).adjoint();
    bj_new.bottomRows(k) = svd.v.bottomRows(dr).adjoint();
    bj = std::move(bj_new);
    bi = mult(cg, svd.v) / std::sqrt(svd.kept_weight);
  }

  int n_;
  TrotterScheme scheme_;
  TruncationPolicy policy_;
  std::vector<Eigen::Matrix4cd> pair_h_;
  std::vector<bool> pair_active_;
  bool layer_active_[2] = {false, false};
  std::vector<std::pair<bool, double>> step_template_;
  std::map<double, std::vector<Eigen::Matrix4cd>> gate_cache_;
};

// One full Trotter step exp(-i H dt); returns the discarded weight.
inline double trotter_sweep(MatrixProductState& state, const SpinLatticeModel& model,
                            TrotterScheme scheme, TruncationPolicy policy) {
  TebdEngine engine(model, scheme, policy);
  return engine.apply_steps(state, 1);
}

inline EvolutionRecord evolve_and_sample(MatrixProductState& state, const SpinLatticeModel& model,
                                         double t_max, double sample_interval, TrotterScheme scheme,
                                         TruncationPolicy policy, const Cut& cut) {
  if (cut.kind != Cut::Kind::chain_position)
    throw invalid_cut_error("evolve_and_sample: tensor engine samples at chain bonds only");
  if (t_max < 0.0) throw std::invalid_argument("evolve_and_sample: t_max must be >= 0");
  TebdEngine engine(model, scheme, policy);

  double cumulative = 0.0;
  EvolutionRecord record;
  auto sample_at = [&](double t) {
    const SchmidtSpectrum spec = cut_spectrum(state, cut.position);
    record.samples.push_back(
        {t, spec.purity(), spec.entropy(), spec.rank(), cumulative});
  };
  sample_at(0.0);
  if (t_max == 0.0) return record;

  if (!(sample_interval > 0.0))
    throw std::invalid_argument("evolve_and_sample: sample_interval must be positive");
  const double ratio = sample_interval / scheme.dt;
  const int steps_per_sample = static_cast<int>(std::lround(ratio));
  if (steps_per_sample < 1 || std::abs(ratio - steps_per_sample) > 1e-9 * std::max(1.0, ratio))
    throw std::invalid_argument("evolve_and_sample: sample_interval must be a multiple of dt");

  const int n_blocks = static_cast<int>(std::floor(t_max / sample_interval + 1e-9));
  for (int blk = 1; blk <= n_blocks; ++blk) {
    cumulative += engine.apply_steps(state, steps_per_sample);
    sample_at(blk * sample_interval);
  }
  return record;
}

}  // namespace puritydyn
