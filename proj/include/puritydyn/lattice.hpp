#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "puritydyn/common.hpp"
#include "puritydyn/pauli.hpp"

namespace puritydyn {

enum class Geometry { chain, two_chain_ladder };

// For two_chain_ladder geometries sites are interleaved: site 2j is rung j of
// chain A (sigma operators), site 2j+1 is rung j of chain B (tau operators).
struct SpinLatticeModel {
  int n_sites = 0;
  Geometry geometry = Geometry::chain;
  std::vector<PauliTerm> terms;
  std::optional<double> delta;

  void validate() const {
    if (n_sites < 1) throw invalid_size_error("SpinLatticeModel: n_sites must be positive");
    if (geometry == Geometry::two_chain_ladder && n_sites % 2 != 0)
      throw invalid_size_error("SpinLatticeModel: ladder requires an even site count");
    for (const auto& t : terms) {
      t.validate();
      for (const auto& f : t.factors)
        if (f.site >= n_sites) throw std::invalid_argument("SpinLatticeModel: term site out of range");
    }
  }
};

inline SpinLatticeModel build_xx_chain(int n) {
  if (n < 1) throw invalid_size_error("build_xx_chain: n must be >= 1");
  SpinLatticeModel m;
  m.n_sites = n;
  m.geometry = Geometry::chain;
  for (int j = 0; j + 1 < n; ++j) {
    m.terms.push_back({-0.5, {{j, PauliAxis::x}, {j + 1, PauliAxis::x}}});
    m.terms.push_back({-0.5, {{j, PauliAxis::y}, {j + 1, PauliAxis::y}}});
  }
  return m;
}

inline SpinLatticeModel build_xxz_chain(int n, double delta) {
  if (n < 1) throw invalid_size_error("build_xxz_chain: n must be >= 1");
  SpinLatticeModel m;
  m.n_sites = n;
  m.geometry = Geometry::chain;
  m.delta = delta;
  for (int j = 0; j + 1 < n; ++j) {
    m.terms.push_back({-0.5, {{j, PauliAxis::x}, {j + 1, PauliAxis::x}}});
    m.terms.push_back({-0.5, {{j, PauliAxis::y}, {j + 1, PauliAxis::y}}});
    if (delta != 0.0)
      m.terms.push_back({-0.5 * delta, {{j, PauliAxis::z}, {j + 1, PauliAxis::z}}});
  }
  return m;
}

// Rung couplings sigma_j^x tau_j^x with unit coefficient; optional x-x
// nearest-neighbor couplings inside each chain.
inline SpinLatticeModel build_coupled_ising_chains(int n_rungs, double intra_coupling) {
  if (n_rungs < 1) throw invalid_size_error("build_coupled_ising_chains: n_rungs must be >= 1");
  SpinLatticeModel m;
  m.n_sites = 2 * n_rungs;
  m.geometry = Geometry::two_chain_ladder;
  for (int j = 0; j < n_rungs; ++j)
    m.terms.push_back({1.0, {{2 * j, PauliAxis::x}, {2 * j + 1, PauliAxis::x}}});
  if (intra_coupling != 0.0) {
    for (int j = 0; j + 1 < n_rungs; ++j)
      m.terms.push_back({intra_coupling, {{2 * j, PauliAxis::x}, {2 * j + 2, PauliAxis::x}}});
    for (int j = 0; j + 1 < n_rungs; ++j)
      m.terms.push_back({intra_coupling, {{2 * j + 1, PauliAxis::x}, {2 * j + 3, PauliAxis::x}}});
  }
  return m;
}

// Bipartition descriptor. chain_position c puts sites 0..c-1 into A;
// chain_split across a ladder puts chain A (even sites) against chain B.
struct Cut {
  enum class Kind { chain_position, chain_split } kind = Kind::chain_position;
  int position = 0;

  static Cut at_position(int c) { return {Kind::chain_position, c}; }
  static Cut split_chains() { return {Kind::chain_split, 0}; }
};

struct Partition {
  std::vector<int> a_sites;
  std::vector<int> b_sites;
};

inline Partition partition_sites(const SpinLatticeModel& model, const Cut& cut) {
  Partition p;
  if (cut.kind == Cut::Kind::chain_position) {
    if (cut.position < 1 || cut.position >= model.n_sites)
      throw invalid_cut_error("cut position must leave both partitions nonempty");
    for (int j = 0; j < model.n_sites; ++j)
      (j < cut.position ? p.a_sites : p.b_sites).push_back(j);
  } else {
    if (model.geometry != Geometry::two_chain_ladder)
      throw invalid_cut_error("chain_split cut requires a two-chain ladder");
    for (int j = 0; j < model.n_sites; ++j) (j % 2 == 0 ? p.a_sites : p.b_sites).push_back(j);
  }
  return p;
}

// One cut-crossing product term H_q^(A) (x) H_q^(B). The scalar weight lives
// on the bond; both factors carry unit coefficient.
struct BondTerm {
  double coefficient = 0.0;
  PauliTerm a_factor;
  PauliTerm b_factor;
};

struct CutBondInteraction {
  std::vector<BondTerm> bonds;
  std::set<int> boundary_sites;
  std::vector<int> a_sites;  // full partition, kept for dense realizations
  std::vector<int> b_sites;
};

inline CutBondInteraction extract_cut_interaction(const SpinLatticeModel& model, const Cut& cut) {
  const Partition part = partition_sites(model, cut);
  const std::set<int> a_set(part.a_sites.begin(), part.a_sites.end());
  CutBondInteraction out;
  out.a_sites = part.a_sites;
  out.b_sites = part.b_sites;
  for (const auto& term : model.terms) {
    PauliTerm a{1.0, {}}, b{1.0, {}};
    for (const auto& f : term.factors) (a_set.count(f.site) ? a : b).factors.push_back(f);
    if (a.factors.empty() || b.factors.empty()) continue;  // intra-partition term
    for (const auto& f : term.factors) out.boundary_sites.insert(f.site);
    out.bonds.push_back({term.coefficient, std::move(a), std::move(b)});
  }
  return out;
}

// The terms extract_cut_interaction leaves out, split by partition. Together
// with the bonds these reassemble the model's term list exactly.
inline std::pair<std::vector<PauliTerm>, std::vector<PauliTerm>> intra_terms(
    const SpinLatticeModel& model, const Cut& cut) {
  const Partition part = partition_sites(model, cut);
  const std::set<int> a_set(part.a_sites.begin(), part.a_sites.end());
  std::vector<PauliTerm> a_terms, b_terms;
  for (const auto& term : model.terms) {
    bool any_a = false, any_b = false;
    for (const auto& f : term.factors) (a_set.count(f.site) ? any_a : any_b) = true;
    if (any_a && any_b) continue;
    (any_a ? a_terms : b_terms).push_back(term);
  }
  return {a_terms, b_terms};
}

struct BoundaryCount {
  int site_count = 0;
  int bond_count = 0;
};

inline BoundaryCount boundary_site_count(const CutBondInteraction& cut) {
  if (cut.bonds.empty()) throw zero_boundary_error("cut interaction has no bonds");
  return {static_cast<int>(cut.boundary_sites.size()), static_cast<int>(cut.bonds.size())};
}

}  // namespace puritydyn
