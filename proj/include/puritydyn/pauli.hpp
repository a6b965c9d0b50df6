#pragma once

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "puritydyn/common.hpp"

namespace puritydyn {

enum class PauliAxis : int { x = 0, y = 1, z = 2 };

inline char axis_name(PauliAxis a) { return a == PauliAxis::x ? 'x' : (a == PauliAxis::y ? 'y' : 'z'); }

struct PauliFactor {
  int site = 0;
  PauliAxis axis = PauliAxis::x;
  friend bool operator==(const PauliFactor&, const PauliFactor&) = default;
};

// One weighted Pauli string. Site indices are strictly increasing; the
// coefficient is finite and nonzero.
struct PauliTerm {
  double coefficient = 0.0;
  std::vector<PauliFactor> factors;

  void validate() const {
    if (!std::isfinite(coefficient) || coefficient == 0.0)
      throw std::invalid_argument("PauliTerm: coefficient must be finite and nonzero");
    for (std::size_t i = 0; i + 1 < factors.size(); ++i)
      if (factors[i].site >= factors[i + 1].site)
        throw std::invalid_argument("PauliTerm: site indices must be strictly increasing");
    for (const auto& f : factors)
      if (f.site < 0) throw std::invalid_argument("PauliTerm: negative site index");
  }

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

inline Eigen::Matrix2cd pauli_matrix(PauliAxis a) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  const cxd i(0.0, 1.0);
  switch (a) {
    case PauliAxis::x: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case PauliAxis::y: m(0, 1) = -i;  m(1, 0) = i;   break;
    case PauliAxis::z: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
  }
  return m;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Dense realization of a term on an ordered list of sites; sites absent from
// the term contribute identity factors. The term coefficient is included.
inline Eigen::MatrixXcd term_matrix_on_sites(const PauliTerm& term, const std::vector<int>& sites) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int site : sites) {
    bool hit = false;
    for (const auto& f : term.factors)
      if (f.site == site) {
        m = kron(m, pauli_matrix(f.axis));
        hit = true;
        break;
      }
    if (!hit) m = kron(m, Eigen::Matrix2cd::Identity());
  }
  return term.coefficient * m;
}

// Basis convention for dense state vectors: site j maps to bit (n-1-j) of the
// basis index, bit value 0 = spin up. Hence sigma^z |0> = +|0>,
// sigma^x |b> = |1-b>, sigma^y |b> = i(-1)^b |1-b>.
struct CompiledPauliTerm {
  std::uint64_t flip_mask = 0;  // x and y sites
  std::uint64_t sign_mask = 0;  // y and z sites (phase from the pre-flip bit)
  cxd scale;                    // coefficient * i^(number of y factors)

  static CompiledPauliTerm compile(const PauliTerm& term, int n_sites) {
    CompiledPauliTerm c;
    int y_count = 0;
    for (const auto& f : term.factors) {
      if (f.site >= n_sites) throw std::invalid_argument("CompiledPauliTerm: site out of range");
      const std::uint64_t bit = 1ULL << (n_sites - 1 - f.site);
      if (f.axis != PauliAxis::z) c.flip_mask |= bit;
      if (f.axis != PauliAxis::x) c.sign_mask |= bit;
      if (f.axis == PauliAxis::y) ++y_count;
    }
    static const cxd ipow[4] = {cxd(1, 0), cxd(0, 1), cxd(-1, 0), cxd(0, -1)};
    c.scale = term.coefficient * ipow[y_count % 4];
    return c;
  }

  // out += (this term) |in>
  void accumulate(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const {
    const std::uint64_t dim = static_cast<std::uint64_t>(in.size());
    for (std::uint64_t k = 0; k < dim; ++k) {
      const cxd amp = in(static_cast<Eigen::Index>(k));
      if (amp == cxd(0.0, 0.0)) continue;
      const bool neg = std::popcount(k & sign_mask) & 1;
      out(static_cast<Eigen::Index>(k ^ flip_mask)) += (neg ? -scale : scale) * amp;
    }
  }
};

}  // namespace puritydyn
