#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include <cblas.h>
#include <lapacke.h>

#include "puritydyn/common.hpp"

namespace puritydyn {

namespace detail {

// OpenBLAS's runtime dispatcher does not recognize some virtualized CPUs and
// falls back to a generic SSE2 kernel, costing ~4x on every gemm/SVD. Pick the
// kernel from cpuid before the (statically linked) BLAS runtime initializes.
// An OPENBLAS_CORETYPE already present in the environment always wins.
__attribute__((constructor(101))) inline void tune_blas_kernel() {
#if defined(__GNUC__) && defined(__x86_64__)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx512f"))
    ::setenv("OPENBLAS_CORETYPE", "SKYLAKEX", 0);
  else if (__builtin_cpu_supports("avx2"))
    ::setenv("OPENBLAS_CORETYPE", "HASWELL", 0);
#endif
  ::setenv("OPENBLAS_NUM_THREADS", "1", 0);
}

inline lapack_complex_double* lp(Eigen::MatrixXcd& m) {
  return reinterpret_cast<lapack_complex_double*>(m.data());
}

}  // namespace detail

// C = A * B through BLAS; Eigen's own product is single-threaded generic code
// and noticeably slower on the sizes the TEBD inner loop produces.
inline Eigen::MatrixXcd mult(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mult: shape mismatch");
  Eigen::MatrixXcd c(a.rows(), b.cols());
  const cxd one(1.0, 0.0), zero(0.0, 0.0);
  cblas_zgemm(CblasColMajor, CblasNoTrans, CblasNoTrans, static_cast<int>(a.rows()),
              static_cast<int>(b.cols()), static_cast<int>(a.cols()), &one, a.data(),
              static_cast<int>(a.rows()), b.data(), static_cast<int>(b.rows()), &zero, c.data(),
              static_cast<int>(c.rows()));
  return c;
}

struct TruncatedSvd {
  Eigen::MatrixXcd u;      // m x k, left singular vectors of the kept block
  Eigen::VectorXd sigma;   // k, non-increasing
  Eigen::MatrixXcd v;      // n x k, right singular vectors (columns)
  double kept_weight = 0;  // sum sigma_i^2 over kept i
  double discarded_weight = 0;  // sum sigma_i^2 over discarded i
};

namespace detail {

inline bool full_svd(const Eigen::MatrixXcd& m, Eigen::MatrixXcd& u, Eigen::VectorXd& s,
                     Eigen::MatrixXcd& vt) {
  const int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
  const int r = std::min(rows, cols);
  Eigen::MatrixXcd work = m;
  u.resize(rows, r);
  s.resize(r);
  vt.resize(r, cols);
  int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', rows, cols, lp(work), rows, s.data(), lp(u),
                            rows, lp(vt), r);
  return info == 0;
}

}  // namespace detail

// Thin SVD with rank cap and absolute singular-value floor. Keeps at least one
// triplet. Values below discard_tol are dropped before the cap applies.
inline TruncatedSvd svd_truncate(const Eigen::MatrixXcd& m, int max_rank, double discard_tol) {
  if (max_rank < 1) throw std::invalid_argument("svd_truncate: max_rank < 1");
  Eigen::MatrixXcd u, vt;
  Eigen::VectorXd s;
  if (!detail::full_svd(m, u, s, vt)) {
    // zgesdd can fail to converge on rare inputs; Jacobi is slow but robust.
    Eigen::JacobiSVD<Eigen::MatrixXcd> j(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    u = j.matrixU();
    s = j.singularValues();
    vt = j.matrixV().adjoint();
  }
  const int r = static_cast<int>(s.size());
  int k = 0;
  while (k < r && s(k) >= discard_tol) ++k;
  k = std::max(1, std::min(k, max_rank));
  TruncatedSvd out;
  out.u = u.leftCols(k);
  out.sigma = s.head(k);
  out.v = vt.topRows(k).adjoint();
  out.kept_weight = s.head(k).squaredNorm();
  out.discarded_weight = s.tail(r - k).squaredNorm();
  return out;
}

// Singular values only (Schmidt spectra); no vectors are formed.
inline Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  const int rows = static_cast<int>(m.rows()), cols = static_cast<int>(m.cols());
  const int r = std::min(rows, cols);
  Eigen::MatrixXcd work = m;
  Eigen::VectorXd s(r);
  int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', rows, cols, detail::lp(work), rows, s.data(),
                            nullptr, rows, nullptr, r);
  if (info != 0) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> j(m);
    s = j.singularValues();
  }
  return s;
}

struct HermitianEig {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // columns
};

inline HermitianEig eigh(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("eigh: non-square input");
  HermitianEig out;
  out.vectors = a;
  out.values.resize(n);
  int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, detail::lp(out.vectors), n,
                            out.values.data());
  if (info != 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigh: eigensolve failed");
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
  }
  return out;
}

inline Eigen::VectorXd eigh_values(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXcd work = a;
  Eigen::VectorXd w(n);
  int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'N', 'L', n, detail::lp(work), n, w.data());
  if (info != 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigh_values: eigensolve failed");
    w = es.eigenvalues();
  }
  return w;
}

}  // namespace puritydyn
