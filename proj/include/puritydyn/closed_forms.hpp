#pragma once

#include <cmath>

#include "puritydyn/common.hpp"

namespace puritydyn {

// Analytic purity curves for the two-chain Ising ladder. Written as
// 1 - sin^2(2t)/2 rather than cos^4 t + sin^4 t: the short-time probes fit
// 1 - purity down to ~1e-6, where the cos^4+sin^4 form loses digits.

inline double product_ising_purity(int n_rungs, double t) {
  if (n_rungs < 1) throw invalid_size_error("product_ising_purity: n_rungs must be >= 1");
  const double s = std::sin(2.0 * t);
  return std::pow(1.0 - 0.5 * s * s, n_rungs);
}

inline double ghz_ising_purity(int n_rungs, double t) {
  if (n_rungs < 1) throw invalid_size_error("ghz_ising_purity: n_rungs must be >= 1");
  const double s = std::sin(2.0 * static_cast<double>(n_rungs) * t);
  return 1.0 - 0.5 * s * s;
}

enum class QuadraticKind { product, ghz };

// Leading coefficient c in 1 - purity = c t^2 + O(t^4).
inline double short_time_quadratic_coefficient(QuadraticKind kind, int n_rungs) {
  if (n_rungs < 1)
    throw invalid_size_error("short_time_quadratic_coefficient: n_rungs must be >= 1");
  const double n = static_cast<double>(n_rungs);
  return kind == QuadraticKind::product ? 2.0 * n : 2.0 * n * n;
}

}  // namespace puritydyn
