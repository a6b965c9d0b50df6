#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace puritydyn {

using cxd = std::complex<double>;

// Domain-contract violations. All derive from std::invalid_argument so callers
// that only care about "bad input vs. numerical failure" can catch the base.
struct invalid_size_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct invalid_cut_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct zero_boundary_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct capacity_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct unsupported_model_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct infeasibility_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Numerical failures (non-convergence after fallbacks) are std::runtime_error.

}  // namespace puritydyn
