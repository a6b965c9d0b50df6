#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "puritydyn/bounds.hpp"
#include "puritydyn/closed_forms.hpp"
#include "puritydyn/exact.hpp"
#include "puritydyn/lattice.hpp"
#include "puritydyn/mps.hpp"

namespace puritydyn {

// Self-contained property suites over the analytic inequalities and the two
// evolution engines. Each property reports its worst observed deviation so a
// failure is diagnosable from the one-line summary.

struct PropertyResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<PropertyResult> properties;

  bool all_passed() const {
    for (const auto& p : properties)
      if (!p.passed) return false;
    return true;
  }
};

namespace detail {

inline std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), pattern, a, b);
  return buf;
}

inline SchmidtSpectrum random_spectrum(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len);
  std::exponential_distribution<double> exp1(1.0);
  const int n = len(rng);
  std::vector<double> v(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (double& x : v) {
    x = exp1(rng);
    sum += x;
  }
  for (double& x : v) x /= sum;
  return SchmidtSpectrum(std::move(v));
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Constrained hill climb: maximize sum xi^3 at fixed sum and sum of squares by
// exact moves along feasible arcs of coordinate triples. Stays on the
// constraint set by construction, so the result never overshoots spuriously.
inline double max_cube_trace_numeric(std::vector<double> xi, std::mt19937_64& rng) {
  const int n = static_cast<int>(xi.size());
  if (n < 3) {
    double s = 0;
    for (double x : xi) s += x * x * x;
    return s;
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  const double inv_sqrt6 = 1.0 / std::sqrt(6.0);
  for (int iter = 0; iter < 400; ++iter) {
    int i = pick(rng), j = pick(rng), k = pick(rng);
    if (i == j || j == k || i == k) continue;
    const double a = xi[static_cast<std::size_t>(i)], b = xi[static_cast<std::size_t>(j)],
                 c = xi[static_cast<std::size_t>(k)];
    const double s1 = a + b + c, s2 = a * a + b * b + c * c;
    const double rho2 = s2 - s1 * s1 / 3.0;
    if (rho2 < 1e-24) continue;
    const double rho = std::sqrt(rho2), m = s1 / 3.0;
    double best = a * a * a + b * b * b + c * c * c;
    double ba = a, bb = b, bc = c;
    for (int g = 0; g < 256; ++g) {
      const double th = 2.0 * std::numbers::pi * g / 256.0;
      const double cu = std::cos(th), sv = std::sin(th);
      const double na = m + rho * (cu * inv_sqrt2 + sv * inv_sqrt6);
      const double nb = m + rho * (-cu * inv_sqrt2 + sv * inv_sqrt6);
      const double nc = m + rho * (-2.0 * sv * inv_sqrt6);
      if (na < 0.0 || nb < 0.0 || nc < 0.0) continue;
      const double val = na * na * na + nb * nb * nb + nc * nc * nc;
      if (val > best) {
        best = val;
        ba = na;
        bb = nb;
        bc = nc;
      }
    }
    xi[static_cast<std::size_t>(i)] = ba;
    xi[static_cast<std::size_t>(j)] = bb;
    xi[static_cast<std::size_t>(k)] = bc;
  }
  double s = 0;
  for (double x : xi) s += x * x * x;
  return s;
}

}  // namespace detail

// --- spectra suite ----------------------------------------------------------

inline SuiteReport run_spectra_suite(std::uint64_t seed) {
  SuiteReport report{"spectra", {}};
  std::mt19937_64 rng(seed);

  double worst_eig = 0.0, worst_rank = 0.0, worst_vec = 0.0;
  double worst_hardy = 0.0, worst_eq = 0.0;
  double worst_rb = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const SchmidtSpectrum xi = detail::random_spectrum(rng, 64);
    const ThetaFactorization th = theta_factorization(xi);
    const Eigen::MatrixXcd dense = theta_dense(xi);
    const Eigen::VectorXd w = eigh_values(dense);
    const Eigen::Index n = w.size();
    worst_eig = std::max(worst_eig, std::abs(w(n - 1) - th.eigenvalues.first));
    worst_eig = std::max(worst_eig, std::abs(w(0) - th.eigenvalues.second));
    if (n > 2) {
      // all but the extreme two eigenvalues must vanish
      for (Eigen::Index i = 1; i + 1 < n; ++i) worst_rank = std::max(worst_rank, std::abs(w(i)));
    }
    if (trial % 100 == 0 && th.eigenvalues.first > 1e-8) {
      const Eigen::VectorXcd rp = dense * th.q_plus - th.eigenvalues.first * th.q_plus;
      const Eigen::VectorXcd rm = dense * th.q_minus - th.eigenvalues.second * th.q_minus;
      worst_vec = std::max({worst_vec, rp.norm(), rm.norm()});
    }

    const auto [lhs, rhs] = cube_trace_hardy_bound(xi);
    worst_hardy = std::max(worst_hardy, lhs - rhs);
    if (rhs - lhs < 1e-12) worst_eq = std::max(worst_eq, std::abs(xi.purity() - 1.0));

    const std::int64_t l = static_cast<std::int64_t>(std::max<std::size_t>(xi.size(), 2));
    worst_rb = std::max(worst_rb, xi.cube_trace() - cube_trace_rank_bound(xi.purity(), l));
  }
  report.properties.push_back({"theta-eigenvalue-formula", worst_eig < 1e-10,
                               detail::fmt("max |analytic - dense| = %.3e", worst_eig)});
  report.properties.push_back({"theta-rank-two", worst_rank < 1e-10,
                               detail::fmt("max interior eigenvalue = %.3e", worst_rank)});
  report.properties.push_back({"theta-eigenvectors", worst_vec < 1e-8,
                               detail::fmt("max residual norm = %.3e", worst_vec)});
  report.properties.push_back({"hardy-inequality", worst_hardy < 1e-14,
                               detail::fmt("max (lhs - rhs) = %.3e", worst_hardy)});
  report.properties.push_back({"hardy-equality-only-pure", worst_eq < 1e-12,
                               detail::fmt("max |purity - 1| at equality = %.3e", worst_eq)});
  report.properties.push_back({"cube-trace-rank-bound", worst_rb < 1e-12,
                               detail::fmt("max (cube trace - bound) = %.3e", worst_rb)});

  // Tightness: the bound equals the best value a constrained maximizer finds,
  // and the analytic two-level extremal spectrum attains it exactly.
  double worst_over = 0.0, worst_attain = 0.0, worst_gap = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<int> len(3, 8);
    const int lint = len(rng);
    const auto l = static_cast<std::int64_t>(lint);
    // random feasible start with its own purity
    std::vector<double> xi;
    {
      SchmidtSpectrum s = detail::random_spectrum(rng, lint);
      xi = s.values();
      xi.resize(static_cast<std::size_t>(lint), 0.0);
    }
    double p = 0.0;
    for (double x : xi) p += x * x;
    const double bound = cube_trace_rank_bound(p, l);
    const double numeric = detail::max_cube_trace_numeric(xi, rng);
    worst_over = std::max(worst_over, numeric - bound);
    worst_gap = std::max(worst_gap, bound - numeric);

    const double ld = static_cast<double>(l);
    const double s = std::sqrt(std::max((ld - 1.0) * (ld * p - 1.0), 0.0));
    std::vector<double> extremal(static_cast<std::size_t>(l), (1.0 - s / (ld - 1.0)) / ld);
    extremal[0] = (1.0 + s) / ld;
    double cube = 0.0, norm = 0.0;
    for (double x : extremal) {
      cube += x * x * x;
      norm += x;
    }
    worst_attain = std::max(worst_attain, std::abs(cube - bound) + std::abs(norm - 1.0));
  }
  report.properties.push_back({"rank-bound-is-maximum", worst_over < 1e-9,
                               detail::fmt("max numeric excess = %.3e (largest climb gap %.3e)",
                                           worst_over, worst_gap)});
  report.properties.push_back({"rank-bound-attained", worst_attain < 1e-12,
                               detail::fmt("max extremal-spectrum defect = %.3e", worst_attain)});
  return report;
}

// --- bounds suite -----------------------------------------------------------

inline SuiteReport run_bounds_suite(std::uint64_t seed) {
  SuiteReport report{"bounds", {}};
  std::mt19937_64 rng(seed);

  struct Case {
    const char* name;
    double mu, chi;
  };
  const Case cases[] = {{"xx", 2.0, std::numbers::sqrt2}, {"xxz", 2.0, 2.5 / std::numbers::sqrt2}};

  double worst_dom = 0.0, worst_cont = 0.0;
  for (const auto& c : cases) {
    BoundConstants k{c.mu, c.chi, std::int64_t(1) << 24, crossover_time(c.mu, c.chi)};
    for (int i = 0; i <= 6000; ++i) {
      const double t = i * 1e-3;
      const double comb = combined_lower_bound(t, k);
      const double lo = std::max(short_time_lower_bound(t, k.mu), long_time_lower_bound(t, k.chi));
      worst_dom = std::max(worst_dom, lo - comb);
    }
    worst_cont = std::max(worst_cont, std::abs(combined_lower_bound(k.t1 - 1e-10, k) -
                                               combined_lower_bound(k.t1 + 1e-10, k)));
  }
  report.properties.push_back({"combined-dominates-both", worst_dom < 1e-12,
                               detail::fmt("max (individual - combined) = %.3e", worst_dom)});
  report.properties.push_back({"combined-continuous-at-t1", worst_cont < 1e-8,
                               detail::fmt("jump across t1 = %.3e", worst_cont)});

  double worst_env = 0.0, worst_pinch = 0.0, worst_order = 0.0;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double mu = 0.2 + 4.0 * unif(rng);
    for (int i = 0; i <= 200; ++i) {
      const double t = i * 0.02;
      const auto env1 = general_purity_envelope(t, mu, 1.0);
      worst_env = std::max(worst_env, std::abs(env1.lower - short_time_lower_bound(t, mu)));
      worst_env = std::max(worst_env, std::abs(env1.upper - 1.0));
      const double p0 = 0.05 + 0.95 * unif(rng);
      const auto env = general_purity_envelope(t, mu, p0);
      worst_order = std::max(worst_order, env.lower - env.upper);
      if (i == 0) worst_pinch = std::max({worst_pinch, std::abs(env.lower - p0), std::abs(env.upper - p0)});
    }
  }
  report.properties.push_back({"envelope-pure-start-matches-short-bound", worst_env < 1e-12,
                               detail::fmt("max deviation = %.3e", worst_env)});
  report.properties.push_back({"envelope-pinches-at-zero", worst_pinch < 1e-12,
                               detail::fmt("max |envelope(0) - purity0| = %.3e", worst_pinch)});
  report.properties.push_back({"envelope-ordered", worst_order < 1e-12,
                               detail::fmt("max (lower - upper) = %.3e", worst_order)});

  double worst_floor = 0.0, worst_ghz = 0.0, worst_rankfloor = 0.0;
  for (int trial = 0; trial < 2000; ++trial) {
    const SchmidtSpectrum xi = detail::random_spectrum(rng, 32);
    worst_floor = std::max(worst_floor, entropy_floor(xi.purity()) - xi.entropy());
  }
  for (int nr = 1; nr <= 6; ++nr) {
    for (int i = 0; i <= 400; ++i) {
      const double t = (std::numbers::pi / (2.0 * nr)) * i / 400.0;
      worst_ghz = std::max(worst_ghz, std::abs(ghz_ising_purity(nr, t) -
                                               rank_refined_lower_bound(t, 2.0 * nr, 2)));
    }
  }
  for (int i = 0; i <= 500; ++i) {
    const double t = i * 0.01;
    for (std::int64_t l : {2, 3, 7, 100})
      worst_rankfloor = std::max(
          worst_rankfloor, 1.0 / static_cast<double>(l) - rank_refined_lower_bound(t, 2.0, l));
  }
  report.properties.push_back({"entropy-floor", worst_floor < 1e-12,
                               detail::fmt("max (floor - entropy) = %.3e", worst_floor)});
  report.properties.push_back({"rank-refined-equals-ghz-closed-form", worst_ghz < 1e-14,
                               detail::fmt("max deviation = %.3e", worst_ghz)});
  report.properties.push_back({"rank-refined-above-floor", worst_rankfloor < 1e-12,
                               detail::fmt("max (1/l - bound) = %.3e", worst_rankfloor)});

  // chi is invariant under moving scalars between a bond's two factors, and mu
  // agrees with an independently assembled dense boundary operator.
  double worst_chi = 0.0;
  const auto xxz = build_xxz_chain(8, 0.5);
  const auto cutint = extract_cut_interaction(xxz, Cut::at_position(4));
  const double chi0 = compute_chi(cutint);
  for (int trial = 0; trial < 100; ++trial) {
    CutBondInteraction moved = cutint;
    for (auto& b : moved.bonds) {
      const double f = std::exp(2.0 * unif(rng) - 1.0);
      b.a_factor.coefficient *= f;
      b.b_factor.coefficient /= f;
    }
    worst_chi = std::max(worst_chi, std::abs(compute_chi(moved) - chi0));
  }
  report.properties.push_back({"chi-rescaling-invariance", worst_chi < 1e-12,
                               detail::fmt("max |chi drift| = %.3e", worst_chi)});

  double worst_mu = 0.0;
  {
    const auto ladder = build_coupled_ising_chains(3, 0.0);
    const auto lcut = extract_cut_interaction(ladder, Cut::split_chains());
    // independent oracle: dense kron over the full 6-site boundary
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(64, 64);
    std::vector<int> sites = {0, 1, 2, 3, 4, 5};
    for (const auto& term : ladder.terms) h += term_matrix_on_sites(term, sites);
    const Eigen::VectorXd w = eigh_values(h);
    worst_mu = std::abs(compute_mu(lcut) - (w(63) - w(0)));
    worst_mu = std::max(worst_mu, std::abs(compute_mu(lcut) - 6.0));
    const auto xxcut = extract_cut_interaction(build_xx_chain(8), Cut::at_position(4));
    worst_mu = std::max(worst_mu, std::abs(compute_mu(xxcut) - 2.0));
    worst_mu = std::max(worst_mu, std::abs(compute_chi(xxcut) - std::numbers::sqrt2));
    worst_mu = std::max(worst_mu, std::abs(compute_mu(cutint) - 2.0));
    worst_mu = std::max(worst_mu, std::abs(compute_chi(cutint) - 2.5 / std::numbers::sqrt2));
  }
  report.properties.push_back({"spectral-constants", worst_mu < 1e-12,
                               detail::fmt("max constant deviation = %.3e", worst_mu)});
  return report;
}

// --- rate suite -------------------------------------------------------------

inline SuiteReport run_rate_suite(std::uint64_t seed) {
  SuiteReport report{"rate", {}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> tdist(0.05, 2.0);

  struct System {
    SpinLatticeModel model;
    Cut cut;
    DenseState initial;
  };
  std::vector<System> systems;
  systems.push_back({build_xx_chain(9), Cut::at_position(4), dense_neel(9)});
  systems.push_back({build_xxz_chain(8, 0.5), Cut::at_position(4), dense_neel(8)});
  systems.push_back(
      {build_coupled_ising_chains(5, 0.7), Cut::split_chains(), dense_product_updown(5)});

  double worst_rel = 0.0, worst_bound = 0.0, worst_prod = 0.0;
  const double delta = 1e-5;
  for (const auto& sys : systems) {
    const auto bond = extract_cut_interaction(sys.model, sys.cut);
    const double mu = compute_mu(bond);
    DenseEvolver evolver(sys.model);

    worst_prod = std::max(worst_prod, std::abs(purity_rate_formula(sys.initial, bond)));

    std::vector<double> times;
    for (int i = 0; i < 18; ++i) times.push_back(tdist(rng));
    std::sort(times.begin(), times.end());
    Eigen::VectorXcd v = sys.initial.amplitudes;
    double t_now = 0.0;
    for (double t : times) {
      evolver.step(v, t - t_now);
      t_now = t;
      const DenseState at(v, sys.model.n_sites);
      const double rate = purity_rate_formula(at, bond);

      Eigen::VectorXcd vp = v, vm = v;
      evolver.step(vp, delta);
      evolver.step(vm, -delta);
      const auto [a_sites, b_sites] = detail::cut_site_lists(sys.cut, sys.model.n_sites);
      auto purity_of = [&](const Eigen::VectorXcd& amp) {
        const Eigen::VectorXd s = singular_values(
            detail::bipartition_matrix(DenseState(amp, sys.model.n_sites), a_sites, b_sites));
        double p = 0.0;
        for (Eigen::Index i = 0; i < s.size(); ++i) p += s(i) * s(i) * s(i) * s(i);
        return p;
      };
      const double fd = (purity_of(vp) - purity_of(vm)) / (2.0 * delta);
      worst_rel = std::max(worst_rel, std::abs(rate - fd) / std::max(std::abs(fd), 1e-2));

      const auto [mag, bound_val] = rate_bound_check(at, bond, mu);
      worst_bound = std::max(worst_bound, mag - bound_val);
    }
  }
  report.properties.push_back({"rate-matches-finite-difference", worst_rel < 1e-4,
                               detail::fmt("max relative deviation = %.3e", worst_rel)});
  report.properties.push_back({"rate-within-spectral-bound", worst_bound < 1e-8,
                               detail::fmt("max (|rate| - bound) = %.3e", worst_bound)});
  report.properties.push_back({"product-state-rate-vanishes", worst_prod < 1e-10,
                               detail::fmt("max |rate| = %.3e", worst_prod)});

  // Gauge robustness: remixing Schmidt vectors inside degenerate weight
  // blocks (and arbitrary per-vector phases) must not move the rate.
  double worst_gauge = 0.0;
  {
    const auto model = build_xx_chain(8);
    const auto bond = extract_cut_interaction(model, Cut::at_position(4));
    DenseEvolver evolver(model);
    // Bell-pair chain: fully degenerate spectrum across the middle cut
    Eigen::VectorXcd v = dense_neel(8).amplitudes;
    evolver.step(v, 0.35);
    for (int trial = 0; trial < 20; ++trial) {
      const DenseState at(v, 8);
      SchmidtBasis basis = schmidt_basis(at, bond.a_sites, bond.b_sites);
      const double rate0 = rate_from_schmidt(basis, bond);

      // group degenerate weights, remix each group with a random unitary
      std::size_t i = 0;
      while (i < basis.xi.size()) {
        std::size_t j = i + 1;
        while (j < basis.xi.size() && std::abs(basis.xi[j] - basis.xi[i]) < 1e-12) ++j;
        const Eigen::Index blk = static_cast<Eigen::Index>(j - i);
        Eigen::MatrixXcd g(blk, blk);
        std::normal_distribution<double> gauss;
        for (Eigen::Index r = 0; r < blk; ++r)
          for (Eigen::Index c = 0; c < blk; ++c) g(r, c) = cxd(gauss(rng), gauss(rng));
        const Eigen::MatrixXcd q = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
        basis.phi_a.middleCols(static_cast<Eigen::Index>(i), blk) =
            (basis.phi_a.middleCols(static_cast<Eigen::Index>(i), blk) * q).eval();
        basis.phi_b.middleCols(static_cast<Eigen::Index>(i), blk) =
            (basis.phi_b.middleCols(static_cast<Eigen::Index>(i), blk) * q.conjugate()).eval();
        i = j;
      }
      worst_gauge = std::max(worst_gauge, std::abs(rate_from_schmidt(basis, bond) - rate0));
      evolver.step(v, 0.1);
    }
  }
  report.properties.push_back({"rate-gauge-invariance", worst_gauge < 1e-8,
                               detail::fmt("max |rate drift| = %.3e", worst_gauge)});
  return report;
}

// --- oracle suite -----------------------------------------------------------

// site_counts: chain lengths for the engine cross-check; an empty list means
// no runs are configured and the suite passes vacuously.
inline SuiteReport run_oracle_suite(std::uint64_t seed,
                                    const std::vector<int>& site_counts = {14}) {
  SuiteReport report{"oracle", {}};
  (void)seed;  // the suite is deterministic; the seed is part of the interface

  for (int n : site_counts) {
    const auto model = build_xx_chain(n);
    const Cut cut = Cut::at_position(n / 2);
    const TrotterScheme scheme{4, 0.01};
    // full rank at this size: the run is exact, so the residual check probes
    // the gate algebra alone (truncation adds a sqrt(discard)-sized defect)
    const TruncationPolicy policy{1 << ((n + 1) / 2), 0.0};

    MatrixProductState mps = mps_neel(n);
    EvolutionRecord rec = evolve_and_sample(mps, model, 1.0, 0.1, scheme, policy, cut);

    DenseEvolver evolver(model);
    Eigen::VectorXcd v = dense_neel(n).amplitudes;
    double worst_p = 0.0, worst_s = 0.0, t_now = 0.0;
    for (const auto& sample : rec.samples) {
      evolver.step(v, sample.t - t_now);
      t_now = sample.t;
      const SchmidtSpectrum spec = reduced_schmidt_spectrum(DenseState(v, n), cut);
      worst_p = std::max(worst_p, std::abs(spec.purity() - sample.purity));
      worst_s = std::max(worst_s, std::abs(spec.entropy() - sample.entropy));
    }
    report.properties.push_back(
        {"engine-agreement-purity-" + std::to_string(n) + "-sites", worst_p < 1e-6,
         detail::fmt("max |tensor - dense| = %.3e", worst_p)});
    report.properties.push_back(
        {"engine-agreement-entropy-" + std::to_string(n) + "-sites", worst_s < 1e-6,
         detail::fmt("max |tensor - dense| = %.3e", worst_s)});
    report.properties.push_back({"canonical-residual-" + std::to_string(n) + "-sites",
                                 canonical_residual(mps) < 1e-8,
                                 detail::fmt("residual = %.3e", canonical_residual(mps))});
  }

  if (!site_counts.empty()) {
    // energy conservation along both dense propagation paths
    double worst_e = 0.0;
    for (int n : {10, 12}) {
      const auto model = build_xxz_chain(n, 0.5);
      DenseEvolver evolver(model);
      Eigen::VectorXcd v = dense_neel(n).amplitudes;
      const double e0 = energy_expectation(model, DenseState(v, n));
      for (int i = 0; i < 4; ++i) {
        evolver.step(v, 0.5);
        worst_e = std::max(worst_e,
                           std::abs(energy_expectation(model, DenseState(v, n)) - e0));
      }
    }
    report.properties.push_back({"dense-energy-conservation", worst_e < 1e-8,
                                 detail::fmt("max |<H> drift| = %.3e", worst_e)});

    // Trotter error order: state defect vs dt on a log-log fit
    for (int order : {2, 4}) {
      const auto model = build_xx_chain(6);
      const DenseState exact = evolve_dense(dense_neel(6), model, 0.4);
      std::vector<double> dts = {0.04, 0.02, 0.01}, defects;
      for (double dt : dts) {
        MatrixProductState mps = mps_neel(6);
        TebdEngine engine(model, TrotterScheme{order, dt}, TruncationPolicy{8, 0.0});
        engine.apply_steps(mps, static_cast<int>(std::lround(0.4 / dt)));
        defects.push_back((mps_to_dense(mps) - exact.amplitudes).norm());
      }
      const double slope = detail::loglog_slope(dts, defects);
      report.properties.push_back(
          {"trotter-order-" + std::to_string(order), std::abs(slope - order) < 0.3,
           detail::fmt("fitted error order = %.3f", slope)});
    }
  }
  return report;
}

inline std::vector<SuiteReport> run_all_suites(std::uint64_t seed) {
  return {run_spectra_suite(seed), run_rate_suite(seed), run_oracle_suite(seed),
          run_bounds_suite(seed)};
}

}  // namespace puritydyn
