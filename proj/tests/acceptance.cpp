// Acceptance gate: every shipped claim checked end to end at its stated
// tolerance and runtime budget. Run with no arguments for all criteria or
// pass criterion numbers (1..8) to run a subset. Exit 0 iff all selected pass.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "puritydyn/cli.hpp"

using namespace puritydyn;

namespace {

struct CriterionResult {
  bool passed = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

// 1: cut constants for the two chain models
CriterionResult criterion_constants() {
  const auto xx = extract_cut_interaction(build_xx_chain(16), Cut::at_position(8));
  const auto xxz = extract_cut_interaction(build_xxz_chain(16, 0.5), Cut::at_position(8));
  const double worst = std::max(
      {std::abs(compute_mu(xx) - 2.0), std::abs(compute_chi(xx) - std::numbers::sqrt2),
       std::abs(compute_mu(xxz) - 2.0), std::abs(compute_chi(xxz) - 2.5 / std::numbers::sqrt2)});
  return {worst < 1e-12, fmt("constants off by at most %.3e", worst)};
}

// 2: dense ghz-x ladder equals both the closed form and the rank-refined
// bound at random times inside the bound's clamp window t < pi/(2N)
CriterionResult criterion_ghz_tightness() {
  std::mt19937_64 rng(0xACCE01);
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n) {
    const auto model = build_coupled_ising_chains(n, 0.0);
    std::uniform_real_distribution<double> tdist(0.0, std::numbers::pi / (2.0 * n));
    std::vector<double> times(50);
    for (double& t : times) t = tdist(rng);
    std::sort(times.begin(), times.end());
    DenseEvolver evolver(model);
    Eigen::VectorXcd v = dense_ghz_x_ladder(n).amplitudes;
    double t_now = 0.0;
    for (double t : times) {
      evolver.step(v, t - t_now);
      t_now = t;
      const double p =
          reduced_schmidt_spectrum(DenseState(v, 2 * n), Cut::split_chains()).purity();
      const double closed = std::pow(std::cos(n * t), 4) + std::pow(std::sin(n * t), 4);
      worst = std::max(worst, std::abs(p - closed));
      worst = std::max(worst, std::abs(p - rank_refined_lower_bound(t, 2.0 * n, 2)));
    }
  }
  return {worst < 1e-10, fmt("max deviation %.3e over N=2..6, 50 times each", worst)};
}

// 3: product-start ladder matches (cos^4 t + sin^4 t)^N with and without
// intra-chain couplings
CriterionResult criterion_product_ladder() {
  std::mt19937_64 rng(0xACCE02);
  std::uniform_real_distribution<double> tdist(0.0, 2.5);
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n) {
    for (double intra : {0.0, 0.7}) {
      const auto model = build_coupled_ising_chains(n, intra);
      std::vector<double> times(25);
      for (double& t : times) t = tdist(rng);
      std::sort(times.begin(), times.end());
      DenseEvolver evolver(model);
      Eigen::VectorXcd v = dense_product_updown(n).amplitudes;
      double t_now = 0.0;
      for (double t : times) {
        evolver.step(v, t - t_now);
        t_now = t;
        const double p =
            reduced_schmidt_spectrum(DenseState(v, 2 * n), Cut::split_chains()).purity();
        worst = std::max(worst, std::abs(p - product_ising_purity(n, t)));
      }
    }
  }
  return {worst < 1e-10, fmt("max deviation %.3e over N=2..6, both couplings", worst)};
}

// 4: scaling slopes of 1 - purity vs N at t = 0.001
CriterionResult criterion_scaling_slopes() {
  ScalingConfig cfg;
  cfg.n_min = 2;
  cfg.n_max = 8;
  cfg.t_probe = 0.001;

  cfg.state_family = "product";
  const double sp = run_scaling(cfg).slope;
  cfg.state_family = "ghz-x";
  const double sg = run_scaling(cfg).slope;
  cfg.state_family = "w";
  const double sw = run_scaling(cfg).slope;

  const bool ok = std::abs(sp - 1.0) < 0.02 && std::abs(sg - 2.0) < 0.02 && sw > sp && sw < sg;
  return {ok, fmt("slopes: product %.4f (want 1.00+-0.02), ghz-x %.4f (want 2.00+-0.02), "
                  "w %.4f (want strictly between)",
                  sp, sg, sw)};
}

// 5: desk-scale 48-site runs dominate the combined bound and stay mutually
// close on [0,1]
CriterionResult criterion_desk_scale_runs() {
  RunConfig base;
  base.n_sites = 48;
  base.cut = "24";
  base.engine = "mps";
  base.dt = 0.01;
  base.t_max = 4.0;
  base.sample_interval = 0.04;
  base.max_rank = 128;
  base.trotter_order = 2;

  auto trace = [&](const std::string& model) {
    RunConfig cfg = base;
    cfg.model = model;
    const SpinLatticeModel m = model_from_config(cfg);
    const Cut cut = cut_from_config(cfg);
    MatrixProductState state = mps_state_from_config(cfg);
    return evolve_and_sample(state, m, cfg.t_max, cfg.sample_interval,
                             TrotterScheme{cfg.trotter_order, cfg.dt},
                             TruncationPolicy{cfg.max_rank, 1e-12}, cut);
  };
  const EvolutionRecord xx = trace("xx");
  const EvolutionRecord xxz = trace("xxz");

  const BoundConstants k_xx = bound_constants_for(
      extract_cut_interaction(build_xx_chain(48), Cut::at_position(24)));
  const BoundConstants k_xxz = bound_constants_for(
      extract_cut_interaction(build_xxz_chain(48, 0.5), Cut::at_position(24)));

  double worst_violation = -1.0, worst_gap = 0.0;
  auto check_dominance = [&](const EvolutionRecord& rec, const BoundConstants& k) {
    for (const auto& s : rec.samples)
      worst_violation = std::max(worst_violation, combined_lower_bound(s.t, k) - s.purity);
  };
  check_dominance(xx, k_xx);
  check_dominance(xxz, k_xxz);

  for (std::size_t i = 0; i < xx.samples.size(); ++i) {
    if (xx.samples[i].t > 1.0 + 1e-9) break;
    worst_gap = std::max(worst_gap, std::abs(xx.samples[i].purity - xxz.samples[i].purity));
  }

  const bool start_pure = std::abs(xx.samples.front().purity - 1.0) < 1e-12 &&
                          std::abs(xxz.samples.front().purity - 1.0) < 1e-12;
  const bool ok = start_pure && worst_violation <= 1e-9 && worst_gap < 0.05;
  return {ok, fmt("bound margin %.3e (need <= 1e-9 violation), |xx - xxz| on [0,1] %.4f "
                  "(need < 0.05), start purity %s",
                  worst_violation, worst_gap, start_pure ? "exact" : "off")};
}

// 6: short-time curvature of the TEBD Neel run: 1 - purity ~ t^k, k = 2
CriterionResult criterion_short_time_curvature() {
  const auto model = build_xx_chain(48);
  MatrixProductState state = mps_neel(48);
  const EvolutionRecord rec =
      evolve_and_sample(state, model, 0.01, 0.001, TrotterScheme{2, 0.001},
                        TruncationPolicy{128, 1e-12}, Cut::at_position(24));
  std::vector<double> ts, deficits;
  for (const auto& s : rec.samples) {
    if (s.t < 0.001 - 1e-12) continue;
    ts.push_back(s.t);
    deficits.push_back(1.0 - s.purity);
  }
  const double k = detail::loglog_slope(ts, deficits);
  return {std::abs(k - 2.0) < 0.05, fmt("fitted exponent %.4f (want 2.00+-0.05)", k)};
}

// 7: rate identity against central finite differences across three models
CriterionResult criterion_rate_identity() {
  const SuiteReport report = run_rate_suite(default_seed);
  std::string detail;
  bool ok = true;
  for (const auto& p : report.properties) {
    if (p.name == "rate-matches-finite-difference" || p.name == "rate-within-spectral-bound") {
      ok = ok && p.passed;
      if (!detail.empty()) detail += "; ";
      detail += p.name + ": " + p.detail;
    }
  }
  return {ok, detail};
}

// 8: every property suite under one fixed seed
CriterionResult criterion_property_suites() {
  const auto reports = run_all_suites(default_seed);
  bool ok = true;
  int n_props = 0;
  std::string first_fail;
  for (const auto& rep : reports) {
    n_props += static_cast<int>(rep.properties.size());
    for (const auto& p : rep.properties)
      if (!p.passed && first_fail.empty()) first_fail = rep.suite + "." + p.name;
    ok = ok && rep.all_passed();
  }
  return {ok, ok ? fmt("%d properties passed across 4 suites", n_props)
                 : "first failure: " + first_fail};
}

struct Criterion {
  int number;
  const char* label;
  double budget_seconds;
  CriterionResult (*run)();
};

const Criterion criteria[] = {
    {1, "cut constants", 1.0, criterion_constants},
    {2, "ghz ladder tightness", 30.0, criterion_ghz_tightness},
    {3, "product ladder closed form", 30.0, criterion_product_ladder},
    {4, "scaling slopes", 120.0, criterion_scaling_slopes},
    {5, "desk-scale bound domination", 600.0, criterion_desk_scale_runs},
    {6, "short-time curvature", 120.0, criterion_short_time_curvature},
    {7, "rate identity", 300.0, criterion_rate_identity},
    {8, "property suites", 60.0, criterion_property_suites},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  bool all_ok = true;
  for (const auto& c : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.number) == selected.end())
      continue;
    const auto t0 = Clock::now();
    CriterionResult result;
    try {
      result = c.run();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    const double sec = seconds_since(t0);
    const bool in_budget = sec <= c.budget_seconds;
    const bool ok = result.passed && in_budget;
    std::printf("[%s] criterion %d (%s): %s [%.1fs of %.0fs budget]\n", ok ? "PASS" : "FAIL",
                c.number, c.label, result.detail.c_str(), sec, c.budget_seconds);
    if (!in_budget && result.passed)
      std::printf("       note: checks passed but exceeded the runtime budget\n");
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
