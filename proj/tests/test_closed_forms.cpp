#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "puritydyn/bounds.hpp"
#include "puritydyn/closed_forms.hpp"
#include "puritydyn/exact.hpp"
#include "puritydyn/lattice.hpp"

using namespace puritydyn;
using Catch::Approx;

TEST_CASE("product ladder purity closed form") {
  CHECK(product_ising_purity(3, 0.0) == 1.0);
  for (int n : {1, 2, 5})
    CHECK(product_ising_purity(n, std::numbers::pi / 4.0) ==
          Approx(std::pow(0.5, n)).margin(1e-14));
  CHECK(product_ising_purity(1, 0.3) == Approx(0.840590).margin(1e-6));
  CHECK(product_ising_purity(4, 0.3) == Approx(std::pow(0.840590, 4)).margin(1e-5));
  CHECK_THROWS_AS(product_ising_purity(0, 0.1), invalid_size_error);
}

TEST_CASE("ghz ladder purity closed form") {
  CHECK(ghz_ising_purity(4, 0.0) == 1.0);
  CHECK(ghz_ising_purity(3, std::numbers::pi / 12.0) == Approx(0.5).margin(1e-14));  // Nt = pi/4
  CHECK(ghz_ising_purity(2, std::numbers::pi / 8.0) == Approx(0.5).margin(1e-14));
  CHECK_THROWS_AS(ghz_ising_purity(0, 0.1), invalid_size_error);
}

TEST_CASE("short time quadratic coefficients") {
  CHECK(short_time_quadratic_coefficient(QuadraticKind::product, 4) == 8.0);
  CHECK(short_time_quadratic_coefficient(QuadraticKind::ghz, 4) == 32.0);
  CHECK(short_time_quadratic_coefficient(QuadraticKind::product, 1) == 2.0);
  CHECK(short_time_quadratic_coefficient(QuadraticKind::ghz, 1) == 2.0);

  // coefficient matches the curvature of the closed forms at small t
  const double t = 1e-4;
  CHECK((1.0 - product_ising_purity(3, t)) / (t * t) == Approx(6.0).epsilon(1e-4));
  CHECK((1.0 - ghz_ising_purity(3, t)) / (t * t) == Approx(18.0).epsilon(1e-4));
}

TEST_CASE("closed forms match dense ladder evolution") {
  std::mt19937_64 rng(7321);
  std::uniform_real_distribution<double> tdist(0.0, 2.5);
  for (int n = 2; n <= 6; ++n) {
    const auto model = build_coupled_ising_chains(n, 0.0);
    for (int trial = 0; trial < 10; ++trial) {
      const double t = tdist(rng);
      const DenseState evolved = evolve_dense(dense_product_updown(n), model, t);
      const double p = reduced_schmidt_spectrum(evolved, Cut::split_chains()).purity();
      CHECK(p == Approx(product_ising_purity(n, t)).margin(1e-10));

      const DenseState gevolved = evolve_dense(dense_ghz_x_ladder(n), model, t);
      const double gp = reduced_schmidt_spectrum(gevolved, Cut::split_chains()).purity();
      CHECK(gp == Approx(ghz_ising_purity(n, t)).margin(1e-10));
    }
  }
}

TEST_CASE("intra-chain couplings leave chain-chain purity unchanged") {
  std::mt19937_64 rng(912);
  std::uniform_real_distribution<double> tdist(0.0, 2.0);
  for (int n : {2, 4}) {
    const auto coupled = build_coupled_ising_chains(n, 0.8);
    for (int trial = 0; trial < 8; ++trial) {
      const double t = tdist(rng);
      const double p =
          reduced_schmidt_spectrum(evolve_dense(dense_product_updown(n), coupled, t),
                                   Cut::split_chains())
              .purity();
      CHECK(p == Approx(product_ising_purity(n, t)).margin(1e-10));
      const double gp =
          reduced_schmidt_spectrum(evolve_dense(dense_ghz_x_ladder(n), coupled, t),
                                   Cut::split_chains())
              .purity();
      CHECK(gp == Approx(ghz_ising_purity(n, t)).margin(1e-10));
    }
  }
}

TEST_CASE("ghz form equals the rank-refined bound on the clamp window") {
  for (int n = 1; n <= 6; ++n) {
    for (int i = 0; i <= 100; ++i) {
      const double t = (std::numbers::pi / (2.0 * n)) * i / 100.0;
      CHECK(std::abs(ghz_ising_purity(n, t) - rank_refined_lower_bound(t, 2.0 * n, 2)) < 1e-14);
    }
  }
}
