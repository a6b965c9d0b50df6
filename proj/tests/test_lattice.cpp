#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "puritydyn/lattice.hpp"
#include "puritydyn/linalg.hpp"
#include "puritydyn/pauli.hpp"

using namespace puritydyn;

namespace {

// canonical sort key so term lists compare independent of generation order
bool term_less(const PauliTerm& lhs, const PauliTerm& rhs) {
  auto key = [](const PauliTerm& t) {
    std::vector<int> k;
    for (const auto& f : t.factors) {
      k.push_back(f.site);
      k.push_back(static_cast<int>(f.axis));
    }
    return k;
  };
  return key(lhs) < key(rhs);
}

bool same_terms(std::vector<PauliTerm> a, std::vector<PauliTerm> b) {
  std::sort(a.begin(), a.end(), term_less);
  std::sort(b.begin(), b.end(), term_less);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].coefficient != b[i].coefficient) return false;
    if (a[i].factors.size() != b[i].factors.size()) return false;
    for (std::size_t j = 0; j < a[i].factors.size(); ++j)
      if (a[i].factors[j].site != b[i].factors[j].site ||
          a[i].factors[j].axis != b[i].factors[j].axis)
        return false;
  }
  return true;
}

std::vector<PauliTerm> reassemble(const SpinLatticeModel& model, const Cut& cut) {
  const auto bond = extract_cut_interaction(model, cut);
  auto [a_terms, b_terms] = intra_terms(model, cut);
  std::vector<PauliTerm> all = std::move(a_terms);
  all.insert(all.end(), b_terms.begin(), b_terms.end());
  for (const auto& b : bond.bonds) {
    PauliTerm t{b.coefficient, {}};
    for (const auto& f : b.a_factor.factors) t.factors.push_back(f);
    for (const auto& f : b.b_factor.factors) t.factors.push_back(f);
    std::sort(t.factors.begin(), t.factors.end(),
              [](const PauliFactor& x, const PauliFactor& y) { return x.site < y.site; });
    all.push_back(std::move(t));
  }
  return all;
}

}  // namespace

TEST_CASE("xx chain construction") {
  const auto two = build_xx_chain(2);
  REQUIRE(two.terms.size() == 2);
  for (const auto& t : two.terms) {
    CHECK(t.coefficient == -0.5);
    REQUIRE(t.factors.size() == 2);
    CHECK(t.factors[0].site == 0);
    CHECK(t.factors[1].site == 1);
    CHECK(t.factors[0].axis == t.factors[1].axis);
  }
  CHECK(two.terms[0].factors[0].axis == PauliAxis::x);
  CHECK(two.terms[1].factors[0].axis == PauliAxis::y);

  CHECK(build_xx_chain(1).terms.empty());
  CHECK(build_xx_chain(4).terms.size() == 6);
  CHECK(build_xx_chain(4).geometry == Geometry::chain);
  CHECK_THROWS_AS(build_xx_chain(0), invalid_size_error);
}

TEST_CASE("xxz chain construction") {
  const auto m = build_xxz_chain(2, 0.5);
  REQUIRE(m.terms.size() == 3);
  CHECK(m.terms[0].coefficient == -0.5);
  CHECK(m.terms[1].coefficient == -0.5);
  CHECK(m.terms[2].coefficient == -0.25);
  CHECK(m.terms[2].factors[0].axis == PauliAxis::z);

  CHECK(same_terms(build_xxz_chain(5, 0.0).terms, build_xx_chain(5).terms));

  const auto iso = build_xxz_chain(3, 1.0);
  REQUIRE(iso.terms.size() == 6);
  for (const auto& t : iso.terms) CHECK(t.coefficient == -0.5);
}

TEST_CASE("coupled ising chain construction") {
  const auto bare = build_coupled_ising_chains(3, 0.0);
  REQUIRE(bare.terms.size() == 3);
  CHECK(bare.geometry == Geometry::two_chain_ladder);
  CHECK(bare.n_sites == 6);
  for (int j = 0; j < 3; ++j) {
    const auto& t = bare.terms[static_cast<std::size_t>(j)];
    CHECK(t.coefficient == 1.0);
    REQUIRE(t.factors.size() == 2);
    CHECK(t.factors[0].site == 2 * j);
    CHECK(t.factors[1].site == 2 * j + 1);
    CHECK(t.factors[0].axis == PauliAxis::x);
    CHECK(t.factors[1].axis == PauliAxis::x);
  }

  const auto single = build_coupled_ising_chains(1, 0.7);
  REQUIRE(single.terms.size() == 1);
  CHECK(single.terms[0].factors[0].site == 0);
  CHECK(single.terms[0].factors[1].site == 1);

  CHECK(build_coupled_ising_chains(3, 1.0).terms.size() == 7);
  CHECK_THROWS_AS(build_coupled_ising_chains(0, 0.0), invalid_size_error);
}

TEST_CASE("cut interaction extraction") {
  const auto xx4 = build_xx_chain(4);
  const auto cut = extract_cut_interaction(xx4, Cut::at_position(2));
  REQUIRE(cut.bonds.size() == 2);
  for (const auto& b : cut.bonds) {
    CHECK(b.coefficient == -0.5);
    REQUIRE(b.a_factor.factors.size() == 1);
    REQUIRE(b.b_factor.factors.size() == 1);
    CHECK(b.a_factor.factors[0].site == 1);
    CHECK(b.b_factor.factors[0].site == 2);
    CHECK(b.a_factor.coefficient == 1.0);
    CHECK(b.b_factor.coefficient == 1.0);
  }

  const auto ladder = build_coupled_ising_chains(4, 0.3);
  const auto split = extract_cut_interaction(ladder, Cut::split_chains());
  REQUIRE(split.bonds.size() == 4);
  for (const auto& b : split.bonds) {
    CHECK(b.a_factor.factors[0].axis == PauliAxis::x);
    CHECK(b.b_factor.factors[0].axis == PauliAxis::x);
    CHECK(b.b_factor.factors[0].site == b.a_factor.factors[0].site + 1);
  }

  CHECK_THROWS_AS(extract_cut_interaction(xx4, Cut::at_position(0)), invalid_cut_error);
  CHECK_THROWS_AS(extract_cut_interaction(xx4, Cut::at_position(4)), invalid_cut_error);
  CHECK_THROWS_AS(extract_cut_interaction(xx4, Cut::split_chains()), invalid_cut_error);
}

TEST_CASE("boundary counting") {
  const auto xx = extract_cut_interaction(build_xx_chain(8), Cut::at_position(4));
  CHECK(boundary_site_count(xx).site_count == 2);
  CHECK(boundary_site_count(xx).bond_count == 2);

  const auto xxz = extract_cut_interaction(build_xxz_chain(8, 0.5), Cut::at_position(4));
  CHECK(boundary_site_count(xxz).site_count == 2);
  CHECK(boundary_site_count(xxz).bond_count == 3);

  const auto ladder =
      extract_cut_interaction(build_coupled_ising_chains(5, 0.0), Cut::split_chains());
  CHECK(boundary_site_count(ladder).site_count == 10);
  CHECK(boundary_site_count(ladder).bond_count == 5);

  CHECK_THROWS_AS(boundary_site_count(CutBondInteraction{}), zero_boundary_error);
}

TEST_CASE("cut reassembles the model term list") {
  for (const auto& [model, cut] :
       {std::pair{build_xx_chain(6), Cut::at_position(2)},
        std::pair{build_xxz_chain(7, 0.5), Cut::at_position(3)},
        std::pair{build_coupled_ising_chains(4, 0.9), Cut::split_chains()},
        std::pair{build_coupled_ising_chains(3, 0.0), Cut::at_position(3)}}) {
    CHECK(same_terms(reassemble(model, cut), model.terms));
  }
}

TEST_CASE("models are hermitian and at most two-local") {
  for (const auto& model : {build_xx_chain(5), build_xxz_chain(5, 0.37),
                            build_coupled_ising_chains(3, 0.21)}) {
    std::vector<int> sites(static_cast<std::size_t>(model.n_sites));
    for (int j = 0; j < model.n_sites; ++j) sites[static_cast<std::size_t>(j)] = j;
    Eigen::MatrixXcd h =
        Eigen::MatrixXcd::Zero(std::int64_t(1) << model.n_sites, std::int64_t(1) << model.n_sites);
    for (const auto& term : model.terms) {
      CHECK(term.factors.size() <= 2);
      h += term_matrix_on_sites(term, sites);
    }
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("pauli term validation") {
  CHECK_THROWS(PauliTerm{1.0, {{2, PauliAxis::x}, {1, PauliAxis::x}}}.validate());
  CHECK_THROWS(PauliTerm{1.0, {{1, PauliAxis::x}, {1, PauliAxis::y}}}.validate());
  CHECK_THROWS(PauliTerm{0.0, {{0, PauliAxis::x}}}.validate());
  CHECK_NOTHROW(PauliTerm{-0.5, {{0, PauliAxis::x}, {3, PauliAxis::z}}}.validate());
}
