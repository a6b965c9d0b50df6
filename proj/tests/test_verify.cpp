#include <catch2/catch_amalgamated.hpp>

#include "puritydyn/cli.hpp"
#include "puritydyn/verify.hpp"

using namespace puritydyn;

// The heavy oracle suite (engine cross-check at 14 sites) runs in the
// acceptance binary; here the fast suites run end to end plus the vacuous
// oracle contract.

TEST_CASE("spectra suite passes") {
  const SuiteReport report = run_spectra_suite(default_seed);
  CAPTURE(verify_report_text({report}));
  CHECK(report.all_passed());
  CHECK(report.properties.size() >= 6);
}

TEST_CASE("bounds suite passes") {
  const SuiteReport report = run_bounds_suite(default_seed);
  CAPTURE(verify_report_text({report}));
  CHECK(report.all_passed());
}

TEST_CASE("rate suite passes") {
  const SuiteReport report = run_rate_suite(default_seed);
  CAPTURE(verify_report_text({report}));
  CHECK(report.all_passed());
}

TEST_CASE("oracle suite with no runs configured passes vacuously") {
  const SuiteReport report = run_oracle_suite(default_seed, {});
  CHECK(report.all_passed());
  CHECK(report.properties.empty());
}

TEST_CASE("suite results are seed deterministic") {
  const SuiteReport a = run_bounds_suite(42), b = run_bounds_suite(42);
  REQUIRE(a.properties.size() == b.properties.size());
  for (std::size_t i = 0; i < a.properties.size(); ++i) {
    CHECK(a.properties[i].name == b.properties[i].name);
    CHECK(a.properties[i].passed == b.properties[i].passed);
    CHECK(a.properties[i].detail == b.properties[i].detail);
  }
}
