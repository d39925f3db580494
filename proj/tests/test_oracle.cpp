#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "borel_claims/borel.hpp"
#include "borel_claims/claim_number.hpp"
#include "borel_claims/compounds.hpp"
#include "borel_claims/oracle.hpp"

using namespace borel_claims;
namespace orc = borel_claims::oracle;

namespace {
double rel_err(double got, double want) {
  return want == 0.0 ? std::fabs(got) : std::fabs(got - want) / std::fabs(want);
}
}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("convolution identity element and Borel split") {
  const auto borel = orc::borel_dense(0.5, 10);
  const auto same = orc::convolve(orc::DensePmf::point_mass(0, 10), borel, 10);
  for (long n = 0; n <= 10; ++n) CHECK(same.at(n) == borel.at(n));
  // Borel(0.5)*Borel(0.5) at n=2: the only split is 1+1.
  const auto twice = orc::convolve(borel, borel, 10);
  CHECK(rel_err(twice.at(2), std::exp(-1.0)) < 1e-14);
}

TEST_CASE("Geom * Poisson reproduces the Bartlett count law") {
  const auto conv = orc::convolve(orc::geometric_dense(0.5, 10), orc::poisson_dense(1.0, 10), 10);
  for (long n = 0; n <= 10; ++n) {
    CHECK(rel_err(conv.at(n), std::exp(bartlett_pmf(BartlettParams{1.0, 0.5}, n).log_value())) <
          1e-13);
  }
}

TEST_CASE("compound_by_mixing") {
  const auto borel = orc::borel_dense(0.5, 20);
  const auto unit_count = orc::DensePmf::point_mass(1, 20);
  const auto same = orc::compound_by_mixing(unit_count, borel, 20);
  for (long n = 0; n <= 20; ++n) CHECK(same.at(n) == doctest::Approx(borel.at(n)).epsilon(1e-15));
  // Poisson(1) count with Borel(0.5) summands is the GPD from first principles.
  const auto mix = orc::compound_by_mixing(orc::poisson_dense(1.0, 20), borel, 20);
  for (long n = 0; n <= 20; ++n) {
    CHECK(rel_err(mix.at(n), std::exp(gpd_pmf(GpdParams{1.0, 0.5}, n).log_value())) < 1e-10);
  }
  // Summands on the positive integers only.
  CHECK_THROWS_AS(orc::compound_by_mixing(unit_count, orc::poisson_dense(1.0, 20), 20),
                  std::domain_error);
}

TEST_CASE("deconvolution round trip is the identity") {
  // An arbitrary nonnegative truncated law.
  orc::DensePmf target;
  target.p = {0.3, 0.05, 0.2, 0.1, 0.05, 0.12, 0.08, 0.04, 0.03, 0.02, 0.01};
  const double lambda = 0.4;
  const long m = target.max_n();
  const auto c = orc::borel_deconvolve(target, lambda, m);
  orc::DensePmf count;
  count.p = c;  // may carry negative entries; the mixing sum is linear anyway
  const auto back = orc::compound_by_mixing(count, orc::borel_dense(lambda, m), m);
  for (long n = 0; n <= m; ++n) CHECK(rel_err(back.at(n), target.at(n)) < 1e-9);
}

TEST_CASE("multinomial identity") {
  {
    const auto [lhs, rhs] = orc::multinomial_identity_check(1, 1);
    CHECK(lhs == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rhs == 1.0);
  }
  {
    // Compositions (1,3),(2,2),(3,1): terms 1.125 + 0.75 + 1.125 = 3.
    const auto [lhs, rhs] = orc::multinomial_identity_check(4, 2);
    CHECK(lhs == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(rhs == 3.0);
  }
  for (int n : {2, 5, 9, 14}) {
    const auto [lhs, rhs] = orc::multinomial_identity_check(n, n);
    CHECK(lhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rhs == 1.0);
  }
  CHECK_THROWS_AS(orc::multinomial_identity_check(15, 3), std::domain_error);
  CHECK_THROWS_AS(orc::multinomial_identity_check(4, 5), std::domain_error);
}

TEST_CASE("Abel sums") {
  {
    // Single-term degenerate: k = n+1.
    const auto [lhs, rhs] = orc::abel_sum_check_a_variant(5, 6);
    CHECK(rel_err(lhs, rhs) < 1e-13);
  }
  {
    const auto [lhs, rhs] = orc::abel_sum_check_a_variant(6, 3);
    CHECK(lhs == doctest::Approx(514.5).epsilon(1e-12));
    CHECK(rhs == doctest::Approx(514.5).epsilon(1e-12));
  }
  {
    const auto [lhs, rhs] = orc::abel_sum_check_hurwitz(2, 3, 1.0, 0.5);
    CHECK(rel_err(lhs, rhs) < 1e-12);
  }
  CHECK_THROWS_AS(orc::abel_sum_check_hurwitz(5, 3, 1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(orc::abel_sum_check_a_variant(13, 3), std::domain_error);
}

TEST_CASE("branching fixed-point DP reproduces the Borel closed form") {
  const double lambda = 0.5;
  const auto dp = orc::enumerate_gw_progeny(lambda, 40);
  CHECK(rel_err(dp.at(1), std::exp(-lambda)) < 1e-15);
  CHECK(rel_err(dp.at(2), lambda * std::exp(-2.0 * lambda)) < 1e-14);
  for (long n = 1; n <= 40; ++n) {
    CHECK(rel_err(dp.at(n), std::exp(borel_pmf(BorelParams{lambda}, n).log_value())) < 1e-11);
  }
  CHECK_THROWS_AS(orc::enumerate_gw_progeny(0.5, 61), std::domain_error);
}

TEST_CASE("DP convolution powers reproduce Borel-Tanner") {
  const double lambda = 0.4;
  const auto base = orc::enumerate_gw_progeny(lambda, 30);
  for (int m = 1; m <= 4; ++m) {
    const auto power = orc::convolve_power(base, m, 30);
    for (long n = m; n <= 30; ++n) {
      CHECK(rel_err(power.at(n),
                    std::exp(borel_tanner_pmf(BorelTannerParams{lambda, m}, n).log_value())) <
            1e-10);
    }
  }
}

}  // TEST_SUITE
