#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "borel_claims/oracle.hpp"
#include "borel_claims/panjer.hpp"

using namespace borel_claims;

namespace {

double rel_err(double got, double want) {
  return want == 0.0 ? std::fabs(got) : std::fabs(got - want) / std::fabs(want);
}

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

}  // namespace

TEST_SUITE("panjer") {

TEST_CASE("severity validation") {
  const SeverityPmf unit = SeverityPmf::unit();
  CHECK(unit.max_claim() == 1);
  CHECK(unit.at(1) == 1.0);
  CHECK(unit.mean() == 1.0);
  CHECK(unit.variance() == 0.0);
  CHECK_THROWS_AS(SeverityPmf::from_pairs({{1, 0.5}, {2, 0.4}}), std::domain_error);
  CHECK_THROWS_AS(SeverityPmf::from_pairs({{0, 0.5}, {1, 0.5}}), std::domain_error);
  CHECK_THROWS_AS(SeverityPmf::from_pairs({{1, 0.5}, {1, 0.5}}), std::domain_error);
  CHECK_THROWS_AS(SeverityPmf::from_pairs({{1, 1.5}, {2, -0.5}}), std::domain_error);
  const SeverityPmf two = SeverityPmf::from_pairs({{1, 0.25}, {3, 0.75}});
  CHECK(two.mean() == doctest::Approx(2.5));
  CHECK(two.at(2) == 0.0);
}

TEST_CASE("severity file parsing") {
  const auto good = write_temp("sev_good.txt",
                               "# two-point claim size law\n"
                               "1 0.5\n"
                               "2 0.5  # half each\n"
                               "\n");
  const SeverityPmf sev = SeverityPmf::from_file(good);
  CHECK(sev.max_claim() == 2);
  CHECK(sev.at(1) == 0.5);

  const auto bad = write_temp("sev_bad.txt", "1 0.5\nnot-a-number 0.5\n");
  try {
    SeverityPmf::from_file(bad);
    FAIL("expected a parse error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);  // line number reported
  }
  const auto unnorm = write_temp("sev_unnorm.txt", "1 0.5\n2 0.4\n");
  CHECK_THROWS_AS(SeverityPmf::from_file(unnorm), std::runtime_error);
  CHECK_THROWS_AS(SeverityPmf::from_file("/nonexistent/severity.txt"), std::runtime_error);
}

TEST_CASE("recursion grid access outside the triangle is an error") {
  RecursionGrid grid(10);
  grid.set(3, 7, -1.0);
  CHECK(grid.at(3, 7) == -1.0);
  CHECK_THROWS_AS(grid.at(4, 7), std::out_of_range);
  CHECK_THROWS_AS(grid.at(-1, 0), std::out_of_range);
  CHECK_THROWS_AS(grid.at(0, 11), std::out_of_range);
}

TEST_CASE("two-point severity example") {
  const SeverityPmf sev = SeverityPmf::from_pairs({{1, 0.5}, {2, 0.5}});
  const LogPmf q = aggregate_pmf(PanjerFamily::gpd(), sev, 1.0, 0.5, 12);
  // P{T=1} = P{Z=1} f(1) = e^{-1.5} * 0.5, with (a,b) = (1/3, 2/3).
  CHECK(rel_err(q.prob(1), 0.5 * std::exp(-1.5)) < 1e-13);
  CHECK(q.prob(1) == doctest::Approx(0.1115651).epsilon(1e-6));
  const auto [a, b] = panjer_coefficients(PanjerFamily::gpd(), 1.0, 0.5);
  CHECK(rel_err(a, 1.0 / 3.0) < 1e-15);
  CHECK(rel_err(b, 2.0 / 3.0) < 1e-15);
  // Full vector against the mixing-convolution oracle.
  oracle::DensePmf count;
  count.p.resize(13);
  for (long m = 0; m <= 12; ++m) {
    count.p[static_cast<std::size_t>(m)] = std::exp(gpd_pmf(GpdParams{1.0, 0.5}, m).log_value());
  }
  oracle::DensePmf sev_d;
  sev_d.p = {0.0, 0.5, 0.5};
  const auto want = oracle::compound_by_mixing(count, sev_d, 12);
  for (long n = 0; n <= 12; ++n) CHECK(rel_err(q.prob(n), want.at(n)) < 1e-10);
}

TEST_CASE("coefficient consistency of the shifted family") {
  for (double theta : {0.5, 1.0, 2.0}) {
    for (double lambda : {0.2, 0.5, 0.8}) {
      const auto [ag, bg] = panjer_coefficients(PanjerFamily::gpd(), theta, lambda);
      const auto [a0, b0] = panjer_coefficients(PanjerFamily::shifted(0), theta, lambda);
      CHECK(rel_err(a0, ag) < 1e-13);
      CHECK(rel_err(b0, bg) < 1e-13);
      const auto [a1, b1] = panjer_coefficients(PanjerFamily::shifted(1), theta, lambda);
      CHECK(rel_err(a1, lambda) < 1e-13);
      CHECK(rel_err(b1, theta) < 1e-13);
    }
  }
}

TEST_CASE("triangular fill is oblivious to the requested support") {
  const SeverityPmf sev = SeverityPmf::from_pairs({{1, 0.5}, {2, 0.25}, {3, 0.25}});
  const LogPmf small = aggregate_pmf(PanjerFamily::bartlett(), sev, 1.0, 0.5, 20);
  const LogPmf large = aggregate_pmf(PanjerFamily::bartlett(), sev, 1.0, 0.5, 30);
  for (long n = 0; n <= 20; ++n) CHECK(small.log_at(n) == large.log_at(n));
  const LogPmf dsmall = aggregate_pmf_delaporte(sev, 1.0, 0.5, 2, 14);
  const LogPmf dlarge = aggregate_pmf_delaporte(sev, 1.0, 0.5, 2, 24);
  for (long n = 0; n <= 14; ++n) CHECK(dsmall.log_at(n) == dlarge.log_at(n));
}

TEST_CASE("aggregate normalization at the default support") {
  const SeverityPmf sev = SeverityPmf::from_pairs({{1, 0.5}, {2, 0.5}});
  const std::vector<FamilySpec> counts = {
      {FamilySpec::Kind::gpd, 1.0, 0.5, 1, 0},
      {FamilySpec::Kind::bartlett, 1.0, 0.5, 1, 0},
      {FamilySpec::Kind::delaporte, 1.0, 0.5, 2, 0},
      {FamilySpec::Kind::shifted, 1.0, 0.5, 1, 2},
  };
  for (const auto& count : counts) {
    const long n = default_aggregate_support(count, sev);
    LogPmf q;
    if (count.kind == FamilySpec::Kind::delaporte) {
      q = aggregate_pmf_delaporte(sev, count.theta, count.lambda, count.m, n);
    } else {
      PanjerFamily fam = PanjerFamily::gpd();
      if (count.kind == FamilySpec::Kind::bartlett) fam = PanjerFamily::bartlett();
      if (count.kind == FamilySpec::Kind::shifted) fam = PanjerFamily::shifted(count.k);
      q = aggregate_pmf(fam, sev, count.theta, count.lambda, n);
    }
    CHECK(std::fabs(q.total_mass() + q.tail_mass_bound - 1.0) < 1e-8);
  }
}

TEST_CASE("stop loss") {
  const SeverityPmf unit = SeverityPmf::unit();
  const LogPmf q = aggregate_pmf(PanjerFamily::gpd(), unit, 1.0, 0.5, 400);
  const auto d0 = stop_loss(q, 0);
  CHECK(rel_err(d0.value, 2.0) < 1e-9);  // Wald mean of the gpd count
  const auto deep = stop_loss(q, 500);
  CHECK(deep.value == 0.0);
  CHECK(deep.tail_bound >= 0.0);
  CHECK_THROWS_AS(stop_loss(q, -1), std::domain_error);
  // Requested accuracy enforcement.
  const LogPmf coarse = aggregate_pmf(PanjerFamily::gpd(), unit, 1.0, 0.5, 8);
  CHECK_THROWS_AS(stop_loss(coarse, 0, 1e-12), std::runtime_error);
  {
    const auto [mean, var] =
        aggregate_mean_var({FamilySpec::Kind::gpd, 1.0, 0.5, 1, 0}, unit);
    CHECK(mean == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(var == doctest::Approx(8.0).epsilon(1e-15));
  }
}

TEST_CASE("lambda = 0 degenerates to the classic Poisson recursion") {
  const LogPmf q = aggregate_pmf(PanjerFamily::gpd(), SeverityPmf::unit(), 1.5, 0.0, 20);
  const auto pois = oracle::poisson_dense(1.5, 20);
  for (long n = 0; n <= 20; ++n) CHECK(rel_err(q.prob(n), pois.at(n)) < 1e-13);
  CHECK(std::fabs(q.total_mass() + q.tail_mass_bound - 1.0) < 1e-10);
}

TEST_CASE("grid memory budget respects the environment cap") {
  setenv("BOREL_CLAIMS_MAX_GRID", "1024", 1);  // bytes: room for 128 doubles
  CHECK_THROWS_AS(aggregate_pmf(PanjerFamily::gpd(), SeverityPmf::unit(), 1.0, 0.5, 100),
                  std::runtime_error);
  setenv("BOREL_CLAIMS_MAX_GRID", "junk", 1);
  CHECK_THROWS_AS(aggregate_pmf(PanjerFamily::gpd(), SeverityPmf::unit(), 1.0, 0.5, 4),
                  std::domain_error);
  unsetenv("BOREL_CLAIMS_MAX_GRID");
  CHECK_NOTHROW(aggregate_pmf(PanjerFamily::gpd(), SeverityPmf::unit(), 1.0, 0.5, 100));
}

TEST_CASE("delaporte literal coefficient variant") {
  // With unit severity the literal reading collapses to the exact two-term
  // recursion, so it must agree; with a two-point severity it must not.
  const double theta = 1.0, lambda = 0.5;
  const LogPmf def = aggregate_pmf_delaporte(SeverityPmf::unit(), theta, lambda, 2, 10, false);
  const LogPmf lit = aggregate_pmf_delaporte(SeverityPmf::unit(), theta, lambda, 2, 10, true);
  for (long n = 0; n <= 10; ++n) {
    CHECK(std::fabs(std::expm1(lit.log_at(n) - def.log_at(n))) < 1e-12);
  }
  const SeverityPmf two = SeverityPmf::from_pairs({{1, 0.5}, {2, 0.5}});
  const LogPmf def2 = aggregate_pmf_delaporte(two, theta, lambda, 2, 10, false);
  const LogPmf lit2 = aggregate_pmf_delaporte(two, theta, lambda, 2, 10, true);
  double max_dev = 0.0;
  for (long n = 0; n <= 10; ++n) {
    max_dev = std::max(max_dev, std::fabs(std::expm1(lit2.log_at(n) - def2.log_at(n))));
  }
  CHECK(max_dev > 1e-3);
}

}  // TEST_SUITE
